from catmouse.exceptions import *
from catmouse.workbench import Workbench
