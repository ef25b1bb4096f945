###
# (C) Copyright [2024] catmouse contributors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
##

"""Lower-bound machinery on the subdivided binary tree T_k.

Binary-expansion arithmetic (gamma, beta), vertex-boundary checks on B_k,
and a survival harness that runs cat schedules against the possible-position
recurrence on T_k and audits every inductive step of the mouse's escape.
The checks are empirical falsification attempts: a clean report is evidence,
not proof.
"""

import logging
import math
from fractions import Fraction

import numpy as np

from catmouse import exceptions
from catmouse.game_engine import Schedule
from catmouse.graph_core import make_tk
from catmouse.strategies import StrategyBuilder

BRUTEFORCE_MAX_N = 2 ** 12
BRUTEFORCE_MAX_TERMS = 6
BRUTEFORCE_MAX_EXPONENT = 14
EXHAUSTIVE_MAX_K = 3
ARITHMETIC_MAX_LIMIT = 2 ** 20
APPROXIMATE_MAX_VALUE = 2 ** 18
MAX_REPORTED = 20
BATCH = 4096

WEAK = 'weak'
STRONG = 'strong'

SURVIVES = 'Survives'
BELOW_TARGET = 'BelowTarget'
CAUGHT = 'Caught'

RANDOM = 'random'
GREEDY = 'greedy'
SWEEP = 'sweep'
TRUNCATED = 'truncated'
ADVERSARIES = (RANDOM, GREEDY, SWEEP, TRUNCATED)

logger = logging.getLogger(__name__)


def as_fraction(value):
    """Exact rational from an int, a Fraction, or a decimal string or float."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        value = repr(value)
    try:
        return Fraction(value)
    except (TypeError, ValueError):
        raise exceptions.CatMouseInputError('Not a rational number: {!r}'.format(value))


def _require_natural(n):
    if n < 0:
        raise exceptions.CatMouseInputError('Expected a non-negative integer, got {}'.format(n))


class BinaryExpansion(object):
    """Binary digits a_r..a_0 of n, most significant first.

    Attributes:
        n (int): The value.
        digits (tuple): 0/1 digits without leading zeros ((0,) for n = 0).
    """

    def __init__(self, n):
        _require_natural(n)
        self.n = n
        self.digits = tuple(int(d) for d in format(n, 'b'))

    def __str__(self):
        return ''.join(str(d) for d in self.digits)


def binary_expansion(n):
    return BinaryExpansion(n)


class SignedRepresentation(object):
    """n written as a sum of signed powers of two.

    Attributes:
        terms (tuple): (sign, exponent) pairs by decreasing exponent.
    """

    def __init__(self, terms):
        self.terms = tuple(sorted(terms, key=lambda term: -term[1]))
        for sign, exponent in self.terms:
            if sign not in (1, -1) or exponent < 0:
                raise exceptions.CatMouseInputError('Bad signed term ({}, {})'.format(sign, exponent))

    @property
    def value(self):
        return sum(sign * 2 ** exponent for sign, exponent in self.terms)

    @property
    def weight(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return '0'
        text = ' '.join('{} 2^{}'.format('+' if sign > 0 else '-', exponent) for sign, exponent in self.terms)
        return text[2:] if text.startswith('+') else text


def naf(n):
    """Non-adjacent form of n: the signed binary representation of least weight.

    Args:
        n: Non-negative integer.

    Returns:
        SignedRepresentation object
    """
    _require_natural(n)
    terms = []
    exponent = 0
    while n >= 1:
        if n & 1:
            digit = n % 4
            if digit > 2:
                digit -= 4
            terms.append((digit, exponent))
            n -= digit
        n >>= 1
        exponent += 1
    return SignedRepresentation(terms)


def gamma(n):
    """Number of positions where a one digit is followed by a zero digit."""
    digits = binary_expansion(n).digits
    return sum(1 for high, low in zip(digits, digits[1:]) if high == 1 and low == 0)


def beta(n):
    """Least number of signed powers of two summing to n."""
    return naf(n).weight


_layers = []


def _reachable(max_terms):
    """Boolean tables of the values reachable with exactly w signed terms, w = 0..max_terms."""
    span = BRUTEFORCE_MAX_TERMS * 2 ** BRUTEFORCE_MAX_EXPONENT
    if not _layers:
        origin = np.zeros(2 * span + 1, dtype=bool)
        origin[span] = True
        _layers.append(origin)
    while len(_layers) <= max_terms:
        previous = _layers[-1]
        layer = np.zeros_like(previous)
        for exponent in range(BRUTEFORCE_MAX_EXPONENT + 1):
            step = 1 << exponent
            layer[step:] |= previous[:-step]
            layer[:-step] |= previous[step:]
        _layers.append(layer)
    return _layers, span


def beta_bruteforce(n, max_terms=BRUTEFORCE_MAX_TERMS):
    """Exhaustive least weight over sign/exponent combinations with exponents <= 14.

    Args:
        n: 0 <= n <= 2^12.
        max_terms: Largest weight tried, at most 6.

    Returns:
        int: the least weight, or None when n needs more than max_terms terms.

    Raises:
        CatMouseCapacityError: if n or max_terms exceed the guards.
    """
    _require_natural(n)
    if n > BRUTEFORCE_MAX_N or max_terms > BRUTEFORCE_MAX_TERMS:
        raise exceptions.CatMouseCapacityError(
            {'message': 'Brute force is limited to n <= {} and {} terms'.format(BRUTEFORCE_MAX_N, BRUTEFORCE_MAX_TERMS),
             'n': n, 'max_terms': max_terms})
    if n == 0:
        return 0

    layers, span = _reachable(max_terms)
    for weight in range(1, max_terms + 1):
        if layers[weight][span + n]:
            return weight
    return None


def _popcount(values, chunk=2 ** 16):
    values = np.ascontiguousarray(values, dtype='>u8')
    out = np.empty(values.size, dtype=np.int64)
    for start in range(0, values.size, chunk):
        as_bytes = values[start:start + chunk].view(np.uint8).reshape(-1, 8)
        out[start:start + chunk] = np.unpackbits(as_bytes, axis=1).sum(axis=1)
    return out


def gamma_array(values):
    """Vectorised gamma over an integer array."""
    values = np.asarray(values, dtype=np.int64)
    return _popcount((values & ~(values << 1)) >> 1)


def beta_array(values):
    """Vectorised non-adjacent-form weight over an integer array."""
    values = np.asarray(values, dtype=np.int64)
    half = values >> 1
    return _popcount(half ^ (values + half))


class ImportantSet(object):
    """A set of important vertices of T_k.

    Attributes:
        host (SubdividedTree): T_k.
        members (frozenset): T_k ids of important vertices.
    """

    def __init__(self, host, members):
        self.host = host
        self.members = frozenset(members)
        for v in self.members:
            if not (0 <= v < host.tree.n and host.important[v]):
                raise exceptions.CatMouseInputError('Vertex {} is not an important vertex of T_{}'.format(v, host.k))

    def b_vertices(self):
        return {self.host.b_map[v] for v in self.members}


def important_boundary(x):
    """Important vertices outside X adjacent in B_k to a member of X.

    Args:
        x: ImportantSet

    Returns:
        set: T_k ids of the boundary.
    """
    inside = x.b_vertices()
    boundary = set()
    for b in inside:
        for w in x.host.base.neighbours(b):
            if w not in inside:
                boundary.add(x.host.t_of_b[w])
    return boundary


def _heap_boundary(xs, k):
    """Boundary sizes of the rows of a boolean matrix of subsets of B_k in heap order."""
    internal = 2 ** k - 1
    nb = np.zeros_like(xs)
    nb[:, 1:] |= xs[:, (np.arange(1, xs.shape[1]) - 1) // 2]
    nb[:, :internal] |= xs[:, 1::2] | xs[:, 2::2]
    return (nb & ~xs).sum(axis=1)


def _exhaustive_rows(k):
    m = 2 ** (k + 1) - 1
    codes = np.arange(2 ** m, dtype=np.int64)
    return (codes[:, None] >> np.arange(m)) & 1 == 1


def _sampled_rows(k, count, rng):
    """Random subsets of B_k: half Bernoulli with random density, half unions of full subtrees."""
    m = 2 ** (k + 1) - 1
    half = count // 2
    density = rng.random((half, 1))
    dense = rng.random((half, m)) < density

    rest = count - half
    roots = rng.integers(0, m, size=(rest, 4))
    used = rng.integers(1, 5, size=rest)
    subtrees = np.zeros((rest, m), dtype=bool)
    for j in range(4):
        rows = np.flatnonzero(used > j)
        subtrees[rows, roots[rows, j]] = True
    children = np.arange(1, m)
    parents = (children - 1) // 2
    for _ in range(k):
        subtrees[:, children] |= subtrees[:, parents]
    flip = rng.random(rest) < 0.5
    subtrees[flip] = ~subtrees[flip]
    return np.vstack([dense, subtrees])


def eps_threshold(eps):
    """Least k0 with log2(k) + 4 <= eps * k for every k >= k0."""
    eps = as_fraction(eps)
    if eps <= 0:
        raise exceptions.CatMouseInputError('eps must be positive, got {}'.format(eps))
    k = max(1, int(math.ceil(1 / (float(eps) * math.log(2)))))
    while math.log2(k) + 4 > float(eps) * k:
        k += 1
    return k


class BoundaryReport(object):
    """Result of a boundary-inequality check over subsets of B_k.

    Attributes:
        k (int): Height.
        bound (str): 'weak' or 'eps'.
        eps (Fraction): eps of the refined bound, None for the weak one.
        exhaustive (bool): True when every subset was checked.
        checked (int): Subsets examined.
        violations (list): Offending subsets (first few).
        violation_count (int): All offending subsets.
        min_slack (Fraction): Least boundary minus bound.
        intermediate_violations (int): Subsets breaking gamma(n) <= m + log2 m + 4.
        min_intermediate_slack (float): Least slack of that bound.
        threshold (int): k0 of the refined bound, None for the weak one.
    """

    def __init__(self, k, bound, eps, exhaustive):
        self.k = k
        self.bound = bound
        self.eps = eps
        self.exhaustive = exhaustive
        self.checked = 0
        self.violations = []
        self.violation_count = 0
        self.min_slack = None
        self.intermediate_violations = 0
        self.min_intermediate_slack = None
        self.threshold = eps_threshold(eps) if eps is not None else None

    @property
    def falsified(self):
        """True when a claimed inequality fails where it is claimed to hold."""
        if self.intermediate_violations:
            return True
        if self.bound == WEAK:
            return self.violation_count > 0
        return self.violation_count > 0 and self.k >= self.threshold

    def to_dict(self):
        return {'k': self.k, 'bound': self.bound, 'eps': str(self.eps) if self.eps is not None else None,
                'mode': 'exhaustive' if self.exhaustive else 'sampled', 'checked': self.checked,
                'violation_count': self.violation_count, 'violations': self.violations,
                'min_slack': str(self.min_slack) if self.min_slack is not None else None,
                'intermediate_violations': self.intermediate_violations,
                'min_intermediate_slack': self.min_intermediate_slack,
                'threshold': self.threshold, 'falsified': self.falsified}


def _boundary_batches(k, samples, seed):
    if samples is None:
        if k > EXHAUSTIVE_MAX_K:
            raise exceptions.CatMouseCapacityError(
                {'message': 'Exhaustive boundary checks are limited to k <= {}'.format(EXHAUSTIVE_MAX_K), 'k': k})
        rows = _exhaustive_rows(k)
        for start in range(0, rows.shape[0], BATCH):
            yield rows[start:start + BATCH]
        return

    rng = np.random.default_rng(seed)
    remaining = samples
    while remaining > 0:
        count = min(BATCH, remaining)
        yield _sampled_rows(k, count, rng)
        remaining -= count


def _check_boundary(k, bound, eps, samples, seed):
    if k < 1:
        raise exceptions.CatMouseInputError('k must be at least 1, got {}'.format(k))
    report = BoundaryReport(k, bound, eps, samples is None)
    gammas = gamma_array(np.arange(2 ** (k + 1)))

    for xs in _boundary_batches(k, samples, seed):
        sizes = xs.sum(axis=1)
        boundary = _heap_boundary(xs, k)
        g = gammas[sizes]
        if bound == WEAK:
            numerators = 6 * boundary - g + 2
            denominator = 6
        else:
            numerators = eps.denominator * (boundary - g) + eps.numerator * k
            denominator = eps.denominator
            logs = np.log2(np.maximum(boundary, 1))
            intermediate = boundary + logs + 4 - g
            report.intermediate_violations += int((intermediate < 0).sum())
            low = float(intermediate.min())
            if report.min_intermediate_slack is None or low < report.min_intermediate_slack:
                report.min_intermediate_slack = low

        slack = Fraction(int(numerators.min()), denominator)
        if report.min_slack is None or slack < report.min_slack:
            report.min_slack = slack

        bad = np.flatnonzero(numerators < 0)
        report.violation_count += len(bad)
        for row in bad[:MAX_REPORTED - len(report.violations)]:
            report.violations.append({'n': int(sizes[row]), 'boundary': int(boundary[row]), 'gamma': int(g[row]),
                                      'members': np.flatnonzero(xs[row]).tolist()})
        report.checked += xs.shape[0]

    logger.info('%s boundary check on B_%s: %s subsets, %s violations', bound, k, report.checked,
                report.violation_count)
    return report


def check_weak_boundary(k, samples=None, seed=0):
    """Checks |boundary(X)| >= (gamma(|X|) - 2) / 6 over subsets X of B_k.

    Args:
        k: Height of B_k.
        samples: None for every subset (k <= 3), otherwise a sample count.
        seed: Sampling seed.

    Returns:
        BoundaryReport object
    """
    return _check_boundary(k, WEAK, None, samples, seed)


def check_eps_boundary(k, eps, samples=None, seed=0):
    """Checks |boundary(X)| >= gamma(|X|) - eps k and gamma(|X|) <= m + log2 m + 4.

    The log term is taken as 0 when the boundary is empty.

    Returns:
        BoundaryReport object
    """
    eps = as_fraction(eps)
    if eps <= 0:
        raise exceptions.CatMouseInputError('eps must be positive, got {}'.format(eps))
    return _check_boundary(k, 'eps', eps, samples, seed)


def special_n(k):
    """The number written as floor(k/2) repeats of the digits 10."""
    if k < 1:
        raise exceptions.CatMouseInputError('k must be at least 1, got {}'.format(k))
    repeats = k // 2
    return int('10' * repeats, 2) if repeats else 0


def corollary_budget(k, variant=STRONG, eps=Fraction(1, 20)):
    """Cat budget under which the mouse is claimed to survive on T_k.

    Args:
        k: Height, k >= 1.
        variant: 'weak' for floor(k/40), 'strong' for floor((1/4 - eps) k).
        eps: Rational in (0, 1/4), strong variant only.

    Returns:
        int
    """
    if k < 1:
        raise exceptions.CatMouseInputError('k must be at least 1, got {}'.format(k))
    if variant == WEAK:
        return k // 40
    if variant != STRONG:
        raise exceptions.CatMouseInputError('Unknown budget variant {}'.format(variant))
    eps = as_fraction(eps)
    if not 0 < eps < Fraction(1, 4):
        raise exceptions.CatMouseInputError('eps must lie in (0, 1/4), got {}'.format(eps))
    return math.floor((Fraction(1, 4) - eps) * k)


class ArithmeticReport(object):

    def __init__(self, name, checked, violations, min_slack):
        self.name = name
        self.checked = checked
        self.violations = violations
        self.min_slack = min_slack

    @property
    def falsified(self):
        return bool(self.violations)

    def to_dict(self):
        return {'check': self.name, 'checked': self.checked, 'violations': self.violations,
                'min_slack': self.min_slack, 'falsified': self.falsified}


def check_arithmetic_lemma(limit):
    """Checks beta(n) >= gamma(n) for every 1 <= n <= limit.

    Raises:
        CatMouseCapacityError: if limit exceeds 2^20.
    """
    if limit > ARITHMETIC_MAX_LIMIT:
        raise exceptions.CatMouseCapacityError(
            {'message': 'Arithmetic check is limited to {}'.format(ARITHMETIC_MAX_LIMIT), 'limit': limit})
    values = np.arange(1, limit + 1, dtype=np.int64)
    slack = beta_array(values) - gamma_array(values)
    bad = values[slack < 0]
    report = ArithmeticReport('arithmetic', int(values.size), bad[:MAX_REPORTED].tolist(),
                              int(slack.min()) if values.size else None)
    logger.info('beta >= gamma checked up to %s: %s violations', limit, len(bad))
    return report


def check_beta_oracle(limit=BRUTEFORCE_MAX_N):
    """Compares beta with beta_bruteforce on 0..limit.

    n needing more than six terms agrees when the non-adjacent form is heavier than six.
    """
    mismatches = []
    for n in range(limit + 1):
        exact = beta_bruteforce(n)
        fast = beta(n)
        if (exact is None and fast <= BRUTEFORCE_MAX_TERMS) or (exact is not None and exact != fast):
            mismatches.append({'n': n, 'beta': fast, 'bruteforce': exact})
    return ArithmeticReport('oracle', limit + 1, mismatches[:MAX_REPORTED], None)


def check_approximate_lemma(samples, seed):
    """Checks |beta(m) - beta(n)| <= k whenever |m - n| <= 2^k, on sampled pairs.

    k is the least positive integer with |m - n| <= 2^k.
    """
    rng = np.random.default_rng(seed)
    n = rng.integers(1, APPROXIMATE_MAX_VALUE + 1, size=samples)
    spread = 2 ** rng.integers(0, 18, size=samples)
    offset = rng.integers(-spread, spread + 1)
    m = np.clip(n + offset, 1, APPROXIMATE_MAX_VALUE)
    gap = np.abs(m - n)
    k = np.maximum(1, np.ceil(np.log2(np.maximum(gap, 1))).astype(np.int64))
    slack = k - np.abs(beta_array(m) - beta_array(n))
    bad = np.flatnonzero(slack < 0)
    violations = [{'m': int(m[i]), 'n': int(n[i]), 'k': int(k[i])} for i in bad[:MAX_REPORTED]]
    logger.info('Approximation check on %s pairs: %s violations', samples, len(bad))
    return ArithmeticReport('approximate', int(samples), violations, int(slack.min()) if samples else None)


class TkDynamics(object):
    """Vectorised possible-position dynamics on a subdivided binary tree.

    Args:
        st: SubdividedTree
    """

    def __init__(self, st):
        self.st = st
        self.n = st.tree.n
        self.m = st.important_count
        edges = np.array(st.tree.edges(), dtype=np.int64).reshape(-1, 2)
        self.src = np.concatenate([edges[:, 0], edges[:, 1]])
        self.dst = np.concatenate([edges[:, 1], edges[:, 0]])
        self.children = np.arange(1, self.m)
        self.parents = (self.children - 1) // 2

    def full(self):
        return np.ones(self.n, dtype=bool)

    def step(self, a, shots):
        nxt = np.zeros(self.n, dtype=bool)
        nxt[self.dst[a[self.src]]] = True
        nxt[list(shots)] = False
        return nxt

    def support(self, a):
        """Per vertex, the number of neighbours in a."""
        return np.bincount(self.dst[a[self.src]], minlength=self.n)

    def subdivider_of(self, child):
        return self.m - 1 + child


class SurvivalReport(object):
    """One schedule run against the mouse on T_k.

    Attributes:
        k (int): Height.
        n_target (int): Important vertices the mouse is claimed to keep.
        cats (int): Largest shot set of the schedule.
        rounds (int): Rounds executed.
        counts (list): (round, important count) for round 0 and every even round.
        audits (list): Per-step audit records, empty without audit.
        outcome (str): 'Survives', 'BelowTarget' or 'Caught'.
        adversary (str): Label of the schedule source.
    """

    def __init__(self, k, n_target, cats, adversary=None):
        self.k = k
        self.n_target = n_target
        self.cats = cats
        self.adversary = adversary
        self.rounds = 0
        self.counts = []
        self.audits = []
        self.outcome = SURVIVES

    @property
    def min_count(self):
        return min(count for _, count in self.counts)

    def audit_failures(self, kind):
        return [record for record in self.audits if not record[kind]]

    def to_dict(self):
        return {'k': self.k, 'n_target': self.n_target, 'cats': self.cats, 'adversary': self.adversary,
                'rounds': self.rounds, 'counts': [list(pair) for pair in self.counts],
                'audits': self.audits, 'outcome': self.outcome}


def _audit_step(dyn, previous, odd_shots, even_shots, current, n_target, cats, step):
    """Rebuilds the escape argument's quantities for one pair of rounds."""
    m = dyn.m
    k = dyn.st.k
    important = np.flatnonzero(previous[:m])
    record = {'step': step, 'x': n_target}
    if len(important) < n_target:
        record.update({'boundary': None, 'components': [], 'r_bound': False, 'chain': False,
                       'containment': False, 'weak': False, 'observed': int(current[:m].sum())})
        return record

    x = np.zeros(m, dtype=bool)
    x[important[:n_target]] = True
    nb = np.zeros(m, dtype=bool)
    nb[dyn.children] |= x[dyn.parents]
    nb[:2 ** k - 1] |= x[1::2] | x[2::2]
    boundary = nb & ~x
    closure = x | boundary

    label = np.arange(m)
    for depth in range(1, k + 1):
        level = np.arange(2 ** depth - 1, 2 ** (depth + 1) - 1)
        up = (level - 1) // 2
        label[level] = np.where(closure[up] & closure[level], label[up], level)

    odd = np.zeros(dyn.n, dtype=bool)
    odd[list(odd_shots)] = True
    even = np.zeros(dyn.n, dtype=bool)
    even[list(even_shots)] = True

    inner = closure[dyn.children] & closure[dyn.parents]
    shot_edge = inner & odd[dyn.m - 1 + dyn.children]
    degree = np.bincount(dyn.children[inner], minlength=m) + np.bincount(dyn.parents[inner], minlength=m)
    shot_degree = np.bincount(dyn.children[shot_edge], minlength=m) + \
        np.bincount(dyn.parents[shot_edge], minlength=m)
    isolated = closure & (degree == shot_degree)
    hit = closure & even[:m]

    order = np.bincount(label[closure], minlength=m)
    edges_shot = np.bincount(label[dyn.children[shot_edge]], minlength=m)
    hits = np.bincount(label[hit], minlength=m)
    lost = np.bincount(label[isolated], minlength=m)
    roots = np.flatnonzero(order)
    wflag = (edges_shot[roots] == order[roots] - 1).astype(np.int64)

    components = []
    for root, w in zip(roots, wflag):
        if edges_shot[root] or hits[root] or lost[root] or w:
            components.append({'root': int(root), 'order': int(order[root]), 'edges': int(edges_shot[root]),
                               'hits': int(hits[root]), 'isolated': int(lost[root]), 'w': int(w)})

    observed = int(current[:m].sum())
    chain_bound = n_target + int(boundary.sum()) - 2 * cats - int(wflag.sum())

    touched = np.zeros(m, dtype=bool)
    shot_sub = np.flatnonzero(odd[m:])
    touched[dyn.parents[shot_sub]] = True
    touched[dyn.children[shot_sub]] = True
    weak_set = closure & ~touched & ~even[:m]
    weak_bound = n_target + int(boundary.sum()) - 3 * cats

    record.update({
        'boundary': int(boundary.sum()),
        'components': components,
        'component_count': int(roots.size),
        'r_bound': bool(np.all(lost[roots] <= edges_shot[roots] + wflag)),
        'chain_bound': chain_bound,
        'observed': observed,
        'chain': observed >= chain_bound,
        'containment': not bool(np.any(closure & ~hit & ~isolated & ~current[:m])),
        'weak_bound': weak_bound,
        'weak': int(weak_set.sum()) >= weak_bound and not bool(np.any(weak_set & ~current[:m])),
    })
    return record


def survival_run(st, s, audit=False, n_target=None, adversary=None):
    """Runs a schedule on T_k from the full vertex set under the 'paper' order.

    Args:
        st: SubdividedTree
        s: Schedule on the vertices of T_k.
        audit: Rebuild and check the escape argument after every even round.
        n_target: Important vertices to keep, special_n(k) by default.
        adversary: Label stored in the report.

    Returns:
        SurvivalReport object
    """
    s.check_vertices(st.tree)
    dyn = TkDynamics(st)
    n_target = special_n(st.k) if n_target is None else n_target
    report = SurvivalReport(st.k, n_target, s.cats_used, adversary)

    a = dyn.full()
    report.counts.append((0, dyn.m))
    previous = a
    for index, shot in enumerate(s.rounds, 1):
        nxt = dyn.step(a, shot)
        report.rounds = index
        if index % 2 == 0:
            report.counts.append((index, int(nxt[:dyn.m].sum())))
            if audit:
                report.audits.append(_audit_step(dyn, previous, s.rounds[index - 2], shot, nxt, n_target,
                                                 report.cats, index // 2))
            previous = nxt
        a = nxt
        if not a.any():
            report.outcome = CAUGHT
            break

    if report.outcome != CAUGHT and report.min_count < n_target:
        report.outcome = BELOW_TARGET
    logger.debug('Survival run on T_%s with %s cats: %s', st.k, report.cats, report.outcome)
    return report


def random_schedule(st, cats, rounds, seed):
    """Each round shoots cats distinct uniformly random vertices."""
    rng = np.random.default_rng(seed)
    n = st.tree.n
    return Schedule(cats, [rng.choice(n, size=min(cats, n), replace=False).tolist() for _ in range(rounds)])


def greedy_schedule(st, cats, rounds, seed=0):
    """Each round shoots the possible positions whose removal strands the most vertices next round.

    A candidate scores one plus the number of its neighbours that it alone
    would feed; ties are broken at random.
    """
    rng = np.random.default_rng(seed)
    dyn = TkDynamics(st)
    a = dyn.full()
    out = []
    for _ in range(rounds):
        reach = dyn.step(a, ())
        only = dyn.support(reach) == 1
        score = 1 + np.bincount(dyn.dst[only[dyn.src]], minlength=dyn.n) + 0.5 * rng.random(dyn.n)
        score[~reach] = -1
        shots = np.argsort(-score, kind='stable')[:cats]
        shots = [int(v) for v in shots if reach[v]]
        out.append(shots)
        a = dyn.step(a, shots)
        if not a.any():
            break
    return Schedule(cats, out)


def sweep_schedule(st, cats, rounds, seed=0):
    """Marches cats side by side through the subdividing vertices in id order."""
    m = st.important_count
    offset = seed % (m - 1)
    out = []
    for i in range(rounds):
        out.append([m + (offset + i * cats + j) % (m - 1) for j in range(cats)])
    return Schedule(cats, out)


def truncated_schedule(st, cats, rounds, builder):
    """The basic strategy of T_k cut down to its first rounds and the cats smallest ids per round."""
    full = builder.basic(st.tree)
    return Schedule(cats, [sorted(shot)[:cats] for shot in full.rounds[:rounds]])


class CampaignReport(object):
    """Merged survival reports of one height.

    Results are sampled evidence for a statement about every schedule.
    """

    def __init__(self, k, eps, cats, n_target):
        self.k = k
        self.eps = eps
        self.cats = cats
        self.n_target = n_target
        self.runs = 0
        self.outcomes = {SURVIVES: 0, BELOW_TARGET: 0, CAUGHT: 0}
        self.min_count = None
        self.failures = {'r_bound': 0, 'chain': 0, 'containment': 0, 'weak': 0}
        self.audited_steps = 0
        self.per_adversary = {}
        self.skipped = cats == 0

    def add(self, report):
        self.runs += 1
        self.outcomes[report.outcome] += 1
        low = report.min_count
        self.min_count = low if self.min_count is None else min(self.min_count, low)
        stats = self.per_adversary.setdefault(report.adversary, {'runs': 0, 'min_count': low, 'survived': 0})
        stats['runs'] += 1
        stats['min_count'] = min(stats['min_count'], low)
        stats['survived'] += report.outcome == SURVIVES
        self.audited_steps += len(report.audits)
        for kind in self.failures:
            self.failures[kind] += len(report.audit_failures(kind))

    @property
    def violated(self):
        """True when the mouse lost ground or a must-hold audit inequality failed."""
        bad_runs = self.outcomes[BELOW_TARGET] + self.outcomes[CAUGHT]
        return bool(bad_runs or self.failures['r_bound'] or self.failures['chain'] or self.failures['weak'])

    def to_dict(self):
        return {'k': self.k, 'eps': str(self.eps), 'cats': self.cats, 'n_target': self.n_target,
                'runs': self.runs, 'outcomes': self.outcomes, 'min_count': self.min_count,
                'audited_steps': self.audited_steps, 'audit_failures': self.failures,
                'containment_gaps': self.failures['containment'], 'per_adversary': self.per_adversary,
                'skipped': self.skipped, 'evidence': 'sampled', 'violated': self.violated}


def survival_campaign(k, eps, schedules, seed, audit=False, rounds=32, adversaries=(RANDOM, GREEDY, SWEEP),
                      builder=None):
    """Runs schedules from several adversaries with the strong budget on T_k.

    Args:
        k: Height.
        eps: Rational in (0, 1/4).
        schedules: Total number of runs, spread round-robin over the adversaries.
        seed: Base seed; run i uses seed (seed, i).
        audit: Audit every even round.
        rounds: Rounds per schedule.
        adversaries: Labels among 'random', 'greedy', 'sweep', 'truncated'.
        builder: StrategyBuilder for the truncated adversary.

    Returns:
        CampaignReport object
    """
    eps = as_fraction(eps)
    cats = corollary_budget(k, STRONG, eps)
    campaign = CampaignReport(k, eps, cats, special_n(k))
    if campaign.skipped:
        logger.warning('Budget on T_%s is zero cats, nothing to run', k)
        return campaign

    for label in adversaries:
        if label not in ADVERSARIES:
            raise exceptions.CatMouseInputError('Unknown adversary {}'.format(label))

    st = make_tk(k)
    truncated = None
    for i in range(schedules):
        label = adversaries[i % len(adversaries)]
        run_seed = [seed, i]
        if label == RANDOM:
            schedule = random_schedule(st, cats, rounds, run_seed)
        elif label == GREEDY:
            schedule = greedy_schedule(st, cats, rounds, run_seed)
        elif label == SWEEP:
            schedule = sweep_schedule(st, cats, rounds, seed + i)
        else:
            if truncated is None:
                truncated = truncated_schedule(st, cats, rounds, builder or StrategyBuilder())
            schedule = truncated
        campaign.add(survival_run(st, schedule, audit, campaign.n_target, label))

    logger.info('Survival campaign on T_%s with %s cats: %s runs, %s', k, cats, campaign.runs, campaign.outcomes)
    return campaign


class EvasionLab(object):
    """Seeded entry point for the lower-bound checks.

    Args:
        seed: Default seed for sampled checks.
    """

    def __init__(self, seed=0):
        self.seed = seed

    def weak_boundary(self, k, samples=None):
        return check_weak_boundary(k, samples, self.seed)

    def eps_boundary(self, k, eps, samples=None):
        return check_eps_boundary(k, eps, samples, self.seed)

    def arithmetic(self, limit):
        return check_arithmetic_lemma(limit)

    def approximate(self, samples):
        return check_approximate_lemma(samples, self.seed)

    def oracle(self, limit=BRUTEFORCE_MAX_N):
        return check_beta_oracle(limit)

    def campaign(self, k, eps, schedules, audit=False, rounds=32, adversaries=(RANDOM, GREEDY, SWEEP)):
        return survival_campaign(k, eps, schedules, self.seed, audit, rounds, adversaries)
