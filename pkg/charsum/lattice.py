###############################################################################
#                                                                             #
#    This program is free software: you can redistribute it and/or modify     #
#    it under the terms of the GNU General Public License as published by     #
#    the Free Software Foundation, either version 3 of the License, or        #
#    (at your option) any later version.                                      #
#                                                                             #
#    This program is distributed in the hope that it will be useful,          #
#    but WITHOUT ANY WARRANTY; without even the implied warranty of           #
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the            #
#    GNU General Public License for more details.                             #
#                                                                             #
#    You should have received a copy of the GNU General Public License        #
#    along with this program. If not, see <http://www.gnu.org/licenses/>.     #
#                                                                             #
###############################################################################

__copyright__ = 'Copyright 2026'
__license__ = 'GPL3'

import math
import logging
import functools
from fractions import Fraction
from collections import namedtuple

import numpy as np
from scipy import integrate
from scipy.special import logsumexp

from charsum.config import (ENUMERATION_CAP,
                            COUNT_CAP,
                            EXHAUSTIVE_RELATION_CAP,
                            MITM_HALF_CAP,
                            CHUNK_SIZE)
from charsum.common import as_fraction
from charsum.exceptions import CapacityError, DomainError, PreconditionError

MultiplierSet = namedtuple('MultiplierSet', 'eta n sign members')
PigeonholeWitness = namedtuple('PigeonholeWitness', 'count bound holds multipliers')
ShiftReport = namedtuple('ShiftReport', 'witness plus_count minus_count images images_valid holds')
RelationVector = namedtuple('RelationVector', 'r n residue')
RelationSearch = namedtuple('RelationSearch', 'status relation strategy searched')
CountingFunction = namedtuple('CountingFunction', 'value log_value support_count')
DichotomyOutcome = namedtuple('DichotomyOutcome', 'branch relation count bound L coverage')
ObstructionReport = namedtuple('ObstructionReport',
                               'min_distance bound holds min_norm_sq euclid_bound euclid_holds witness_ell empty_domain')

logger = logging.getLogger('timestamp')


class LatticeInstance(namedtuple('LatticeInstance', 'M numerators')):
    """Point u = (u_1/M, ..., u_k/M) of the k-torus with exact numerators."""

    __slots__ = ()

    @property
    def k(self):
        return len(self.numerators)

    @property
    def u(self):
        return np.array(self.numerators, dtype=np.int64)

    def fractions(self):
        return [Fraction(a, self.M) for a in self.numerators]


def make_instance(M, numerators, normalize=True):
    """Create a lattice instance.

    Parameters
    ----------
    M : int
        Order of the point.
    numerators : iterable of int
        Numerators u_j, reduced modulo M.
    normalize : boolean
        Divide M and all u_j by gcd(u_1, ..., u_k, M) so that M
        is the exact order of u. Character argument vectors keep
        M = q - 1 and pass False.

    Returns
    -------
    LatticeInstance
        The instance.
    """

    if int(M) != M or M < 1:
        raise DomainError('Order M must be a positive integer: %s' % M)
    M = int(M)
    u = [int(a) % M for a in numerators]
    if not u:
        raise DomainError('Lattice instance needs at least one component.')

    if normalize:
        d = math.gcd(M, *u)
        if d > 1:
            logger.debug('Reducing lattice instance of order %d by gcd %d.' % (M, d))
            M //= d
            u = [a // d for a in u]

    return LatticeInstance(M, tuple(u))


def _parse_sign(sign):
    if sign in ('plus', '+'):
        return 'plus'
    if sign in ('minus', '-'):
        return 'minus'
    raise DomainError('Sign must be plus or minus: %s' % sign)


def _threshold(eta, M):
    """Largest integer c with c <= eta*M, capped at M (everything passes)."""

    eta = as_fraction(eta)
    if eta < 0:
        raise DomainError('eta must be non-negative: %s' % eta)
    if 2 * eta >= 1:
        return M
    return (eta.numerator * M) // eta.denominator


def _centered_abs(ells, a, M):
    r = (ells * a) % M
    return np.minimum(r, M - r)


def _max_centered(inst, ells):
    """max_j |centered(ell*u_j mod M)| for each ell."""

    worst = np.zeros(ells.shape, dtype=np.int64)
    for a in inst.numerators:
        np.maximum(worst, _centered_abs(ells, a, inst.M), out=worst)
    return worst


def _residue_mask(ells, n, sign):
    if sign == 'plus':
        return ells % n == 0
    return ells % n != 0


def _scan(inst, n, eta, sign, cap):
    """Yield arrays of members of C_{n sign}(eta), in increasing order."""

    if int(n) != n or n < 1:
        raise DomainError('Residue modulus n must be a positive integer: %s' % n)
    sign = _parse_sign(sign)
    if inst.M * inst.k > cap:
        raise CapacityError('Order %d with k = %d exceeds enumeration cap %d.' % (inst.M, inst.k, cap))

    threshold = _threshold(eta, inst.M)
    for lo in range(0, inst.M, CHUNK_SIZE):
        ells = np.arange(lo, min(inst.M, lo + CHUNK_SIZE), dtype=np.int64)
        ells = ells[_residue_mask(ells, int(n), sign)]
        yield ells[_max_centered(inst, ells) <= threshold]


def is_member(inst, ells, n, eta, sign):
    """Membership of each ell in C_{n sign}(eta), decided exactly."""

    ells = np.asarray(ells, dtype=np.int64) % inst.M
    sign = _parse_sign(sign)
    return _residue_mask(ells, int(n), sign) & (_max_centered(inst, ells) <= _threshold(eta, inst.M))


def enumerate_small_multiples(inst, n, eta, sign, cap=ENUMERATION_CAP):
    """Multipliers ell in [0, M-1] with every ell*u_j within eta of an integer.

    Parameters
    ----------
    inst : LatticeInstance
        Lattice point.
    n : int
        Residue modulus.
    eta : Fraction
        Distance threshold (closed inequality).
    sign : str
        'plus' for ell = 0 (mod n), 'minus' for ell != 0 (mod n).
    cap : int
        Enumeration cap on M*k.

    Returns
    -------
    MultiplierSet
        Exact member list in increasing order.
    """

    members = np.concatenate(list(_scan(inst, n, eta, sign, cap)))
    return MultiplierSet(as_fraction(eta), int(n), _parse_sign(sign), members)


def count_small_multiples(inst, n, eta, sign, cap=COUNT_CAP):
    """Size of C_{n sign}(eta) without storing members."""
    return int(sum(chunk.size for chunk in _scan(inst, n, eta, sign, cap)))


def cube_collisions(inst, multipliers, N):
    """Differences of multipliers sharing the fullest cube of side 1/N.

    The points ell*u mod 1 are placed in the N^k half-open cubes
    of side 1/N. With r the largest multiplier in the fullest
    cube, every difference r - s with s in that cube has all
    components within 1/N of an integer.

    Parameters
    ----------
    inst : LatticeInstance
        Lattice point.
    multipliers : array_like
        Distinct multipliers in [0, M-1].
    N : int
        Number of cube subdivisions per axis.

    Returns
    -------
    np.ndarray
        Sorted differences (including 0).
    """

    if int(N) != N or N < 1:
        raise DomainError('Cube subdivision N must be a positive integer: %s' % N)

    ells = np.unique(np.asarray(multipliers, dtype=np.int64) % inst.M)
    if ells.size == 0:
        return ells

    cells = np.empty((ells.size, inst.k), dtype=np.int64)
    for j, a in enumerate(inst.numerators):
        cells[:, j] = (int(N) * ((ells * a) % inst.M)) // inst.M

    _, inverse, counts = np.unique(cells, axis=0, return_inverse=True, return_counts=True)
    inverse = np.asarray(inverse).ravel()
    fullest = int(np.argmax(counts))
    members = ells[inverse == fullest]

    return np.sort(members.max() - members)


def pigeonhole_witness(inst, n, N, cap=ENUMERATION_CAP):
    """Count C_{n+}(1/N) and compare with M/(n N^k).

    For integer N the constructive pigeonhole multipliers are
    returned as well; each is a member of C_{n+}(1/N).
    """

    N = as_fraction(N)
    if N <= 0 or int(n) != n or n < 1:
        raise DomainError('pigeonhole_witness requires N > 0 and integer n >= 1.')
    if n * N ** inst.k > inst.M:
        raise DomainError('Precondition n <= M/N^k violated.')

    count = count_small_multiples(inst, n, 1 / N, 'plus', cap=max(cap, COUNT_CAP))
    bound = Fraction(inst.M) / (n * N ** inst.k)

    multipliers = None
    if N.denominator == 1 and inst.M // int(n) * inst.k <= cap:
        multipliers = cube_collisions(inst, np.arange(0, inst.M, int(n), dtype=np.int64), int(N))

    return PigeonholeWitness(count, bound, count >= bound, multipliers)


def shift_construction(inst, n, eta, nu, cap=ENUMERATION_CAP):
    """Inject C_{n+}(eta) into C_{n-}(eta + nu) via s -> r - s.

    The witness r is the smallest member of C_{n-}(nu).

    Returns
    -------
    ShiftReport
        Witness, both set sizes, the images, whether every image
        is a member of the target set, and whether the size
        inequality holds.
    """

    if _not_divisible(inst.M, n):
        raise DomainError('shift_construction requires n | M.')

    eta = as_fraction(eta)
    nu = as_fraction(nu)
    witnesses = enumerate_small_multiples(inst, n, nu, 'minus', cap).members
    if witnesses.size == 0:
        raise PreconditionError('C_{n-}(nu) is empty; no shift witness exists.')

    r = int(witnesses[0])
    plus = enumerate_small_multiples(inst, n, eta, 'plus', cap).members
    images = (r - plus) % inst.M
    images_valid = bool(np.all(is_member(inst, images, n, eta + nu, 'minus')))
    injective = np.unique(images).size == images.size

    minus_count = count_small_multiples(inst, n, eta + nu, 'minus', cap=max(cap, COUNT_CAP))
    return ShiftReport(r, int(plus.size), minus_count, np.sort(images),
                       images_valid and injective, minus_count >= plus.size)


def _not_divisible(M, n):
    return int(n) != n or n < 1 or M % int(n) != 0


def make_relation(inst, r, n):
    """RelationVector for integer vector r with residue n(r.u) mod 1."""

    r = tuple(int(x) for x in r)
    if len(r) != inst.k:
        raise DomainError('Relation length %d does not match k = %d.' % (len(r), inst.k))

    dot = sum(a * b for a, b in zip(r, inst.numerators))
    return RelationVector(r, int(n), Fraction((int(n) * dot) % inst.M, inst.M))


def _grid_vectors(k, L, start, stop):
    """Vectors of [-L, L]^k with mixed-radix indices in [start, stop)."""

    base = 2 * L + 1
    idx = np.arange(start, stop, dtype=np.int64)
    vecs = np.empty((idx.size, k), dtype=np.int64)
    for j in range(k):
        vecs[:, j] = idx % base - L
        idx //= base
    return vecs


def _canonical(vec):
    """Sign-normalise so that the first non-zero entry is positive."""

    for x in vec:
        if x != 0:
            return tuple(int(v) for v in vec) if x > 0 else tuple(-int(v) for v in vec)
    return tuple(int(v) for v in vec)


def _relation_key(vec):
    a = [abs(x) for x in vec]
    return (max(a), sum(a), vec)


def _best_relation(vectors):
    """Smallest vector by (max norm, l1 norm, lexicographic order) over both signs."""

    vectors = np.vstack([vectors, -vectors])
    maxnorm = np.abs(vectors).max(axis=1)
    l1 = np.abs(vectors).sum(axis=1)
    order = np.lexsort((l1, maxnorm))
    first = order[0]
    tied = order[(maxnorm[order] == maxnorm[first]) & (l1[order] == l1[first])]
    return min(tuple(int(v) for v in vectors[i]) for i in tied)


def _exhaustive_relation(u, m, k, L):
    best = None
    total = (2 * L + 1) ** k
    for lo in range(0, total, CHUNK_SIZE):
        vecs = _grid_vectors(k, L, lo, min(total, lo + CHUNK_SIZE))
        sums = (vecs % m) @ (u % m) % m
        hits = vecs[(sums == 0) & np.any(vecs != 0, axis=1)]
        if hits.size:
            cand = _best_relation(hits)
            if best is None or _relation_key(cand) < _relation_key(best):
                best = cand
    return best


def _mitm_relation(u, m, k, L):
    """Meet-in-the-middle: split coordinates and match partial sums mod m."""

    h = k // 2
    left = _grid_vectors(h, L, 0, (2 * L + 1) ** h)
    right = _grid_vectors(k - h, L, 0, (2 * L + 1) ** (k - h))
    a = (left % m) @ (u[:h] % m) % m
    b = (right % m) @ (u[h:] % m) % m

    left_nonzero = np.any(left != 0, axis=1)
    right_nonzero = np.any(right != 0, axis=1)

    candidates = []

    # left part alone already a relation
    solo = left[(a == 0) & left_nonzero]
    if solo.size:
        candidates.append(np.hstack([solo, np.zeros((len(solo), k - h), dtype=np.int64)]))

    right = right[right_nonzero]
    b = b[right_nonzero]
    right_norm = np.abs(right).max(axis=1)
    order = np.lexsort((right_norm, b))
    b_sorted = b[order]

    target = (-a) % m
    pos = np.searchsorted(b_sorted, target)
    pos_clip = np.minimum(pos, b_sorted.size - 1)
    found = (pos < b_sorted.size) & (b_sorted[pos_clip] == target)
    if np.any(found):
        matched_right = right[order[pos_clip[found]]]
        candidates.append(np.hstack([left[found], matched_right]))

    if not candidates:
        return None

    return _best_relation(np.vstack(candidates))


def relation_search(inst, n, L,
                    exhaustive_cap=EXHAUSTIVE_RELATION_CAP,
                    mitm_cap=MITM_HALF_CAP):
    """Search for non-zero r with |r_j| <= L and n(r.u) = 0 (mod 1).

    Exhaustive search returns the smallest relation by max
    norm; meet-in-the-middle covers the whole box but returns
    some relation. Absence is only reported with full coverage.

    Returns
    -------
    RelationSearch
        status is 'found', 'absent' or 'unknown'.
    """

    if _not_divisible(inst.M, n):
        raise DomainError('relation_search requires n | M.')
    if int(L) != L or L < 0:
        raise DomainError('Search radius L must be a non-negative integer: %s' % L)

    L = int(L)
    n = int(n)
    m = inst.M // n
    u = inst.u
    k = inst.k
    size = (2 * L + 1) ** k

    if L == 0:
        return RelationSearch('absent', None, 'trivial', 1)

    if m == 1:
        return RelationSearch('found', make_relation(inst, [1] + [0] * (k - 1), n), 'trivial', 1)

    for j, a in enumerate(inst.numerators):
        if a % m == 0:
            r = [0] * k
            r[j] = 1
            return RelationSearch('found', make_relation(inst, r, n), 'trivial', 1)

    if size <= exhaustive_cap:
        best = _exhaustive_relation(u, m, k, L)
        strategy = 'exhaustive'
    elif (2 * L + 1) ** (k - k // 2) <= mitm_cap:
        best = _mitm_relation(u, m, k, L)
        strategy = 'meet-in-the-middle'
    else:
        logger.warning('Relation search box (2L+1)^k = %d exceeds both strategies.' % size)
        return RelationSearch('unknown', None, 'none', 0)

    if best is None:
        return RelationSearch('absent', None, strategy, size)

    return RelationSearch('found', make_relation(inst, _canonical(best), n), strategy, size)


@functools.lru_cache(maxsize=1)
def bump_normalization():
    """c0 with c0 * int_{-1/2}^{1/2} exp(-1/(1-4x^2)) dx = 1."""

    area, _ = integrate.quad(lambda x: math.exp(-1.0 / (1.0 - 4.0 * x * x)),
                             -0.5, 0.5, epsabs=1e-15, epsrel=1e-13, limit=200)
    return 1.0 / area


def counting_function_S(inst, n, N, cap=ENUMERATION_CAP):
    """Sum over ell != 0 (mod n) of the periodised bump F_N(ell u).

    F_N is the product of phi_N(x) = N phi(N x), phi(x) =
    c0 exp(-1/(1-(2x)^2)) on (-1/2, 1/2). Terms are accumulated
    as logarithms so the sign is exact even when values
    underflow: support_count > 0 exactly when S(N) > 0.

    Returns
    -------
    CountingFunction
        S(N), log S(N) (-inf when zero), and the number of ell
        strictly inside the support.
    """

    N = as_fraction(N)
    if N < 1:
        raise DomainError('counting_function_S requires N >= 1: %s' % N)
    if int(n) != n or n < 1:
        raise DomainError('Residue modulus n must be a positive integer: %s' % n)
    if inst.M * inst.k > cap:
        raise CapacityError('Order %d exceeds enumeration cap.' % inst.M)

    log_c0N = math.log(bump_normalization() * float(N))
    p, q = N.numerator, N.denominator
    M = inst.M

    log_terms = []
    support = 0
    for lo in range(1, M, CHUNK_SIZE):
        ells = np.arange(lo, min(M, lo + CHUNK_SIZE), dtype=np.int64)
        ells = ells[ells % int(n) != 0]
        inside = np.ones(ells.size, dtype=bool)
        logs = np.zeros(ells.size, dtype=np.float64)
        for a in inst.numerators:
            c = _centered_abs(ells, a, M)
            # open support |x| < 1/(2N), decided in integers
            inside &= 2 * p * c < q * M
            scaled = np.where(inside, 2.0 * float(N) * c / M, 0.0)
            logs += log_c0N - 1.0 / (1.0 - scaled * scaled)
        support += int(np.count_nonzero(inside))
        if np.any(inside):
            log_terms.append(logs[inside])

    if support == 0:
        return CountingFunction(0.0, -math.inf, 0)

    log_value = float(logsumexp(np.concatenate(log_terms)))
    return CountingFunction(math.exp(log_value), log_value, support)


@functools.lru_cache(maxsize=4096)
def bump_transform(xi):
    """Fourier transform phi_hat(xi) of the unit-mass bump."""

    if xi == 0:
        return 1.0

    value, _ = integrate.quad(lambda x: math.exp(-1.0 / (1.0 - 4.0 * x * x)),
                              0.0, 0.5, weight='cos', wvar=2 * math.pi * abs(xi),
                              epsabs=1e-15, limit=400)
    return 2.0 * bump_normalization() * value


def fourier_counting_function(inst, n, N, R):
    """Dual-side evaluation of S(N) truncated to |r_j| <= R.

    S(N) = (M/n) [ (n-1) sum_{r.u=0} Phi_hat(r)
                   - sum_{n r.u=0, r.u!=0} Phi_hat(r) ],
    with Phi_hat(r) = prod_j phi_hat(r_j/N).
    """

    if _not_divisible(inst.M, n):
        raise DomainError('fourier_counting_function requires n | M.')
    N = float(as_fraction(N))
    R = int(R)
    n = int(n)
    k = inst.k
    total = (2 * R + 1) ** k
    if total > EXHAUSTIVE_RELATION_CAP:
        raise CapacityError('Fourier truncation box too large: %d' % total)

    hat = np.array([bump_transform(r / N) for r in range(-R, R + 1)])
    u = inst.u
    zero_sum = 0.0
    n_only_sum = 0.0
    for lo in range(0, total, CHUNK_SIZE):
        vecs = _grid_vectors(k, R, lo, min(total, lo + CHUNK_SIZE))
        weights = np.prod(hat[vecs + R], axis=1)
        dots = (vecs % inst.M) @ u % inst.M
        zero_sum += float(np.sum(weights[dots == 0]))
        n_only_sum += float(np.sum(weights[(dots != 0) & ((n * dots) % inst.M == 0)]))

    return (inst.M // n) * ((n - 1) * zero_sum - n_only_sum)


def dichotomy_check(inst, n, N,
                    exhaustive_cap=EXHAUSTIVE_RELATION_CAP,
                    mitm_cap=MITM_HALF_CAP):
    """Either a small relation or many multipliers in C_{n-}(2/N).

    The relation radius is L = floor(k^4 N log(N)^2) with the
    natural logarithm.

    Returns
    -------
    DichotomyOutcome
        branch is 'relation', 'count', 'undecided' (search
        coverage incomplete and count below bound) or
        'violation' (no relation in a fully covered box and
        count below bound).
    """

    if _not_divisible(inst.M, n) or n < 2:
        raise DomainError('dichotomy_check requires an integer n >= 2 dividing M.')
    N = as_fraction(N)
    if N < 1:
        raise DomainError('dichotomy_check requires N >= 1: %s' % N)

    k = inst.k
    L = int(math.floor(k ** 4 * float(N) * math.log(float(N)) ** 2))
    bound = Fraction(inst.M) / (int(n) * N ** k)

    search = relation_search(inst, n, L, exhaustive_cap, mitm_cap)
    if search.status == 'found':
        return DichotomyOutcome('relation', search.relation, None, bound, L, search.strategy)

    count = count_small_multiples(inst, n, 2 / N, 'minus')
    if count >= bound:
        return DichotomyOutcome('count', None, count, bound, L, search.strategy)

    if search.status == 'absent':
        logger.error('Dichotomy violated for M = %d, u = %s, n = %d, N = %s.' % (inst.M, inst.numerators, n, N))
        return DichotomyOutcome('violation', None, count, bound, L, search.strategy)

    return DichotomyOutcome('undecided', None, count, bound, L, search.strategy)


def obstruction_check(inst, n, r, t):
    """Exact minimum of dist(r.(ell u)) over ell != 0 (mod n).

    Requires r.u = t/n (mod 1) with gcd(t, n) = 1 and n | M.
    The Euclidean bound |x|^2 >= 1/(n |r|)^2 on the centered
    representative x of ell u is checked against the minimum of
    |x|^2 over all ell != 0 (mod n), taken independently of the
    ell minimising the distance.

    Returns
    -------
    ObstructionReport
        Exact rationals for both minima and their bounds.
    """

    if _not_divisible(inst.M, n):
        raise DomainError('obstruction_check requires n | M.')
    n = int(n)
    r = tuple(int(x) for x in (r.r if isinstance(r, RelationVector) else r))
    if len(r) != inst.k:
        raise DomainError('Relation length does not match k.')
    if math.gcd(int(t), n) != 1:
        raise DomainError('Residue numerator t must be coprime to n.')

    M = inst.M
    dot = sum(a * b for a, b in zip(r, inst.numerators))
    if (n * dot - int(t) * M) % (n * M) != 0:
        raise DomainError('r.u is not congruent to t/n modulo 1.')

    r_norm_sq = sum(x * x for x in r)
    if n == 1:
        return ObstructionReport(None, Fraction(1), True, None, None, True, None, True)

    S = dot % M
    use_int64 = inst.k * (M // 2 + 1) ** 2 < 2**62
    min_c = None
    min_ell = None
    min_sq = None
    for lo in range(1, M, CHUNK_SIZE):
        ells = np.arange(lo, min(M, lo + CHUNK_SIZE), dtype=np.int64)
        ells = ells[ells % n != 0]
        if ells.size == 0:
            continue

        c = _centered_abs(ells, S, M)
        i = int(np.argmin(c))
        if min_c is None or int(c[i]) < min_c:
            min_c, min_ell = int(c[i]), int(ells[i])

        if use_int64:
            sq = np.zeros(ells.size, dtype=np.int64)
            for a in inst.numerators:
                ca = _centered_abs(ells, a, M)
                sq += ca * ca
            chunk_min = int(sq.min())
        else:
            # squared norms overflow int64; fall back to Python integers
            chunk_min = min(_norm_sq(e, inst.numerators, M) for e in ells.tolist())
        if min_sq is None or chunk_min < min_sq:
            min_sq = chunk_min

    min_distance = Fraction(min_c, M)
    euclid_bound = Fraction(1, n * n * r_norm_sq)
    min_norm_sq = Fraction(min_sq, M * M)

    return ObstructionReport(min_distance, Fraction(1, n), min_distance >= Fraction(1, n),
                             min_norm_sq, euclid_bound, min_norm_sq >= euclid_bound,
                             min_ell, False)


def _norm_sq(ell, numerators, M):
    total = 0
    for a in numerators:
        c = (ell * a) % M
        total += min(c, M - c) ** 2
    return total


def relation_divisibility_check(group, primes, r, n):
    """Compare a prime-power product criterion with the argument relation.

    q divides prod_{r_j>0} p_j^(r_j n) - prod_{r_j<0} p_j^(|r_j| n)
    exactly when n sum_j r_j ind[p_j] = 0 (mod q-1).

    Returns
    -------
    tuple
        (divides, relation_holds); the two always agree.
    """

    q = group.q
    if len(primes) != len(r):
        raise DomainError('primes and r must have equal length.')

    pos = 1
    neg = 1
    for p, e in zip(primes, r):
        if e > 0:
            pos = pos * pow(int(p), int(e) * int(n), q) % q
        elif e < 0:
            neg = neg * pow(int(p), -int(e) * int(n), q) % q

    divides = (pos - neg) % q == 0
    dot = sum(int(e) * int(group.ind[int(p) % q]) for p, e in zip(primes, r))
    relation_holds = (int(n) * dot) % group.order == 0

    return divides, relation_holds
