"""Triangle cones: the B2 stability system, cone geometry, Hilbert bases,
and flat/rank-0 semistability predicates.

Triples (alpha, beta, gamma) of dominant rank-2 coweights live in the
6-dimensional space (x1, y1, x2, y2, x3, y3) with rectangular coordinates
per vector.  The B2 system consists of 18 stability inequalities plus the 6
chamber inequalities.  Cone computations use exact rational double
description; Hilbert bases are obtained from parallelepiped points of the
extreme-ray subcones followed by irreducibility filtering.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional, Sequence

from .intlinalg import integer_matrix, smith_normal_form, _int_inverse, _invert
from .rootdata import (
    RootSystem,
    Vector,
    build_root_system,
    coroot_lattice,
    pairing,
    vadd,
    vdot,
    vscale,
    vsub,
    vzero,
)


@dataclass(frozen=True)
class Inequality:
    """A homogeneous constraint sum(coeffs * vars) >= 0 with a provenance tag."""

    coeffs: Vector
    tag: str

    def value(self, point: Sequence) -> Fraction:
        return vdot(self.coeffs, tuple(Fraction(c) for c in point))

    def holds(self, point: Sequence) -> bool:
        return self.value(point) >= 0


@dataclass(frozen=True)
class InequalitySystem:
    """A homogeneous rational inequality system defining a closed convex cone."""

    dim: int
    inequalities: tuple[Inequality, ...]

    def contains(self, point: Sequence) -> bool:
        point = tuple(Fraction(c) for c in point)
        if len(point) != self.dim:
            raise ValueError("point dimension mismatch")
        return all(iq.holds(point) for iq in self.inequalities)


Triple = tuple[Vector, Vector, Vector]


def triple_to_point(t: Triple) -> Vector:
    (a, b, c) = t
    return tuple(Fraction(x) for x in (*a, *b, *c))


def point_to_triple(p: Sequence) -> Triple:
    p = tuple(Fraction(x) for x in p)
    if len(p) % 3:
        raise ValueError("triple space dimension must be divisible by 3")
    r = len(p) // 3
    return (p[:r], p[r : 2 * r], p[2 * r :])


# ---------------------------------------------------------------------------
# the B2 system


def b2_stability_system() -> InequalitySystem:
    """The 24 = 18 + 6 inequalities cutting out the B2 triangle cone.

    Variables are (x1, y1, x2, y2, x3, y3); the chamber is x >= y >= 0.
    """

    def e(*pairs):
        v = [Fraction(0)] * 6
        for idx, c in pairs:
            v[idx] += Fraction(c)
        return tuple(v)

    X = [0, 2, 4]
    Y = [1, 3, 5]
    ineqs = []
    for i, j, k in itertools.permutations(range(3)):
        if j < k:
            # x_i <= x_j + x_k
            ineqs.append(
                Inequality(e((X[j], 1), (X[k], 1), (X[i], -1)), "stability:lines:x%d" % (i + 1))
            )
    for i, j, k in itertools.permutations(range(3)):
        # y_i <= y_j + x_k  (j and k play different roles)
        ineqs.append(
            Inequality(
                e((Y[j], 1), (X[k], 1), (Y[i], -1)),
                "stability:lines:y%d<=y%d+x%d" % (i + 1, j + 1, k + 1),
            )
        )
    for i in range(3):
        for j in range(3):
            # x_i + y_j <= S/2, i.e. S - 2 x_i - 2 y_j >= 0
            v = [Fraction(1)] * 6
            v[X[i]] -= 2
            v[Y[j]] -= 2
            ineqs.append(Inequality(tuple(v), "stability:planes:x%d+y%d" % (i + 1, j + 1)))
    for i in range(3):
        ineqs.append(Inequality(e((X[i], 1), (Y[i], -1)), "chamber:x%d>=y%d" % (i + 1, i + 1)))
        ineqs.append(Inequality(e((Y[i], 1)), "chamber:y%d>=0" % (i + 1)))
    assert len(ineqs) == 24
    return InequalitySystem(6, tuple(ineqs))


def in_D3_b2(t: Triple) -> bool:
    """Membership of a dominant rank-2 triple in the B2 triangle cone.

    Evaluates both the 24-inequality form and the root-cone reformulation
    (alpha_i <=_{Delta*} alpha_j + alpha_k and tau-twisted variants with
    tau(x, y) = (y, x)) and insists they agree.
    """
    point = triple_to_point(t)
    if len(point) != 6:
        raise ValueError("in_D3_b2 needs three rank-2 vectors")
    for v in t:
        if not (v[0] >= v[1] >= 0):
            raise ValueError("triple members must lie in the chamber x >= y >= 0")
    by_system = b2_stability_system().contains(point)
    by_cones = _in_D3_b2_root_cone(t)
    if by_system != by_cones:
        raise AssertionError("B2 membership reformulations disagree")
    return by_system


def _leq_root_cone(v: Vector, w: Vector) -> bool:
    d = vsub(w, v)
    return d[0] >= 0 and d[0] + d[1] >= 0


def _tau(v: Vector) -> Vector:
    return (v[1], v[0])


def _in_D3_b2_root_cone(t: Triple) -> bool:
    a = list(t)
    for i, j, k in itertools.permutations(range(3)):
        if j < k and not _leq_root_cone(a[i], vadd(a[j], a[k])):
            return False
        if not _leq_root_cone(_tau(a[i]), vadd(_tau(a[j]), a[k])):
            return False
    return True


# ---------------------------------------------------------------------------
# semidecidable membership through invariant vectors


def oracle_in_D3(system: RootSystem, t: Triple, k_max: int):
    """Search for k <= k_max with nonzero invariants in V_{k alpha} (x) ... .

    Returns ("yes", k) for the least such k, else ("unknown", None).  Rational
    triples are admitted; a given k is only tested when k*t is integral on
    the coweight lattice.
    """
    from .repring import RepRing

    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    rep = RepRing(system)
    vecs = [tuple(Fraction(c) for c in v) for v in t]
    for v in vecs:
        if not system.is_dominant(v):
            raise ValueError("oracle_in_D3 needs dominant vectors")
    for k in range(1, k_max + 1):
        scaled = [vscale(k, v) for v in vecs]
        if not all(_is_coweight_integral(system, v) for v in scaled):
            continue
        if rep.n0(*scaled) != 0:
            return ("yes", k)
    return ("unknown", None)


def _is_coweight_integral(system: RootSystem, v: Vector) -> bool:
    return all(vdot(a, v).denominator == 1 for a in system.positive_roots)


# ---------------------------------------------------------------------------
# cone geometry: exact double description


def cone_geometry(system: InequalitySystem):
    """Extreme rays and facet data of a pointed full-dimensional cone.

    Returns a dict with primitive integer ``extreme_rays``, ``facet_count``
    (number of distinct facet hyperplanes among the inequalities) and
    ``redundant`` (inequalities that do not support a facet).
    """
    d = system.dim
    rows = [iq.coeffs for iq in system.inequalities]
    init = _independent_subset(rows, d)
    if init is None:
        raise ValueError("degenerate system: no full-rank inequality subset")
    inv = _invert([[rows[i][j] for j in range(d)] for i in init])
    rays: list[tuple[Vector, frozenset]] = []
    for j in range(d):
        ray = _primitive(tuple(inv[i][j] for i in range(d)))
        rays.append((ray, frozenset()))
    processed: list[int] = list(init)
    rays = [
        (r, frozenset(i for i in processed if vdot(rows[i], r) == 0)) for r, _ in rays
    ]
    for idx, row in enumerate(rows):
        if idx in init:
            continue
        pos = [(r, t) for r, t in rays if vdot(row, r) > 0]
        zero = [(r, t | {idx}) for r, t in rays if vdot(row, r) == 0]
        neg = [(r, t) for r, t in rays if vdot(row, r) < 0]
        new_rays = pos + zero
        for (r1, t1), (r2, t2) in itertools.product(pos, neg):
            common = t1 & t2
            # combinatorial adjacency: no third ray is tight on a superset
            adjacent = True
            for r3, t3 in rays:
                if r3 is r1 or r3 is r2:
                    continue
                if common <= t3:
                    adjacent = False
                    break
            if not adjacent:
                continue
            v1 = vdot(row, r1)
            v2 = vdot(row, r2)
            mixed = vsub(vscale(v1, r2), vscale(v2, r1))
            ray = _primitive(mixed)
            tight = (common & t2 & t1) | {idx}
            tight = frozenset(i for i in list(common) + [idx] if vdot(rows[i], ray) == 0)
            new_rays.append((ray, tight | {idx}))
        processed.append(idx)
        rays = [
            (r, frozenset(i for i in processed if vdot(rows[i], r) == 0)) for r, _ in new_rays
        ]
    # dedupe
    seen = {}
    for r, t in rays:
        seen[r] = t
    ray_list = sorted(seen)
    for r in ray_list:
        if tuple(-c for c in r) in seen:
            raise ValueError("cone is not pointed")
    facets = []
    redundant = []
    for idx, iq in enumerate(system.inequalities):
        tight_rays = [r for r in ray_list if vdot(iq.coeffs, r) == 0]
        if _rank(tight_rays) == d - 1:
            facets.append(idx)
        else:
            redundant.append(iq.tag)
    facet_normals = set()
    for idx in facets:
        facet_normals.add(_primitive(system.inequalities[idx].coeffs))
    return {
        "extreme_rays": ray_list,
        "facet_count": len(facet_normals),
        "redundant": redundant,
    }


def _independent_subset(rows, d) -> Optional[list[int]]:
    chosen: list[int] = []
    basis: list[Vector] = []
    for i, row in enumerate(rows):
        cand = basis + [row]
        if _rank(cand) == len(cand):
            basis = cand
            chosen.append(i)
            if len(chosen) == d:
                return chosen
    return None


def _rank(vectors) -> int:
    if not vectors:
        return 0
    mat = [list(v) for v in vectors]
    m = len(mat)
    n = len(mat[0])
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, m) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / Fraction(mat[rank][c])
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(m):
            if i != rank and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def _primitive(v: Vector) -> Vector:
    from math import gcd

    den = 1
    for c in v:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in v]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(Fraction(c, g) for c in ints)


# ---------------------------------------------------------------------------
# Hilbert bases


def hilbert_basis(system: InequalitySystem) -> list[Vector]:
    """Minimal generating set of the semigroup (cone (x) Z^d).

    Strategy: candidates are the primitive extreme rays plus the lattice
    points of the half-open parallelepipeds spanned by every linearly
    independent d-subset of rays (these cover any triangulation); greedy
    irreducibility filtering in increasing order of a positive functional
    then yields the Hilbert basis.
    """
    geometry = cone_geometry(system)
    rays = [tuple(int(c) for c in r) for r in geometry["extreme_rays"]]
    d = system.dim
    if not rays:
        return []
    degree_functional = tuple(
        sum(Fraction(iq.coeffs[j]) for iq in system.inequalities) for j in range(d)
    )

    def degree(v) -> Fraction:
        val = vdot(degree_functional, tuple(Fraction(c) for c in v))
        if val <= 0 and any(c != 0 for c in v):
            raise AssertionError("degree functional is not positive on the cone")
        return val

    candidates: set[tuple[int, ...]] = set(rays)
    for subset in itertools.combinations(range(len(rays)), d):
        mat = [rays[i] for i in subset]
        if _rank(mat) < d:
            continue
        for point in _parallelepiped_points(mat):
            if any(point):
                if system.contains(point):
                    candidates.add(point)
    ordered = sorted(candidates, key=lambda v: (degree(v), v))
    basis: list[tuple[int, ...]] = []
    for z in ordered:
        reducible = False
        for u in basis:
            if degree(u) > degree(z):
                break
            diff = tuple(a - b for a, b in zip(z, u))
            if system.contains(diff):
                reducible = True
                break
        if not reducible:
            basis.append(z)
    return [tuple(Fraction(c) for c in b) for b in basis]


def _parallelepiped_points(columns: Sequence[Sequence[int]]):
    """Lattice points of { sum t_i c_i : 0 <= t_i < 1 } for integer columns."""
    d = len(columns)
    A = [[columns[j][i] for j in range(d)] for i in range(d)]
    U, D, V = smith_normal_form(A)
    diag = [D[i][i] for i in range(d)]
    det = 1
    for x in diag:
        det *= x
    if det == 0:
        raise ValueError("columns are dependent")
    if abs(det) == 1:
        return []
    Uinv = _int_inverse(U)
    Ainv = _invert(A)
    points = []
    for combo in itertools.product(*(range(x) for x in diag)):
        y = [sum(Uinv[i][j] * combo[j] for j in range(d)) for i in range(d)]
        t = [sum(Ainv[i][j] * Fraction(y[j]) for j in range(d)) for i in range(d)]
        frac = [ti - ti.__floor__() for ti in t]
        point = tuple(
            int(sum(Fraction(A[i][j]) * frac[j] for j in range(d))) for i in range(d)
        )
        points.append(point)
    return points


def canonical_triple_orbit(t: Triple) -> Triple:
    """Lexicographically smallest member of the S3 orbit of a triple."""
    return min(itertools.permutations(t))


def hilbert_basis_triples(system: InequalitySystem, up_to_s3: bool = True) -> list[Triple]:
    """Hilbert basis returned as triples, optionally up to the S3 action."""
    triples = [point_to_triple(p) for p in hilbert_basis(system)]
    if not up_to_s3:
        return sorted(triples)
    return sorted({canonical_triple_orbit(t) for t in triples})


# ---------------------------------------------------------------------------
# fundamental-coweight dictionaries and the published generator lists


def long_short_coweights(system: RootSystem) -> tuple[Vector, Vector]:
    """(long, short) fundamental coweights of an irreducible rank-2 system."""
    if system.rank != 2:
        raise ValueError("long/short dictionary is for rank-2 systems")
    w = [system.fundamental_coweight(0), system.fundamental_coweight(1)]
    w.sort(key=lambda v: vdot(v, v), reverse=True)
    return w[0], w[1]


def coweight_from_long_short(system: RootSystem, xy) -> Vector:
    """[x, y] -> x * (long fundamental coweight) + y * (short one)."""
    x, y = (Fraction(c) for c in xy)
    long_w, short_w = long_short_coweights(system)
    return vadd(vscale(x, long_w), vscale(y, short_w))


# Hilbert-basis orbit representatives in [long, short] coordinates.  For B2
# these are recomputed from scratch by hilbert_basis_triples; for G2 the
# published list is a fixture validated member by member through the
# invariant-vector and Hecke routes.
B2_HILBERT_GENERATORS = (
    ((0, 1), (0, 1), (0, 0)),
    ((1, 0), (1, 0), (0, 0)),
    ((1, 0), (0, 1), (0, 1)),
    ((1, 0), (1, 0), (0, 2)),
    ((1, 0), (1, 0), (1, 0)),
    ((1, 0), (1, 0), (1, 1)),
    ((0, 1), (0, 1), (0, 1)),
    ((1, 0), (1, 0), (0, 1)),
)
B2_Q4_GENERATOR_COUNT = 5  # the first five; the last three leave Q(R^vee)

G2_HILBERT_GENERATORS = (
    ((0, 1), (0, 1), (0, 0)),
    ((1, 0), (1, 0), (0, 0)),
    ((0, 1), (0, 1), (0, 1)),
    ((1, 0), (1, 0), (1, 0)),
    ((1, 0), (1, 0), (0, 3)),
    ((1, 0), (2, 0), (0, 3)),
    ((1, 0), (0, 1), (0, 1)),
    ((1, 0), (0, 1), (0, 2)),
    ((1, 0), (1, 0), (0, 2)),
    ((1, 0), (1, 0), (0, 1)),
    ((1, 0), (1, 0), (1, 1)),
)
G2_Q4_GENERATOR_COUNT = 9  # the last two are only triangle-realizable


def generator_triple(system: RootSystem, gen) -> Triple:
    return tuple(coweight_from_long_short(system, xy) for xy in gen)


def validate_dictionaries() -> None:
    """Startup consistency checks pinning the [x, y] coordinate dictionaries."""
    b2 = build_root_system("B2")
    Q = coroot_lattice(b2)
    in_q = []
    for gen in B2_HILBERT_GENERATORS:
        a, b, c = generator_triple(b2, gen)
        in_q.append(Q.contains(vadd(vadd(a, b), c)))
    if in_q != [True] * B2_Q4_GENERATOR_COUNT + [False] * (len(in_q) - B2_Q4_GENERATOR_COUNT):
        raise AssertionError("B2 coordinate dictionary failed its pinning check")
    g2 = build_root_system("G2")
    long_w, short_w = long_short_coweights(g2)
    if pairing(g2.rho, long_w) != 5 or pairing(g2.rho, short_w) != 3:
        raise AssertionError("G2 coordinate dictionary failed its pinning check")


# ---------------------------------------------------------------------------
# flat and rank-0 semistability


def _squarefree_decompose(n: int) -> tuple[int, int]:
    """n = s^2 * d with d squarefree; returns (s, d) for n >= 1."""
    if n <= 0:
        raise ValueError("need a positive integer")
    s = 1
    d = n
    f = 2
    while f * f <= d:
        while d % (f * f) == 0:
            d //= f * f
            s *= f
        f += 1
    return s, d


class RadicalSum:
    """An exact sum of terms c * sqrt(d) with rational c and squarefree d >= 1.

    Square roots of distinct squarefree integers are linearly independent
    over the rationals, so the representation is canonical and zero-testing
    is exact.
    """

    def __init__(self, terms: Optional[dict[int, Fraction]] = None):
        self.terms = {d: Fraction(c) for d, c in (terms or {}).items() if c != 0}

    @staticmethod
    def rational(c) -> "RadicalSum":
        return RadicalSum({1: Fraction(c)})

    @staticmethod
    def sqrt_of(n: int, scale=1) -> "RadicalSum":
        s, d = _squarefree_decompose(n)
        return RadicalSum({d: Fraction(scale) * s})

    def __add__(self, other: "RadicalSum") -> "RadicalSum":
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, Fraction(0)) + c
        return RadicalSum(out)

    def __neg__(self) -> "RadicalSum":
        return RadicalSum({d: -c for d, c in self.terms.items()})

    def scale(self, c) -> "RadicalSum":
        c = Fraction(c)
        return RadicalSum({d: c * x for d, x in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def sign(self) -> int:
        if not self.terms:
            return 0
        if all(c > 0 for c in self.terms.values()):
            return 1
        if all(c < 0 for c in self.terms.values()):
            return -1
        # mixed signs: evaluate with enough precision that the rounding
        # error cannot flip a nonzero algebraic number of this size
        scale = 10**40
        total = 0
        error = 0
        for d, c in self.terms.items():
            root = isqrt(d * scale * scale)  # floor(sqrt(d) * 10^40)
            total += c.numerator * root // c.denominator
            error += abs(c.numerator // c.denominator) + 2
        if abs(total) <= error * 2:
            raise ArithmeticError("radical sum too close to zero to sign safely")
        return 1 if total > 0 else -1

    def __repr__(self):
        if not self.terms:
            return "RadicalSum(0)"
        parts = ["%s*sqrt(%d)" % (c, d) for d, c in sorted(self.terms.items())]
        return "RadicalSum(%s)" % " + ".join(parts)


@dataclass(frozen=True)
class FlatConfiguration:
    """Weighted directions in a single apartment: (mass, direction) pairs.

    Masses are positive rationals; directions are nonzero rational vectors
    whose normalization to unit length is handled symbolically.
    """

    points: tuple[tuple[Fraction, Vector], ...]

    @staticmethod
    def of(pairs: Iterable) -> "FlatConfiguration":
        pts = []
        for mass, direction in pairs:
            mass = Fraction(mass)
            direction = tuple(Fraction(c) for c in direction)
            if mass <= 0:
                raise ValueError("masses must be positive")
            if not any(direction):
                raise ValueError("directions must be nonzero")
            pts.append((mass, direction))
        if not pts:
            raise ValueError("configuration must contain at least one point")
        return FlatConfiguration(tuple(pts))


def _normalized_resultant(config: FlatConfiguration):
    """sum m_i xi_i / |xi_i| grouped by the squarefree part of |xi_i|^2.

    The vectors m xi / |xi| = (m / (s*d)) * sqrt(d) * xi for |xi|^2 = n with
    n = s^2 d; coordinates with different squarefree parts d are linearly
    independent over Q, so the total vanishes iff each group's sum does.
    """
    dim = len(config.points[0][1])
    groups: dict[int, list[Fraction]] = {}
    for mass, xi in config.points:
        norm2 = vdot(xi, xi)
        # |xi| = sqrt(num/den) = sqrt(num*den)/den
        n = norm2.numerator * norm2.denominator
        s, d = _squarefree_decompose(n)
        scale = mass * norm2.denominator / Fraction(s * d)
        acc = groups.setdefault(d, [Fraction(0)] * dim)
        for i, c in enumerate(xi):
            acc[i] += scale * c
    return groups


def flat_semistable(config: FlatConfiguration) -> bool:
    """A flat configuration is semistable iff its resultant vanishes."""
    groups = _normalized_resultant(config)
    return all(all(c == 0 for c in acc) for acc in groups.values())


def slope(config: FlatConfiguration, eta) -> RadicalSum:
    """slope(eta) = -sum_i m_i cos(angle(xi_i, eta)) as an exact radical sum."""
    eta = tuple(Fraction(c) for c in eta)
    if not any(eta):
        raise ValueError("direction eta must be nonzero")
    eta_norm2 = vdot(eta, eta)
    total = RadicalSum()
    for mass, xi in config.points:
        dot = vdot(xi, eta)
        if dot == 0:
            continue
        norm2 = vdot(xi, xi) * eta_norm2
        # cos = dot / sqrt(norm2); with norm2 = p/q: 1/sqrt(p/q) = sqrt(pq)/p
        p, q = norm2.numerator, norm2.denominator
        s, d = _squarefree_decompose(p * q)
        total = total + RadicalSum({d: -mass * dot * Fraction(s, p)})
    return total


def rank0_stable(masses: Iterable) -> bool:
    """No atom may carry half or more of the total mass."""
    ms = [Fraction(m) for m in masses]
    _check_masses(ms)
    total = sum(ms)
    return all(2 * m < total for m in ms)


def rank0_semistable(masses: Iterable) -> bool:
    """No atom may carry more than half of the total mass."""
    ms = [Fraction(m) for m in masses]
    _check_masses(ms)
    total = sum(ms)
    return all(2 * m <= total for m in ms)


def rank0_nice_semistable(masses: Iterable) -> bool:
    """Stable, or exactly two atoms of equal mass."""
    ms = [Fraction(m) for m in masses]
    _check_masses(ms)
    if rank0_stable(ms):
        return True
    return len(ms) == 2 and ms[0] == ms[1]


def _check_masses(ms):
    if not ms:
        raise ValueError("configuration must contain at least one atom")
    if any(m <= 0 for m in ms):
        raise ValueError("masses must be positive")
