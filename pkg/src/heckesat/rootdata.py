"""Exact root systems, Weyl groups, lattices and alcove arithmetic.

Everything is computed over ``fractions.Fraction``; no floating point is used
anywhere.  Each supported type is realised in a rational ambient model in
which the coroot of a root ``a`` equals ``2a/|a|^2`` under the standard dot
product, so the pairing between weight-side and coweight-side vectors is the
dot product and the Weyl group acts orthogonally on both sides.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vector = tuple[Fraction, ...]

DEFAULT_WEYL_CAP = 10**6


class WeylCapExceeded(RuntimeError):
    """Raised when an operation would need to enumerate a Weyl group past the cap."""


def weyl_enum_cap() -> int:
    """Current Weyl enumeration cap (overridable via WEYL_ENUM_CAP)."""
    raw = os.environ.get("WEYL_ENUM_CAP")
    return int(raw) if raw else DEFAULT_WEYL_CAP


# ---------------------------------------------------------------------------
# exact vector helpers


def vec(*coords) -> Vector:
    return tuple(Fraction(c) for c in coords)


def vadd(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y, strict=True))


def vsub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y, strict=True))


def vscale(c, x: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in x)


def vneg(x: Vector) -> Vector:
    return tuple(-a for a in x)


def vdot(x: Vector, y: Vector) -> Fraction:
    if len(x) != len(y):
        raise ValueError("dimension mismatch: %d vs %d" % (len(x), len(y)))
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def vzero(dim: int) -> Vector:
    return (Fraction(0),) * dim


def pairing(chi: Vector, lam: Vector) -> Fraction:
    """Pairing of a weight-side vector against a coweight-side vector."""
    return vdot(chi, lam)


def solve_rational(columns: Sequence[Vector], target: Vector) -> Optional[Vector]:
    """Solve ``sum_j c_j * columns[j] = target`` exactly.

    Returns the coefficient tuple, or None if the system is inconsistent.
    Columns must be linearly independent.
    """
    m = len(target)
    n = len(columns)
    rows = [[columns[j][i] for j in range(n)] + [target[i]] for i in range(m)]
    piv_cols: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    if len(piv_cols) != n:
        raise ValueError("columns are linearly dependent")
    for i in range(r, m):
        if rows[i][n] != 0:
            return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][n]
    return tuple(sol)


def _matmul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(vdot(row, col) for col in bt) for row in a)


def _identity_matrix(n: int):
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def _invert_rational(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    M = [
        [Fraction(A[i][j]) for j in range(n)] + [Fraction(1 if j == i else 0) for j in range(n)]
        for i in range(n)
    ]
    for c in range(n):
        piv = next(i for i in range(c, n) if M[i][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [row[n:] for row in M]


# ---------------------------------------------------------------------------
# Cartan data and ambient models (Bourbaki numbering)


def cartan_matrix(series: str, rank: int) -> list[list[int]]:
    """Cartan matrix C with C[i][j] = <alpha_i, alpha_j^vee>."""
    C = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def link(i, j, cij=-1, cji=-1):
        C[i][j] = cij
        C[j][i] = cji

    if series == "A" or rank == 1:
        for i in range(rank - 1):
            link(i, i + 1)
    elif series == "B":
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 2, rank - 1, -2, -1)  # alpha_{l-1} long, alpha_l short
    elif series == "C":
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 2, rank - 1, -1, -2)  # alpha_l long
    elif series == "D":
        if rank < 3:
            raise ValueError("D requires rank >= 3")
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 3, rank - 1)
        C[rank - 2][rank - 1] = C[rank - 1][rank - 2] = 0
    elif series == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E requires rank 6, 7 or 8")
        chain = [0, 2, 3, 4, 5, 6, 7][: rank - 1]
        for i, j in zip(chain, chain[1:]):
            link(i, j)
        link(1, 3)
    elif series == "F":
        if rank != 4:
            raise ValueError("F requires rank 4")
        link(0, 1)
        link(1, 2, -2, -1)  # alpha_2 long, alpha_3 short
        link(2, 3)
    elif series == "G":
        if rank != 2:
            raise ValueError("G requires rank 2")
        link(0, 1, -1, -3)  # alpha_1 short, alpha_2 long
    else:
        raise ValueError("unknown series %r" % series)
    return C


def _simple_roots_ambient(series: str, rank: int) -> list[Vector]:
    """Simple roots in the standard rational ambient model."""
    if series == "A" or rank == 1:
        n = rank + 1
        return [
            tuple(Fraction(1 if j == i else (-1 if j == i + 1 else 0)) for j in range(n))
            for i in range(rank)
        ]

    def e(i, dim):
        return tuple(Fraction(1 if j == i else 0) for j in range(dim))

    if series == "B":
        roots = [vsub(e(i, rank), e(i + 1, rank)) for i in range(rank - 1)]
        roots.append(e(rank - 1, rank))
        return roots
    if series == "C":
        roots = [vsub(e(i, rank), e(i + 1, rank)) for i in range(rank - 1)]
        roots.append(vscale(2, e(rank - 1, rank)))
        return roots
    if series == "D":
        if rank < 3:
            raise ValueError("D requires rank >= 3")
        roots = [vsub(e(i, rank), e(i + 1, rank)) for i in range(rank - 1)]
        roots.append(vadd(e(rank - 2, rank), e(rank - 1, rank)))
        return roots
    if series == "G":
        # rank-2 system realised in the sum-zero plane of Q^3
        return [vec(1, -1, 0), vec(-2, 1, 1)]
    if series == "F":
        return [
            vsub(e(1, 4), e(2, 4)),
            vsub(e(2, 4), e(3, 4)),
            e(3, 4),
            vscale(Fraction(1, 2), vec(1, -1, -1, -1)),
        ]
    if series == "E":
        a1 = vec(
            Fraction(1, 2),
            *([Fraction(-1, 2)] * 6),
            Fraction(1, 2),
        )
        roots8 = [
            a1,
            vadd(e(0, 8), e(1, 8)),
            vsub(e(1, 8), e(0, 8)),
            vsub(e(2, 8), e(1, 8)),
            vsub(e(3, 8), e(2, 8)),
            vsub(e(4, 8), e(3, 8)),
            vsub(e(5, 8), e(4, 8)),
            vsub(e(6, 8), e(5, 8)),
        ]
        return roots8[:rank]
    raise ValueError("unknown series %r" % series)


def _coroot_of(root: Vector) -> Vector:
    return vscale(2 / vdot(root, root), root)


def _weyl_order_irreducible(series: str, rank: int) -> int:
    if series == "A" or rank == 1:
        return math.factorial(rank + 1)
    if series in ("B", "C"):
        return 2**rank * math.factorial(rank)
    if series == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    if series == "G":
        return 12
    if series == "F":
        return 1152
    return {6: 51840, 7: 2903040, 8: 696729600}[rank]


# ---------------------------------------------------------------------------
# Weyl elements


@dataclass(frozen=True)
class WeylElement:
    """A finite Weyl element: matrix acting on coweight-side vectors, reduced word."""

    matrix: tuple[Vector, ...]
    word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def apply(self, v: Vector) -> Vector:
        return tuple(vdot(row, v) for row in self.matrix)

    def sign(self) -> int:
        return -1 if self.length % 2 else 1


class RootSystem:
    """An immutable (possibly reducible) reduced crystallographic root system.

    Roots live on the weight side, coroots on the coweight side of the same
    rational ambient space; ``pairing`` is the dot product.  Values are never
    mutated after construction, so instances are safe to share across threads.
    """

    def __init__(self, type_label: str):
        parts = [p for p in re.split(r"[xX]", type_label.strip()) if p]
        if not parts:
            raise ValueError("empty type label")
        comps = []
        for part in parts:
            m = re.fullmatch(r"([A-G])_?(\d+)", part.strip())
            if not m:
                raise ValueError("bad type label %r" % part)
            series, rank = m.group(1), int(m.group(2))
            if rank < 1:
                raise ValueError("rank must be >= 1 in %r" % part)
            comps.append((series, rank))
        self.type_label = "x".join("%s%d" % c for c in comps)
        self.components = tuple(comps)

        blocks = [_simple_roots_ambient(s, r) for s, r in comps]
        dims = [len(b[0]) for b in blocks]
        total = sum(dims)
        simple_roots: list[Vector] = []
        spans = []
        pos = 0
        for block, d in zip(blocks, dims):
            for r in block:
                simple_roots.append(vzero(pos) + r + vzero(total - pos - d))
            spans.append((pos, d))
            pos += d
        self.ambient_dim = total
        self.rank = len(simple_roots)
        self.block_spans = tuple(spans)
        self.simple_roots = tuple(simple_roots)
        self.simple_coroots = tuple(_coroot_of(r) for r in simple_roots)

        self._close_roots()
        self.rho = vscale(Fraction(1, 2), _vsum(self.positive_roots, total))
        self.rho_check = vscale(Fraction(1, 2), _vsum(self.positive_coroots, total))
        self._fundamental_coweights = self._solve_fundamental(side="coweight")
        self._fundamental_weights = self._solve_fundamental(side="weight")
        self._weyl_cache: Optional[tuple[WeylElement, ...]] = None
        self._theta_cache = None

    # -- construction internals ------------------------------------------------

    def _close_roots(self):
        """Generate all (root, coroot) pairs by reflection closure of the simples."""
        pairs = set(zip(self.simple_roots, self.simple_coroots))
        frontier = list(pairs)
        while frontier:
            new = []
            for root, coroot in frontier:
                for a, av in zip(self.simple_roots, self.simple_coroots):
                    r2 = vsub(root, vscale(vdot(root, av), a))
                    c2 = vsub(coroot, vscale(vdot(a, coroot), av))
                    if (r2, c2) not in pairs:
                        pairs.add((r2, c2))
                        new.append((r2, c2))
            frontier = new
        positives = []
        for root, coroot in pairs:
            coeffs = solve_rational(self.simple_roots, root)
            if coeffs is None:
                raise AssertionError("root outside simple-root span")
            if all(c >= 0 for c in coeffs):
                positives.append((root, coroot, coeffs))
        positives.sort(key=lambda t: (sum(t[2]), t[0]))
        self.positive_roots = tuple(p[0] for p in positives)
        self.positive_coroots = tuple(p[1] for p in positives)
        self._positive_root_coeffs = tuple(p[2] for p in positives)
        if 2 * len(positives) != len(pairs):
            raise AssertionError("positive roots do not account for half the roots")

    def _solve_fundamental(self, side: str):
        C = [
            [vdot(self.simple_roots[i], self.simple_coroots[j]) for j in range(self.rank)]
            for i in range(self.rank)
        ]
        if side == "coweight":
            # omega_i^vee = sum_j (C^{-1})[i][j] alpha_j^vee solves <alpha_i, w_j> = delta
            inv = _invert_rational(C)
            basis = self.simple_coroots
        else:
            inv = _invert_rational([list(col) for col in zip(*C)])
            basis = self.simple_roots
        out = []
        for i in range(self.rank):
            w = vzero(self.ambient_dim)
            for j in range(self.rank):
                w = vadd(w, vscale(inv[j][i], basis[j]))
            out.append(w)
        return tuple(out)

    # -- basic data -------------------------------------------------------------

    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    def fundamental_coweight(self, i: int) -> Vector:
        """Coweight dual to the i-th simple root (0-based)."""
        return self._fundamental_coweights[i]

    def fundamental_weight(self, i: int) -> Vector:
        return self._fundamental_weights[i]

    def highest_roots(self):
        """Per irreducible component: (theta, integer simple-root coefficients).

        Coefficients are indexed over the full simple-root list of this
        system; entries off the component are zero.
        """
        if self._theta_cache is None:
            out = []
            for ci in range(len(self.components)):
                best = None
                for root, coeffs in zip(self.positive_roots, self._positive_root_coeffs):
                    if self._in_component(coeffs, ci) and (
                        best is None or sum(coeffs) > sum(best[1])
                    ):
                        best = (root, coeffs)
                theta, coeffs = best
                if any(c.denominator != 1 for c in coeffs):
                    raise AssertionError("non-integral highest-root coefficients")
                out.append((theta, tuple(int(c) for c in coeffs)))
            self._theta_cache = tuple(out)
        return self._theta_cache

    def _in_component(self, coeffs, ci: int) -> bool:
        lo = sum(r for _, r in self.components[:ci])
        hi = lo + self.components[ci][1]
        inside = any(c != 0 for c in coeffs[lo:hi])
        outside = any(c != 0 for k, c in enumerate(coeffs) if not lo <= k < hi)
        return inside and not outside

    @property
    def theta(self) -> Vector:
        if not self.is_irreducible():
            raise ValueError("theta is defined per irreducible component")
        return self.highest_roots()[0][0]

    @property
    def theta_coefficients(self) -> tuple[int, ...]:
        if not self.is_irreducible():
            raise ValueError("theta is defined per irreducible component")
        return self.highest_roots()[0][1]

    def weyl_order(self) -> int:
        order = 1
        for series, rank in self.components:
            order *= _weyl_order_irreducible(series, rank)
        return order

    # -- reflections and orbits ---------------------------------------------

    def reflect_coweight(self, i: int, v: Vector) -> Vector:
        return vsub(v, vscale(vdot(self.simple_roots[i], v), self.simple_coroots[i]))

    def reflect_weight(self, i: int, chi: Vector) -> Vector:
        return vsub(chi, vscale(vdot(chi, self.simple_coroots[i]), self.simple_roots[i]))

    def is_dominant(self, v: Vector, side: str = "coweight") -> bool:
        if side == "coweight":
            return all(vdot(a, v) >= 0 for a in self.simple_roots)
        if side == "weight":
            return all(vdot(v, av) >= 0 for av in self.simple_coroots)
        raise ValueError("side must be 'weight' or 'coweight'")

    def to_dominant(self, v: Vector, side: str = "coweight") -> tuple[Vector, tuple[int, ...]]:
        """Dominant orbit representative plus the word moving v onto it.

        The word (i_1, ..., i_k) satisfies s_{i_k}( ... s_{i_1}(v)) = dominant.
        """
        word: list[int] = []
        cur = v
        reflect = self.reflect_coweight if side == "coweight" else self.reflect_weight
        if side == "coweight":
            negative_at = lambda i, x: vdot(self.simple_roots[i], x) < 0
        else:
            negative_at = lambda i, x: vdot(x, self.simple_coroots[i]) < 0
        while True:
            for i in range(self.rank):
                if negative_at(i, cur):
                    cur = reflect(i, cur)
                    word.append(i)
                    break
            else:
                return cur, tuple(word)

    def weyl_orbit(self, v: Vector, side: str = "coweight") -> set[Vector]:
        reflect = self.reflect_coweight if side == "coweight" else self.reflect_weight
        seen = {v}
        frontier = [v]
        while frontier:
            new = []
            for x in frontier:
                for i in range(self.rank):
                    y = reflect(i, x)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        return seen

    def contragredient(self, lam: Vector, side: str = "coweight") -> Vector:
        """-w_0(lam): the dominant representative of -lam."""
        dom, _ = self.to_dominant(vneg(lam), side)
        return dom

    # -- full Weyl enumeration ------------------------------------------------

    def weyl_elements(self) -> tuple[WeylElement, ...]:
        """All Weyl elements (matrices on the coweight side) with reduced words."""
        if self._weyl_cache is not None:
            return self._weyl_cache
        cap = weyl_enum_cap()
        if self.weyl_order() > cap:
            raise WeylCapExceeded(
                "Weyl group of %s has order %d > cap %d"
                % (self.type_label, self.weyl_order(), cap)
            )
        n = self.ambient_dim
        gens = [self._reflection_matrix(i) for i in range(self.rank)]
        elements = {_identity_matrix(n): ()}
        frontier = [_identity_matrix(n)]
        while frontier:
            new = []
            for mat in frontier:
                word = elements[mat]
                for i, g in enumerate(gens):
                    prod = _matmul(g, mat)
                    if prod not in elements:
                        elements[prod] = (i,) + word  # s_i applied last
                        new.append(prod)
            frontier = new
        if len(elements) != self.weyl_order():
            raise AssertionError("Weyl enumeration does not match the order formula")
        result = tuple(
            WeylElement(matrix=m, word=w)
            for m, w in sorted(elements.items(), key=lambda kv: (len(kv[1]), kv[1]))
        )
        self._weyl_cache = result
        return result

    def _reflection_matrix(self, i: int):
        n = self.ambient_dim
        cols = [
            self.reflect_coweight(i, tuple(Fraction(1 if k == j else 0) for k in range(n)))
            for j in range(n)
        ]
        return tuple(tuple(row) for row in zip(*cols))

    def longest_element(self) -> WeylElement:
        return max(self.weyl_elements(), key=lambda w: w.length)

    def weyl_poincare(self) -> dict[int, int]:
        """Length generating function of W as {length: count}."""
        poincare: dict[int, int] = {}
        for w in self.weyl_elements():
            poincare[w.length] = poincare.get(w.length, 0) + 1
        return poincare

    def stabilizer_poincare(self, v: Vector) -> dict[int, int]:
        """Length generating function of the stabilizer W_v of a dominant coweight.

        For dominant v this is the parabolic subgroup generated by the simple
        reflections fixing v, and parabolic length agrees with ambient length.
        """
        if not self.is_dominant(v):
            raise ValueError("stabilizer Poincare series needs a dominant vector")
        fixed = [i for i in range(self.rank) if vdot(self.simple_roots[i], v) == 0]
        gens = [self._reflection_matrix(i) for i in fixed]
        n = self.ambient_dim
        lengths = {_identity_matrix(n): 0}
        frontier = [_identity_matrix(n)]
        while frontier:
            new = []
            for mat in frontier:
                for g in gens:
                    prod = _matmul(g, mat)
                    if prod not in lengths:
                        lengths[prod] = lengths[mat] + 1
                        new.append(prod)
            frontier = new
        poincare: dict[int, int] = {}
        for length in lengths.values():
            poincare[length] = poincare.get(length, 0) + 1
        return poincare

    # -- dominance order ------------------------------------------------------

    def dominance_leq(self, mu: Vector, lam: Vector, side: str = "coweight") -> bool:
        """mu <= lam iff lam - mu is a nonnegative-integer sum of simple (co)roots."""
        for name, v in (("mu", mu), ("lam", lam)):
            if not self.is_dominant(v, side):
                raise ValueError("%s is not dominant" % name)
        basis = self.simple_coroots if side == "coweight" else self.simple_roots
        coeffs = solve_rational(basis, vsub(lam, mu))
        if coeffs is None:
            return False
        return all(c >= 0 and c.denominator == 1 for c in coeffs)

    def coroot_coefficients(self, v: Vector) -> Optional[Vector]:
        """Expansion of v over the simple coroots, or None if off the span."""
        return solve_rational(self.simple_coroots, v)

    def root_coefficients(self, v: Vector) -> Optional[Vector]:
        return solve_rational(self.simple_roots, v)

    # -- duality ----------------------------------------------------------------

    def langlands_dual(self) -> "RootSystem":
        """Root-datum swap: roots and coroots exchange places (B <-> C)."""
        swapped = []
        for series, rank in self.components:
            if series == "B" and rank >= 2:
                swapped.append(("C", rank))
            elif series == "C" and rank >= 2:
                swapped.append(("B", rank))
            else:
                swapped.append((series, rank))
        return RootSystem("x".join("%s%d" % c for c in swapped))


def _vsum(vectors: Iterable[Vector], dim: int) -> Vector:
    total = vzero(dim)
    for v in vectors:
        total = vadd(total, v)
    return total


def build_root_system(type_label: str) -> RootSystem:
    """Construct a root system from a label like "B2", "G2", "A3" or "B2xA1"."""
    return RootSystem(type_label)


# ---------------------------------------------------------------------------
# lattices


class LatticeSpec:
    """A coweight-side lattice L with Q(R^vee) <= L <= P(R^vee).

    For GL-style models the basis may include central directions; the
    sandwich condition is enforced through integral pairing with all roots
    plus containment of the simple coroots.
    """

    def __init__(self, system: RootSystem, basis: Sequence[Vector], name: str = ""):
        self.system = system
        self.basis = tuple(tuple(Fraction(c) for c in b) for b in basis)
        self.name = name
        for b in self.basis:
            for a in system.positive_roots:
                if vdot(a, b).denominator != 1:
                    raise ValueError(
                        "lattice basis vector %s pairs non-integrally with a root" % (b,)
                    )
        for av in system.simple_coroots:
            if not self.contains(av):
                raise ValueError("lattice does not contain the simple coroot %s" % (av,))

    def contains(self, v: Vector) -> bool:
        try:
            coeffs = solve_rational(self.basis, tuple(Fraction(c) for c in v))
        except ValueError:
            raise AssertionError("lattice basis must be independent")
        return coeffs is not None and all(c.denominator == 1 for c in coeffs)

    def __repr__(self):
        return "LatticeSpec(%s, %s)" % (self.system.type_label, self.name or self.basis)


def coroot_lattice(system: RootSystem) -> LatticeSpec:
    return LatticeSpec(system, system.simple_coroots, name="Q(Rvee)")


def coweight_lattice(system: RootSystem) -> LatticeSpec:
    """P(R^vee) inside the span of the coroots."""
    return LatticeSpec(
        system,
        [system.fundamental_coweight(i) for i in range(system.rank)],
        name="P(Rvee)",
    )


def in_lattice(v: Vector, L: LatticeSpec) -> bool:
    return L.contains(v)


# ---------------------------------------------------------------------------
# affine Weyl reduction into the fundamental alcove


@dataclass(frozen=True)
class AffineMap:
    """x -> M x + t with M orthogonal rational and t a translation."""

    matrix: tuple[Vector, ...]
    translation: Vector

    def apply(self, v: Vector) -> Vector:
        return vadd(tuple(vdot(row, v) for row in self.matrix), self.translation)

    def compose_after(self, other: "AffineMap") -> "AffineMap":
        """self o other."""
        M = _matmul(self.matrix, other.matrix)
        t = vadd(
            tuple(vdot(row, other.translation) for row in self.matrix), self.translation
        )
        return AffineMap(tuple(tuple(r) for r in M), t)


def identity_map(dim: int) -> AffineMap:
    return AffineMap(_identity_matrix(dim), vzero(dim))


def translation_map(t: Vector) -> AffineMap:
    return AffineMap(_identity_matrix(len(t)), tuple(Fraction(c) for c in t))


def _affine_reflection(dim: int, root: Vector, coroot: Vector, level) -> AffineMap:
    cols = []
    for j in range(dim):
        e = tuple(Fraction(1 if k == j else 0) for k in range(dim))
        cols.append(vsub(e, vscale(root[j], coroot)))
    M = tuple(tuple(row) for row in zip(*cols))
    return AffineMap(M, vscale(Fraction(level), coroot))


def alcove_reduce(system: RootSystem, p: Vector) -> tuple[Vector, AffineMap]:
    """Map p into the closed fundamental alcove of the affine Weyl group.

    The alcove is { x : alpha_j(x) >= 0 for simple alpha_j, theta(x) <= 1 }.
    Each step reflects through a violated wall, which strictly decreases the
    distance to any interior point of the alcove, so the loop terminates.
    Returns the reduced point and the affine-Weyl map achieving it.
    """
    if not system.is_irreducible():
        raise ValueError("alcove reduction needs an irreducible system")
    if len(p) != system.ambient_dim:
        raise ValueError("point dimension mismatch")
    theta = system.theta
    theta_check = _coroot_of(theta)
    amap = identity_map(system.ambient_dim)
    cur = tuple(Fraction(c) for c in p)
    guard = 0
    while True:
        guard += 1
        if guard > 100000:
            raise AssertionError("alcove reduction failed to terminate")
        for i in range(system.rank):
            if vdot(system.simple_roots[i], cur) < 0:
                ref = _affine_reflection(
                    system.ambient_dim, system.simple_roots[i], system.simple_coroots[i], 0
                )
                cur = ref.apply(cur)
                amap = ref.compose_after(amap)
                break
        else:
            if vdot(theta, cur) > 1:
                ref = _affine_reflection(system.ambient_dim, theta, theta_check, 1)
                cur = ref.apply(cur)
                amap = ref.compose_after(amap)
            else:
                return cur, amap
