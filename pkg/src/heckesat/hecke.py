"""Spherical Hecke ring via the Satake change of basis.

A ``HeckeContext`` fixes a split group: a root system R (the Bruhat-Tits
side) and a cocharacter lattice L between Q(R^vee) and P(R^vee).  Basis
elements c_lambda are indexed by dominant coweights in L.  Products are
computed by expanding Satake images in the phi-basis
phi_mu = q^{<mu,rho>} ch V_mu, multiplying in the representation ring of the
dual group, and converting back; all structure constants are asserted to be
genuine polynomials in q.

The rank-one oracle at the bottom of the module counts spheres and triangles
in the (q+1)-regular tree by direct enumeration and never touches the Hecke
machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .groups import GroupPreset, resolve_preset
from .qanalog import ChangeOfBasis, LaurentPoly
from .repring import RepRing
from .rootdata import (
    LatticeSpec,
    RootSystem,
    Vector,
    pairing,
    vadd,
    vsub,
    vzero,
)

HeckeElem = dict[Vector, LaurentPoly]


class StructureConstantError(AssertionError):
    """A structure constant failed to be a polynomial in q."""


@dataclass(frozen=True)
class SatakeImage:
    """An element of R(G_dual) x Z[q^(1/2), q^(-1/2)] with an explicit basis tag.

    ``basis`` is "ch" (coefficients of ch V_mu) or "phi" (coefficients of
    phi_mu = q^{<mu,rho>} ch V_mu).
    """

    basis: str
    coeffs: tuple[tuple[Vector, LaurentPoly], ...]

    def as_dict(self) -> dict[Vector, LaurentPoly]:
        return dict(self.coeffs)

    def coefficient(self, mu: Vector) -> LaurentPoly:
        return self.as_dict().get(tuple(Fraction(c) for c in mu), LaurentPoly.zero())


def _freeze(d: dict[Vector, LaurentPoly]) -> tuple[tuple[Vector, LaurentPoly], ...]:
    return tuple(sorted(((k, v) for k, v in d.items() if not v.is_zero())))


class HeckeContext:
    """Hecke-ring computations for a fixed (root system, cocharacter lattice)."""

    def __init__(self, system: RootSystem, lattice: Optional[LatticeSpec] = None):
        self.system = system
        self.lattice = lattice if lattice is not None else _default_lattice(system)
        self.rep = RepRing(system)
        self.basis_change = ChangeOfBasis(system)
        self._pair_memo: dict[tuple[Vector, Vector], dict[Vector, LaurentPoly]] = {}

    @staticmethod
    def for_group(preset) -> "HeckeContext":
        if not isinstance(preset, GroupPreset):
            preset = resolve_preset(preset)
        return HeckeContext(preset.system, preset.lattice)

    # -- input handling ---------------------------------------------------------

    def check_coweight(self, lam) -> Vector:
        lam = tuple(Fraction(c) for c in lam)
        if not self.system.is_dominant(lam):
            raise ValueError("coweight %s is not dominant" % (lam,))
        if not self.lattice.contains(lam):
            raise ValueError("coweight %s is not in the cocharacter lattice" % (lam,))
        return lam

    def rho_pairing(self, lam: Vector) -> Fraction:
        return pairing(self.system.rho, lam)

    # -- Satake expansion ------------------------------------------------------

    def satake_expand(self, lam) -> SatakeImage:
        """S(c_lambda) in the ch-basis: q^{<lam,rho>} ch V_lam + lower terms."""
        lam = self.check_coweight(lam)
        out: dict[Vector, LaurentPoly] = {}
        for mu in self.basis_change.dominant_ideal(lam):
            a = self.basis_change.a(lam, mu)
            if not a.is_zero():
                out[mu] = a.shift_q(self.rho_pairing(mu))
        return SatakeImage("ch", _freeze(out))

    def satake_phi_column(self, lam: Vector) -> dict[Vector, LaurentPoly]:
        """S(c_lambda) in the phi-basis (unitriangular column of a-polynomials)."""
        out: dict[Vector, LaurentPoly] = {}
        for mu in self.basis_change.dominant_ideal(lam):
            a = self.basis_change.a(lam, mu)
            if not a.is_zero():
                out[mu] = a
        return out

    # -- representation-ring products -------------------------------------------

    def multiply_char(self, f: SatakeImage, g: SatakeImage) -> SatakeImage:
        """Product of two ch-basis elements of R(G_dual) with Laurent coefficients."""
        if f.basis != "ch" or g.basis != "ch":
            raise ValueError("multiply_char needs ch-basis inputs")
        out: dict[Vector, LaurentPoly] = {}
        for mu1, c1 in f.coeffs:
            for mu2, c2 in g.coeffs:
                c = c1 * c2
                for nu, n in self.rep.tensor_decompose(mu1, mu2).items():
                    prev = out.get(nu, LaurentPoly.zero())
                    out[nu] = prev + c.scale(n)
        return SatakeImage("ch", _freeze(out))

    # -- Hecke products -----------------------------------------------------------

    def basis_product(self, alpha, beta) -> dict[Vector, LaurentPoly]:
        """Structure constants of c_alpha * c_beta (keys nu, values m_{a,b}(nu))."""
        alpha = self.check_coweight(alpha)
        beta = self.check_coweight(beta)
        key = (alpha, beta) if alpha <= beta else (beta, alpha)
        hit = self._pair_memo.get(key)
        if hit is not None:
            return dict(hit)
        col_a = self.satake_phi_column(alpha)
        col_b = self.satake_phi_column(beta)
        rho = self.system.rho
        phi_acc: dict[Vector, LaurentPoly] = {}
        for mu1, c1 in col_a.items():
            for mu2, c2 in col_b.items():
                c = c1 * c2
                for nu, n in self.rep.tensor_decompose(mu1, mu2).items():
                    gap = pairing(rho, vsub(vadd(mu1, mu2), nu))
                    if gap.denominator != 1 or gap < 0:
                        raise StructureConstantError(
                            "phi-basis product produced a bad q-power"
                        )
                    term = c.scale(n).shift_q(gap)
                    prev = phi_acc.get(nu, LaurentPoly.zero())
                    phi_acc[nu] = prev + term
        result = self._phi_to_hecke(phi_acc)
        self._pair_memo[key] = dict(result)
        return result

    def _phi_to_hecke(self, phi_coeffs: dict[Vector, LaurentPoly]) -> dict[Vector, LaurentPoly]:
        """Rewrite sum C_gamma phi_gamma in the basis { S(c_nu) }."""
        out: dict[Vector, LaurentPoly] = {}
        for gamma, c in phi_coeffs.items():
            if c.is_zero():
                continue
            for nu in self.basis_change.dominant_ideal(gamma):
                b = self.basis_change.b(gamma, nu)
                if b.is_zero():
                    continue
                prev = out.get(nu, LaurentPoly.zero())
                out[nu] = prev + c * b
        out = {nu: c for nu, c in out.items() if not c.is_zero()}
        for nu, c in out.items():
            if not c.is_q_polynomial():
                raise StructureConstantError(
                    "structure constant at %s is not a polynomial in q: %s"
                    % (nu, c.q_string())
                )
            if not self.lattice.contains(nu):
                raise StructureConstantError("support left the cocharacter lattice")
        return out

    def hecke_multiply(
        self, f: dict[Vector, LaurentPoly], g: dict[Vector, LaurentPoly]
    ) -> dict[Vector, LaurentPoly]:
        """Product of two Hecke elements (finitely supported coweight maps)."""
        out: dict[Vector, LaurentPoly] = {}
        for lam, cf in f.items():
            if cf.is_zero():
                continue
            for mu, cg in g.items():
                if cg.is_zero():
                    continue
                c = cf * cg
                for nu, m in self.basis_product(lam, mu).items():
                    prev = out.get(nu, LaurentPoly.zero())
                    out[nu] = prev + c * m
        return {nu: c for nu, c in out.items() if not c.is_zero()}

    def unit(self) -> dict[Vector, LaurentPoly]:
        return {vzero(self.system.ambient_dim): LaurentPoly.one()}

    # -- volumes and triangle constants -----------------------------------------

    def sphere_volume(self, gam) -> LaurentPoly:
        """#S(o, gam) = vol(K gam(pi) K): q^{<gam,2rho>} P_W(1/q)/P_{W_gam}(1/q)."""
        gam = self.check_coweight(gam)
        full = _poincare_in_q_inverse(self.system.weyl_poincare())
        stab = _poincare_in_q_inverse(self.system.stabilizer_poincare(gam))
        ratio = full.divide_exact(stab)
        vol = ratio.shift_q(2 * self.rho_pairing(gam))
        if not vol.is_q_polynomial() or any(c < 0 for c in vol.coeffs.values()):
            raise StructureConstantError("sphere volume is not a positive q-polynomial")
        return vol

    def m_pair(self, alpha, beta, gamma) -> LaurentPoly:
        """m_{alpha,beta}(gamma): the coefficient of c_gamma in c_alpha c_beta."""
        gamma = self.check_coweight(gamma)
        return self.basis_product(alpha, beta).get(gamma, LaurentPoly.zero())

    def m0(self, alpha, beta, gamma, cross_check: bool = False) -> LaurentPoly:
        """m_{alpha,beta,gamma}(0) = vol(K gam(pi) K) m_{alpha,beta}(gamma*).

        With ``cross_check`` the value is recomputed as the c_0-coefficient of
        the full triple product; a mismatch raises.
        """
        alpha = self.check_coweight(alpha)
        beta = self.check_coweight(beta)
        gamma = self.check_coweight(gamma)
        gamma_star = self.system.contragredient(gamma)
        value = self.sphere_volume(gamma) * self.m_pair(alpha, beta, gamma_star)
        if cross_check:
            direct = self.triple_c0(alpha, beta, gamma)
            if direct != value:
                raise StructureConstantError(
                    "m0 routes disagree: %s vs %s" % (value.q_string(), direct.q_string())
                )
        return value

    def triple_c0(self, alpha, beta, gamma) -> LaurentPoly:
        """Coefficient of c_0 in c_alpha c_beta c_gamma (independent route)."""
        prod = self.hecke_multiply(
            {self.check_coweight(alpha): LaurentPoly.one()},
            {self.check_coweight(beta): LaurentPoly.one()},
        )
        total = LaurentPoly.zero()
        gamma = self.check_coweight(gamma)
        origin = vzero(self.system.ambient_dim)
        for nu, c in prod.items():
            m = self.basis_product(nu, gamma).get(origin)
            if m is not None:
                total = total + c * m
        return total

    def q3_solvable(self, alpha, beta, gamma) -> bool:
        """Whether (alpha, beta, gamma) solves the triangle existence problem.

        Solvability does not depend on the residue cardinality, so the
        predicate is simply m0 != 0 as a polynomial.
        """
        return not self.m0(alpha, beta, gamma).is_zero()


def _default_lattice(system: RootSystem) -> LatticeSpec:
    from .rootdata import coweight_lattice

    return coweight_lattice(system)


def _poincare_in_q_inverse(lengths: dict[int, int]) -> LaurentPoly:
    return LaurentPoly({-2 * l: n for l, n in lengths.items()})


# ---------------------------------------------------------------------------
# rank-one oracle: spheres and triangles in the (q+1)-regular tree


def _tree_ball(q: int, radius: int):
    """Adjacency of the ball of given radius in the (q+1)-regular tree.

    Vertices are integers, 0 is the root; returns (parents, depths).
    """
    if q < 2:
        raise ValueError("tree oracle needs q >= 2")
    parents = [-1]
    depths = [0]
    frontier = [0]
    for d in range(radius):
        new = []
        for v in frontier:
            children = q + 1 if v == 0 else q
            for _ in range(children):
                parents.append(v)
                depths.append(d + 1)
                new.append(len(parents) - 1)
        frontier = new
    return parents, depths


def _tree_distance(parents, depths, x: int, y: int) -> int:
    dist = 0
    while x != y:
        if depths[x] < depths[y]:
            x, y = y, x
        x = parents[x]
        dist += 1
    return dist


def tree_sphere_size(q: int, r: int) -> int:
    """#{x : d(o, x) = r} by explicit ball construction."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if r == 0:
        return 1
    parents, depths = _tree_ball(q, r)
    return sum(1 for d in depths if d == r)


def tree_triangle_count(q: int, a: int, b: int, c: int) -> int:
    """Number of pairs (x, y) with d(o,x) = a, d(x,y) = b, d(y,o) = c.

    Direct enumeration over the ball of radius max(a, c); independent of the
    Hecke machinery.
    """
    for s in (a, b, c):
        if s < 0:
            raise ValueError("side lengths must be nonnegative")
    radius = max(a, c)
    parents, depths = _tree_ball(q, radius)
    xs = [v for v in range(len(depths)) if depths[v] == a]
    ys = [v for v in range(len(depths)) if depths[v] == c]
    count = 0
    for x in xs:
        for y in ys:
            if _tree_distance(parents, depths, x, y) == b:
                count += 1
    return count
