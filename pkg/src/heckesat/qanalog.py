"""Laurent polynomials in v = q^(1/2) and the Satake change-of-basis layer.

The change of basis between { S(c_lambda) } and the characters of the dual
group is unitriangular with polynomial entries.  The b-polynomials are
computed from Lusztig's q-analog of weight multiplicity in the dual root
system:

    b_lambda(mu) = q^{<lambda - mu, rho>} * K_{lambda,mu}(q^{-1}),
    K_{lambda,mu}(q) = sum_w (-1)^{l(w)} P_q(w(lambda + rho^vee) - (mu + rho^vee)),

where P_q is the q-Kostant partition function over the positive coroots and
rho (rho^vee) is the half-sum of positive roots (coroots).  The a-polynomials
are the entries of the inverse unitriangular matrix.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from .rootdata import (
    RootSystem,
    Vector,
    pairing,
    solve_rational,
    vadd,
    vdot,
    vsub,
    vzero,
)


class LaurentPoly:
    """Laurent polynomial in v = q^(1/2) with integer coefficients.

    Stored sparsely as {v-exponent: coefficient} in canonical form (no zero
    coefficients).  Degrees "in q" are half the v-degree, matching the
    convention deg(f) = ord(f)/2.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[dict[int, int]] = None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c != 0}

    # constructors ---------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    @staticmethod
    def const(c: int) -> "LaurentPoly":
        return LaurentPoly({0: int(c)})

    @staticmethod
    def q_power(k) -> "LaurentPoly":
        """q^k as a Laurent polynomial; k may be a half-integer."""
        e = Fraction(k) * 2
        if e.denominator != 1:
            raise ValueError("q-exponent %s is not a half-integer" % (k,))
        return LaurentPoly({int(e): 1})

    @staticmethod
    def from_q_coeffs(coeffs: dict[int, int]) -> "LaurentPoly":
        return LaurentPoly({2 * e: c for e, c in coeffs.items()})

    # ring operations ------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) - c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    def scale(self, c: int) -> "LaurentPoly":
        return LaurentPoly({e: c * x for e, x in self.coeffs.items()})

    def shift_q(self, k) -> "LaurentPoly":
        """Multiply by q^k (k may be half-integral)."""
        e = Fraction(k) * 2
        if e.denominator != 1:
            raise ValueError("q-exponent %s is not a half-integer" % (k,))
        s = int(e)
        return LaurentPoly({e0 + s: c for e0, c in self.coeffs.items()})

    def substitute_q_inverse(self) -> "LaurentPoly":
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    # queries ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_q_polynomial(self) -> bool:
        """True iff all exponents are even and nonnegative (a polynomial in q)."""
        return all(e >= 0 and e % 2 == 0 for e in self.coeffs)

    def q_degree(self) -> Fraction:
        """deg in q = (max v-exponent)/2; raises on the zero polynomial."""
        if not self.coeffs:
            raise ValueError("the zero polynomial has no degree")
        return Fraction(max(self.coeffs), 2)

    def leading_q_coefficient(self) -> int:
        if not self.coeffs:
            return 0
        return self.coeffs[max(self.coeffs)]

    def q_coefficient(self, k) -> int:
        e = Fraction(k) * 2
        if e.denominator != 1:
            return 0
        return self.coeffs.get(int(e), 0)

    def eval_q(self, q) -> Fraction:
        """Evaluate at a rational value of q (exponents must be integral)."""
        q = Fraction(q)
        total = Fraction(0)
        for e, c in self.coeffs.items():
            if e % 2:
                raise ValueError("half-integral power of q in evaluation")
            total += c * q ** (e // 2)
        return total

    def q_string(self) -> str:
        """Human-readable string, lowest degree first; in q when possible."""
        if not self.coeffs:
            return "0"
        in_q = all(e % 2 == 0 for e in self.coeffs)
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                term = str(abs(c))
            else:
                if in_q:
                    expo = e // 2
                    base = "q" if expo == 1 else "q^%d" % expo
                else:
                    base = "q^(%s)" % Fraction(e, 2)
                term = base if abs(c) == 1 else "%d*%s" % (abs(c), base)
            parts.append(("-" if c < 0 else "+", term))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            out += sign + term
        return out

    def __repr__(self):
        return "LaurentPoly(%s)" % self.q_string()

    def serialize(self) -> dict[str, int]:
        """Sparse JSON form over v-exponents."""
        return {str(e): c for e, c in sorted(self.coeffs.items())}

    @staticmethod
    def deserialize(data: dict) -> "LaurentPoly":
        return LaurentPoly({int(e): int(c) for e, c in data.items()})

    def divide_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises if the remainder is nonzero."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.coeffs)
        out: dict[int, int] = {}
        d_e = max(other.coeffs)
        d_c = other.coeffs[d_e]
        while rem:
            e = max(rem)
            c = rem[e]
            if c % d_c != 0:
                raise ValueError("non-exact Laurent division")
            f_e, f_c = e - d_e, c // d_c
            out[f_e] = out.get(f_e, 0) + f_c
            for oe, oc in other.coeffs.items():
                k = oe + f_e
                nc = rem.get(k, 0) - oc * f_c
                if nc:
                    rem[k] = nc
                else:
                    rem.pop(k, None)
        return LaurentPoly(out)


def poincare_polynomial(lengths: dict[int, int]) -> LaurentPoly:
    """Length generating function as a polynomial in t = v (exponent 1 per length)."""
    return LaurentPoly({l: n for l, n in lengths.items()})


# ---------------------------------------------------------------------------
# q-Kostant partition function over the positive coroots


class QKostant:
    """Memoized q-analog of the Kostant partition function on the coroot cone.

    P_q(v) = sum over decompositions v = sum n_b b (b positive coroot,
    n_b >= 0) of q^(sum n_b).  Evaluating at q = 1 recovers the ordinary
    partition count.  Pure apart from an idempotent memo, so safe to share.

    Internally works in simple-coroot coefficient space (integer tuples).
    """

    def __init__(self, system: RootSystem):
        self.system = system
        coroots = []
        for cv in system.positive_coroots:
            coeffs = solve_rational(system.simple_coroots, cv)
            coroots.append(tuple(int(c) for c in coeffs))
        # decreasing height prunes the recursion quickly
        coroots.sort(key=lambda c: -sum(c))
        self.coroot_coeffs = coroots
        self._memo: dict[tuple[tuple[int, ...], int], LaurentPoly] = {}

    def __call__(self, v: Vector) -> LaurentPoly:
        coeffs = solve_rational(self.system.simple_coroots, v)
        if coeffs is None or any(c.denominator != 1 or c < 0 for c in coeffs):
            return LaurentPoly.zero()
        return self._count(tuple(int(c) for c in coeffs), 0)

    def _count(self, v: tuple[int, ...], i: int) -> LaurentPoly:
        if not any(v):
            return LaurentPoly.one()
        if i == len(self.coroot_coeffs):
            return LaurentPoly.zero()
        key = (v, i)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        total = LaurentPoly.zero()
        step = self.coroot_coeffs[i]
        cur = v
        n = 0
        while all(c >= 0 for c in cur):
            total = total + self._count(cur, i + 1).shift_q(n)
            cur = tuple(a - b for a, b in zip(cur, step))
            n += 1
        self._memo[key] = total
        return total


def lusztig_q_analog(system: RootSystem, qk: QKostant, lam: Vector, mu: Vector) -> LaurentPoly:
    """K_{lam,mu}(q) over the dual root system (positive coroots of ``system``).

    The Weyl sum runs over the finite Weyl group acting on the coweight side;
    rho^vee plays the role of the dual half-sum.
    """
    rc = system.rho_check
    shifted = vadd(lam, rc)
    target_shift = vadd(mu, rc)
    total = LaurentPoly.zero()
    for w in system.weyl_elements():
        arg = vsub(w.apply(shifted), target_shift)
        term = qk(arg)
        if not term.is_zero():
            total = total + (term if w.sign() > 0 else -term)
    return total


class ChangeOfBasis:
    """Lazy unitriangular change of basis between Satake images and characters.

    ``b(lam, mu)`` and ``a(lam, mu)`` are the spherical change-of-basis
    polynomials for dominant mu < lam; both are genuine polynomials in q of
    degree < <lam - mu, rho>.  Matrices over a finite downward-closed index
    set are assembled by ``matrices``.
    """

    def __init__(self, system: RootSystem):
        self.system = system
        self.qkostant = QKostant(system)
        self._b_memo: dict[tuple[Vector, Vector], LaurentPoly] = {}
        self._a_memo: dict[tuple[Vector, Vector], LaurentPoly] = {}
        self._ideal_memo: dict[Vector, tuple[Vector, ...]] = {}

    # -- dominance ideals -----------------------------------------------------

    def dominant_ideal(self, lam: Vector) -> tuple[Vector, ...]:
        """All dominant mu <= lam, sorted by decreasing height of lam - mu."""
        hit = self._ideal_memo.get(lam)
        if hit is not None:
            return hit
        sys = self.system
        if not sys.is_dominant(lam):
            raise ValueError("dominant_ideal needs a dominant vector")
        lowest, _ = sys.to_dominant(tuple(-c for c in lam))
        span = sys.coroot_coefficients(vadd(lam, lowest))
        if span is None or any(c.denominator != 1 or c < 0 for c in span):
            raise AssertionError("lam - w0(lam) must be a nonnegative coroot sum")
        bounds = [int(c) for c in span]
        found: list[tuple[Fraction, Vector]] = []

        def rec(i: int, current: Vector):
            if i == len(bounds):
                if sys.is_dominant(current):
                    ht = sum(sys.coroot_coefficients(vsub(lam, current)))
                    found.append((ht, current))
                return
            step = sys.simple_coroots[i]
            cur = current
            for n in range(bounds[i] + 1):
                rec(i + 1, cur)
                cur = vsub(cur, step)

        rec(0, lam)
        found.sort(key=lambda t: (t[0], t[1]))
        out = tuple(v for _, v in found)
        self._ideal_memo[lam] = out
        return out

    # -- polynomials ------------------------------------------------------------

    def b(self, lam: Vector, mu: Vector) -> LaurentPoly:
        """Coefficient of S(c_mu) in q^{<lam,rho>} ch V_lam."""
        if lam == mu:
            return LaurentPoly.one()
        key = (lam, mu)
        hit = self._b_memo.get(key)
        if hit is not None:
            return hit
        sys = self.system
        if not sys.dominance_leq(mu, lam):
            raise ValueError("b(lam, mu) needs mu <= lam in dominance")
        gap = pairing(sys.rho, vsub(lam, mu))
        if gap.denominator != 1:
            raise AssertionError("<lam - mu, rho> must be an integer")
        kq = lusztig_q_analog(sys, self.qkostant, lam, mu)
        poly = kq.substitute_q_inverse().shift_q(gap)
        if not poly.is_q_polynomial():
            raise AssertionError("b_lam(mu) failed to be a polynomial in q")
        if not poly.is_zero() and not poly.q_degree() < gap:
            raise AssertionError("b_lam(mu) violates the degree bound")
        self._b_memo[key] = poly
        return poly

    def a(self, lam: Vector, mu: Vector) -> LaurentPoly:
        """Coefficient of q^{<mu,rho>} ch V_mu in S(c_lambda) (inverse entries).

        Computed by the unitriangular inversion recurrence
        a(lam, mu) = -b(lam, mu) - sum_{mu < tau < lam} b(lam, tau) a(tau, mu).
        """
        if lam == mu:
            return LaurentPoly.one()
        key = (lam, mu)
        hit = self._a_memo.get(key)
        if hit is not None:
            return hit
        sys = self.system
        if not sys.dominance_leq(mu, lam):
            raise ValueError("a(lam, mu) needs mu <= lam in dominance")
        total = -self.b(lam, mu)
        for tau in self.dominant_ideal(lam):
            if tau == lam or tau == mu:
                continue
            if not sys.dominance_leq(mu, tau):
                continue
            total = total - self.b(lam, tau) * self.a(tau, mu)
        gap = pairing(sys.rho, vsub(lam, mu))
        if not total.is_q_polynomial():
            raise AssertionError("a_lam(mu) failed to be a polynomial in q")
        if not total.is_zero() and not total.q_degree() < gap:
            raise AssertionError("a_lam(mu) violates the degree bound")
        self._a_memo[key] = total
        return total

    def matrices(self, index_set: Iterable[Vector]):
        """Explicit (A, B) matrices over a downward-closed dominant index set.

        Entries are A[i][j] = a(index[i], index[j]) and similarly for B;
        verifies A*B = identity.  The index set must be downward closed under
        dominance.
        """
        idx = list(index_set)
        sys = self.system
        for lam in idx:
            for mu in self.dominant_ideal(lam):
                if mu not in idx:
                    raise ValueError("index set is not downward closed (missing %s)" % (mu,))
        n = len(idx)
        comparable = [
            [
                i == j or sys.dominance_leq(idx[j], idx[i])
                for j in range(n)
            ]
            for i in range(n)
        ]
        A = [
            [self.a(idx[i], idx[j]) if comparable[i][j] else LaurentPoly.zero() for j in range(n)]
            for i in range(n)
        ]
        B = [
            [self.b(idx[i], idx[j]) if comparable[i][j] else LaurentPoly.zero() for j in range(n)]
            for i in range(n)
        ]
        for i in range(n):
            for j in range(n):
                total = LaurentPoly.zero()
                for k in range(n):
                    total = total + A[i][k] * B[k][j]
                expect = LaurentPoly.one() if i == j else LaurentPoly.zero()
                if total != expect:
                    raise AssertionError("A*B is not the identity")
        return A, B
