"""Representation ring of the Langlands dual group.

All computations happen on the coweight side of a root system R: dominant
coweights index the irreducible representations of the dual group, whose
roots are the coroots of R.  Weight multiplicities use Freudenthal's
recursion, tensor products use the signed-reflection (Klimyk) rule, and the
type-A Littlewood-Richardson tableau rule serves as an independent oracle.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .rootdata import (
    RootSystem,
    Vector,
    WeylCapExceeded,
    solve_rational,
    vadd,
    vdot,
    vsub,
    vzero,
    weyl_enum_cap,
)


class DualWeightError(ValueError):
    pass


class RepRing:
    """Character computations for the dual group of a fixed root system.

    Instances memoize weight systems and tensor decompositions; the memo
    tables are only ever extended with recomputable values, so concurrent
    readers are safe.
    """

    def __init__(self, system: RootSystem):
        self.system = system
        self._weights_memo: dict[Vector, dict[Vector, int]] = {}
        self._orbit_weights_memo: dict[Vector, dict[Vector, int]] = {}
        self._tensor_memo: dict[tuple[Vector, Vector], dict[Vector, int]] = {}
        self._ideal_memo: dict[Vector, tuple[Vector, ...]] = {}

    # -- dominance ideal (weights of V_lam are its dominant members) --------

    def dominant_ideal(self, lam: Vector) -> tuple[Vector, ...]:
        """Dominant mu <= lam, sorted by increasing height of lam - mu."""
        hit = self._ideal_memo.get(lam)
        if hit is not None:
            return hit
        sys = self.system
        if not sys.is_dominant(lam):
            raise DualWeightError("highest weight must be dominant")
        lowest, _ = sys.to_dominant(tuple(-c for c in lam))
        span = sys.coroot_coefficients(vadd(lam, lowest))
        if span is None or any(c.denominator != 1 or c < 0 for c in span):
            raise AssertionError("lam - w0(lam) must be a nonnegative coroot sum")
        bounds = [int(c) for c in span]
        found = []

        def rec(i: int, current: Vector):
            if i == len(bounds):
                if sys.is_dominant(current):
                    ht = sum(sys.coroot_coefficients(vsub(lam, current)))
                    found.append((ht, current))
                return
            cur = current
            for _ in range(bounds[i] + 1):
                rec(i + 1, cur)
                cur = vsub(cur, sys.simple_coroots[i])

        rec(0, lam)
        found.sort(key=lambda t: (t[0], t[1]))
        out = tuple(v for _, v in found)
        self._ideal_memo[lam] = out
        return out

    # -- Freudenthal multiplicities ------------------------------------------

    def dominant_weights(self, lam: Vector) -> dict[Vector, int]:
        """Multiplicities of the dominant weights of V_lam (Freudenthal)."""
        hit = self._weights_memo.get(lam)
        if hit is not None:
            return hit
        sys = self.system
        ideal = self.dominant_ideal(lam)
        rho_d = sys.rho_check
        top = vadd(lam, rho_d)
        top_norm = vdot(top, top)
        mult: dict[Vector, int] = {lam: 1}
        for mu in ideal[1:]:
            shifted = vadd(mu, rho_d)
            denom = top_norm - vdot(shifted, shifted)
            if denom == 0:
                raise AssertionError("Freudenthal denominator vanished")
            total = Fraction(0)
            for beta in sys.positive_coroots:
                cur = vadd(mu, beta)
                while True:
                    dom, _ = sys.to_dominant(cur)
                    m = mult.get(dom, 0)
                    if m:
                        total += 2 * m * vdot(cur, beta)
                    # stop once cur leaves the convex hull of the orbit of lam
                    if vdot(cur, cur) > top_norm:
                        break
                    cur = vadd(cur, beta)
            value = total / denom
            if value.denominator != 1 or value < 0:
                raise AssertionError("Freudenthal produced a non-integer multiplicity")
            if value:
                mult[mu] = int(value)
        self._weights_memo[lam] = mult
        return mult

    def weight_multiplicity(self, lam: Vector, mu: Vector) -> int:
        """Multiplicity of the weight mu in V_lam (Weyl-orbit invariant)."""
        sys = self.system
        if not sys.is_dominant(lam):
            raise DualWeightError("highest weight must be dominant")
        self._check_cap()
        dom, _ = sys.to_dominant(tuple(Fraction(c) for c in mu))
        return self.dominant_weights(lam).get(dom, 0)

    def all_weights(self, lam: Vector) -> dict[Vector, int]:
        """Every weight of V_lam with its multiplicity (orbit expansion)."""
        hit = self._orbit_weights_memo.get(lam)
        if hit is not None:
            return hit
        out: dict[Vector, int] = {}
        for mu, m in self.dominant_weights(lam).items():
            for w in self.system.weyl_orbit(mu):
                out[w] = m
        self._orbit_weights_memo[lam] = out
        return out

    def dimension(self, lam: Vector) -> int:
        """Weyl dimension formula for the dual group."""
        sys = self.system
        if not sys.is_dominant(lam):
            raise DualWeightError("highest weight must be dominant")
        num = Fraction(1)
        den = Fraction(1)
        shifted = vadd(lam, sys.rho_check)
        for beta, beta_root in zip(sys.positive_coroots, sys.positive_roots):
            # the coroot of the dual-group root beta is the original root
            num *= vdot(beta_root, shifted)
            den *= vdot(beta_root, sys.rho_check)
        dim = num / den
        if dim.denominator != 1:
            raise AssertionError("Weyl dimension is not an integer")
        return int(dim)

    # -- tensor decomposition -----------------------------------------------

    def tensor_decompose(self, lam: Vector, mu: Vector) -> dict[Vector, int]:
        """Multiplicities of V_nu in V_lam (x) V_mu (signed-reflection rule)."""
        sys = self.system
        for v in (lam, mu):
            if not sys.is_dominant(v):
                raise DualWeightError("tensor factors must be dominant")
        self._check_cap()
        # enumerate weights of the smaller factor
        if self._ideal_size(mu) > self._ideal_size(lam):
            lam, mu = mu, lam
        key = (lam, mu)
        hit = self._tensor_memo.get(key)
        if hit is not None:
            return hit
        rho_d = sys.rho_check
        out: dict[Vector, int] = {}
        for nu, m in self.all_weights(mu).items():
            x = vadd(vadd(lam, nu), rho_d)
            dom, word = sys.to_dominant(x)
            if any(vdot(a, dom) == 0 for a in sys.simple_roots):
                continue
            sign = -1 if len(word) % 2 else 1
            target = vsub(dom, rho_d)
            out[target] = out.get(target, 0) + sign * m
        out = {nu: c for nu, c in out.items() if c}
        if any(c < 0 for c in out.values()):
            raise AssertionError("negative tensor multiplicity")
        self._tensor_memo[key] = out
        return out

    def _ideal_size(self, lam: Vector) -> Fraction:
        return vdot(lam, lam)

    def tensor_multiplicity(self, lam: Vector, mu: Vector, nu: Vector) -> int:
        """Multiplicity of V_nu inside V_lam (x) V_mu."""
        dec = self.tensor_decompose(lam, mu)
        return dec.get(tuple(Fraction(c) for c in nu), 0)

    def invariant_dim_pair(self, lam: Vector, mu: Vector) -> int:
        """dim (V_lam (x) V_mu)^G = 1 iff mu is the contragredient of lam."""
        return 1 if self.system.contragredient(lam) == tuple(Fraction(c) for c in mu) else 0

    def n0(self, alpha: Vector, beta: Vector, gamma: Vector) -> int:
        """dim of the invariants in the triple tensor product.

        Equals the multiplicity of gamma* in V_alpha (x) V_beta, which is
        symmetric in all three arguments.
        """
        sys = self.system
        gamma = tuple(Fraction(c) for c in gamma)
        if not sys.is_dominant(gamma):
            raise DualWeightError("n0 arguments must be dominant")
        return self.tensor_multiplicity(alpha, beta, sys.contragredient(gamma))

    def _check_cap(self):
        if self.system.weyl_order() > weyl_enum_cap():
            raise WeylCapExceeded(
                "representation computations for %s exceed the Weyl cap"
                % self.system.type_label
            )


# ---------------------------------------------------------------------------
# Littlewood-Richardson rule (independent type-A oracle)


def _is_partition(p) -> bool:
    return all(int(x) == x and x >= 0 for x in p) and all(
        p[i] >= p[i + 1] for i in range(len(p) - 1)
    )


def lr_coefficients(alpha, beta, nrows: Optional[int] = None) -> dict[tuple[int, ...], int]:
    """Littlewood-Richardson coefficients c^gamma_{alpha,beta}.

    Counts Littlewood-Richardson sequences: chains of partitions starting at
    alpha where the j-th step adds a horizontal strip of size beta_j, subject
    to the ballot condition.  With m[r][j] boxes of letter j in row r, the
    ballot condition for the reverse reading word is

        sum_{r <= i} m[r][j] >= sum_{r <= i+1} m[r][j+1]   for all i, j,

    with the convention that letter j+1 may not appear in row 1.  Keys are
    zero-padded to ``nrows`` rows.
    """
    alpha = tuple(int(x) for x in alpha)
    beta = tuple(int(x) for x in beta)
    if not (_is_partition(alpha) and _is_partition(beta)):
        raise ValueError("LR inputs must be partitions")
    if nrows is None:
        nrows = max(1, len([x for x in alpha if x]) + len([x for x in beta if x]))
    if len([x for x in alpha if x]) > nrows:
        raise ValueError("alpha has more than nrows parts")
    alpha = tuple((list(alpha) + [0] * nrows)[:nrows])

    out: dict[tuple[int, ...], int] = {}
    # state: (shape, prev_cum) where prev_cum[i] = boxes of the previous
    # letter in rows 0..i; the zeroth letter has prev_cum = all zero except
    # unconstrained, encoded as None
    states: list[tuple[tuple[int, ...], Optional[tuple[int, ...]]]] = [(alpha, None)]
    for j, count in enumerate(beta):
        new_states: list[tuple[tuple[int, ...], Optional[tuple[int, ...]]]] = []
        for shape, prev_cum in states:
            acc: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
            _add_strip(shape, prev_cum, count, nrows, acc)
            new_states.extend(acc)
        states = [(s, c) for s, c in new_states]
    for shape, _ in states:
        out[shape] = out.get(shape, 0) + 1
    return out


def _add_strip(shape, prev_cum, count, nrows, acc):
    """All ways to add a horizontal strip of `count` boxes obeying ballot."""

    additions = [0] * nrows

    def rec(row: int, remaining: int, cum: int):
        if row == nrows:
            if remaining == 0:
                final = tuple(s + a for s, a in zip(shape, additions))
                running = 0
                cums = []
                for a in additions:
                    running += a
                    cums.append(running)
                acc.append((final, tuple(cums)))
            return
        # new boxes in this row occupy columns shape[row]+1..shape[row]+a and
        # must not pass the previous row's old length (horizontal strip)
        hi = remaining
        if row > 0:
            hi = min(hi, shape[row - 1] - shape[row])
        if prev_cum is not None:
            # ballot: this letter's count through row <= previous letter's
            # count through row-1
            hi = min(hi, (prev_cum[row - 1] if row > 0 else 0) - cum)
        for a in range(hi, -1, -1):
            additions[row] = a
            rec(row + 1, remaining - a, cum + a)
        additions[row] = 0

    rec(0, count, 0)
