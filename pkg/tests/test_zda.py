import random
from fractions import Fraction

from sosreduce import (
    GramMatrix,
    build_gram_system,
    evaluate_gram,
    find_forced_zero_diagonals,
    full_basis,
    heuristic_init,
    newton_reduce,
    parse_polynomial,
    zda_reduce,
    zda_reduce_polynomial,
)
from sosreduce.corpus import random_polynomial, random_sos
from sosreduce.zda import ZdaStatus

from conftest import QUARTIC_REDUCED


def gram_from_squares(basis, fs):
    """Q = sum a a^T with a the coefficient vector of f over ``basis``."""
    vecs = [[f.coefficient(a) for a in basis] for f in fs]
    return GramMatrix.from_factor(vecs)


class TestFind:
    def test_quartic_chain(self, quartic):
        csys = build_gram_system(quartic, full_basis(2, 2))
        assert find_forced_zero_diagonals(csys) == [5]
        assert find_forced_zero_diagonals(csys.deactivate(5)) == [4]

    def test_constant(self):
        csys = build_gram_system(parse_polynomial("1"), full_basis(1, 0))
        assert find_forced_zero_diagonals(csys) == []


class TestReduce:
    def test_quartic(self, quartic):
        r = zda_reduce(build_gram_system(quartic, full_basis(2, 2)))
        assert r.status is ZdaStatus.REDUCED
        assert r.final_basis.entries == QUARTIC_REDUCED
        assert r.removed_in(1) == [(0, 2)]
        assert r.removed_in(2) == [(1, 1)]
        assert r.sweeps <= 3

    def test_sparse_from_newton_basis(self, sparse):
        M = newton_reduce(sparse, full_basis(2, 4))
        r = zda_reduce(build_gram_system(sparse, M))
        assert r.final_basis.entries == ((1, 0), (0, 1), (2, 2))
        assert [a for _, a in r.removed] == [(1, 1)]

    def test_sparse_from_full_basis(self, sparse):
        r = zda_reduce(build_gram_system(sparse, full_basis(2, 4)))
        assert r.final_basis.entries == ((1, 0), (0, 1), (2, 2))

    def test_indefinite_product_certificate(self):
        p = parse_polynomial("x1*x2")
        r = zda_reduce(build_gram_system(p, full_basis(2, 1)))
        assert r.status is ZdaStatus.INFEASIBLE
        assert r.certificate.reason == "empty-equation"
        assert r.certificate.product_degree == (1, 1)
        assert r.certificate.rhs == 1
        assert r.final_basis.entries == ()

    def test_negative_diagonal_certificate(self):
        r = zda_reduce(build_gram_system(parse_polynomial("-1"), full_basis(1, 0)))
        assert r.certificate.reason == "negative-diagonal"

    def test_default_basis_is_heuristic(self, quartic):
        r = zda_reduce_polynomial(quartic)
        assert r.initial_basis == heuristic_init(quartic)
        assert r.final_basis.entries == QUARTIC_REDUCED

    def test_final_is_initial_minus_removed(self, quartic):
        r = zda_reduce(build_gram_system(quartic, full_basis(2, 2)))
        left = [a for a in r.initial_basis if a not in {m for _, m in r.removed}]
        assert tuple(left) == r.final_basis.entries


class TestProperties:
    def test_containment(self):
        rng = random.Random(43)
        for _ in range(100):
            n = rng.randint(1, 3)
            deg = rng.choice([2, 4, 6])
            p = random_polynomial(rng, n, deg, rng.randint(3, 10))
            M0 = full_basis(n, deg // 2)
            r = zda_reduce(build_gram_system(p, M0))
            newton = newton_reduce(p, M0)
            assert r.final_basis.issubset(newton)
            assert r.sweeps <= len(M0) + 1
            again = zda_reduce(r.reduced_system)
            assert again.removed == () and again.final_basis == r.final_basis
            assert zda_reduce_polynomial(p).final_basis == r.final_basis

    def test_sos_closure(self):
        rng = random.Random(47)
        for _ in range(60):
            n = rng.randint(1, 3)
            p, fs = random_sos(rng, n, rng.randint(1, 3), rng.randint(1, 3))
            r = zda_reduce(build_gram_system(p, full_basis(n, p.degree // 2)))
            assert r.status is ZdaStatus.REDUCED
            for f in fs:
                assert set(f.support) <= set(r.final_basis)
            Q = gram_from_squares(r.final_basis, fs)
            assert evaluate_gram(r.final_basis, Q) == p
            assert r.reduced_system.active_basis() == r.final_basis

    def test_rational_coefficients(self):
        p = parse_polynomial("1/4*x1^4 + x1^2*x2^2 + 9/4")
        r = zda_reduce_polynomial(p)
        assert r.status is ZdaStatus.REDUCED
        assert (2, 0) in r.final_basis
        assert p.coefficient((0, 0)) == Fraction(9, 4)
