import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sosreduce import (
    GramMatrix,
    MonomialBasis,
    Polynomial,
    build_gram_system,
    deactivate,
    evaluate_gram,
    full_basis,
    is_psd,
    parse_polynomial,
)

from conftest import QUARTIC_GRAM
from strategies import rationals


def eq_of(csys, alpha):
    e = csys.equation(alpha)
    return e.entries, e.rhs


class TestBuild:
    def test_quartic_full_basis(self, quartic):
        csys = build_gram_system(quartic, full_basis(2, 2))
        assert len(csys.equations) == 15
        assert eq_of(csys, (0, 4)) == (((5, 5, 1),), 0)
        assert eq_of(csys, (0, 0)) == (((0, 0, 1),), 1)
        assert csys.rhs_support == frozenset(quartic.support)
        assert csys.outside == ()

    def test_constant(self):
        csys = build_gram_system(parse_polynomial("1"), full_basis(1, 0))
        assert [(e.entries, e.rhs) for e in csys.equations] == [(((0, 0, 1),), 1)]

    def test_sparse_newton_basis(self, sparse):
        M = MonomialBasis(2, ((1, 0), (0, 1), (1, 1), (2, 2)))
        csys = build_gram_system(sparse, M)
        assert eq_of(csys, (2, 2)) == (((2, 2, 1),), 0)

    def test_support_outside_sums(self):
        p = parse_polynomial("x1^2 + x1^3*x2", 2)
        csys = build_gram_system(p, full_basis(2, 1))
        assert csys.outside == ((3, 1),)
        assert eq_of(csys, (3, 1)) == ((), 1)

    def test_nvars_mismatch(self, quartic):
        with pytest.raises(ValueError):
            build_gram_system(quartic, full_basis(3, 2))

    @pytest.mark.parametrize("n, d", [(1, 3), (2, 2), (2, 3), (3, 2)])
    def test_pair_count_identity(self, n, d):
        M = full_basis(n, d)
        csys = build_gram_system(Polynomial(n), M)
        assert sum(m for e in csys.equations for _, _, m in e.entries) == len(M) ** 2

    def test_entries_match_product_degree(self, quartic):
        M = full_basis(2, 2)
        for e in build_gram_system(quartic, M).equations:
            for i, j, m in e.entries:
                assert i <= j and m == (1 if i == j else 2)
                assert tuple(x + y for x, y in zip(M[i], M[j])) == e.product_degree


class TestDeactivate:
    def test_quartic_uncovers_next_zero(self, quartic):
        csys = build_gram_system(quartic, full_basis(2, 2))
        before = csys.equation((1, 2)).entries
        after = deactivate(csys, 5)
        assert len(after.equation((1, 2)).entries) < len(before)
        assert eq_of(after, (2, 2)) == (((4, 4, 1),), 0)
        assert after.active == (True,) * 5 + (False,)
        # equations without index 5 are untouched
        assert after.equation((2, 0)) == csys.equation((2, 0))

    def test_only_entry_leaves_empty_equation(self):
        csys = build_gram_system(parse_polynomial("1"), full_basis(1, 0))
        after = deactivate(csys, 0)
        assert eq_of(after, (0,)) == ((), 1)
        assert after.active_basis().entries == ()

    def test_errors(self, quartic):
        csys = build_gram_system(quartic, full_basis(2, 2))
        with pytest.raises(IndexError):
            deactivate(csys, 6)
        with pytest.raises(ValueError):
            deactivate(deactivate(csys, 5), 5)

    def test_value_semantics(self, quartic):
        csys = build_gram_system(quartic, full_basis(2, 2))
        deactivate(csys, 5)
        assert all(csys.active)


def random_symmetric(rng, n):
    vals = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            vals[i][j] = vals[j][i] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return GramMatrix(vals)


def random_basis(rng, n, size):
    pool = list(full_basis(n, 3))
    return MonomialBasis.from_monomials(n, rng.sample(pool, min(size, len(pool))))


class TestEvaluate:
    def test_known_witness(self, quartic, quartic_witness):
        M, Q = quartic_witness
        assert evaluate_gram(M, Q) == quartic

    def test_zero_matrix(self):
        assert evaluate_gram(full_basis(2, 2), GramMatrix.zeros(6)).is_zero()

    def test_identity(self):
        Q = GramMatrix(((1, 0), (0, 1)))
        assert evaluate_gram(full_basis(1, 1), Q) == parse_polynomial("1 + x1^2")

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            evaluate_gram(full_basis(1, 1), GramMatrix.zeros(3))

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            GramMatrix(((1, 2), (3, 4)))

    def test_coefficients_match_equations(self):
        rng = random.Random(3)
        for _ in range(100):
            n = rng.randint(1, 3)
            M = random_basis(rng, n, rng.randint(1, 6))
            Q = random_symmetric(rng, len(M))
            p = evaluate_gram(M, Q)
            csys = build_gram_system(Polynomial(n), M)
            for e in csys.equations:
                assert p.coefficient(e.product_degree) == sum(
                    (m * Q[i, j] for i, j, m in e.entries), Fraction(0)
                )

    def test_witness_iff_evaluates(self):
        rng = random.Random(5)
        for _ in range(100):
            n = rng.randint(1, 3)
            M = random_basis(rng, n, rng.randint(1, 6))
            Q = random_symmetric(rng, len(M))
            p = evaluate_gram(M, Q)
            assert build_gram_system(p, M).satisfied_by(Q)
            # perturb one entry: the witness must now fail, and so must evaluation
            i, j = rng.randrange(len(M)), rng.randrange(len(M))
            vals = [list(r) for r in Q.values]
            vals[i][j] += 1
            if i != j:
                vals[j][i] += 1
            R = GramMatrix(vals)
            assert build_gram_system(p, M).satisfied_by(R) == (evaluate_gram(M, R) == p)
            assert not build_gram_system(p, M).satisfied_by(R)


class TestPsd:
    def test_known_matrix(self):
        assert is_psd(GramMatrix(QUARTIC_GRAM))

    @pytest.mark.parametrize(
        "rows, expected",
        [
            (((0, 0), (0, 0)), True),
            (((0, 1), (1, 0)), False),
            (((1, 1), (1, 1)), True),
            (((1, 2), (2, 1)), False),
            (((-1,),), False),
            (((0, 0, 0), (0, 1, 0), (0, 0, 0)), True),
            (((0, 0, 1), (0, 1, 0), (1, 0, 0)), False),
        ],
    )
    def test_small(self, rows, expected):
        assert is_psd(rows) is expected

    def test_factor_is_psd(self):
        Q = GramMatrix.from_factor([(1, 2, 0), (0, 1, -1)])
        assert is_psd(Q)

    @given(st.integers(1, 5).flatmap(lambda n: st.lists(rationals, min_size=n * n, max_size=n * n)))
    @settings(max_examples=150)
    def test_agrees_with_eigenvalues(self, flat):
        n = int(round(len(flat) ** 0.5))
        vals = [[flat[i * n + j] for j in range(n)] for i in range(n)]
        sym = [[(vals[i][j] + vals[j][i]) / 2 for j in range(n)] for i in range(n)]
        eig = np.linalg.eigvalsh(np.array(sym, dtype=float))
        # skip numerically ambiguous matrices; exact answer is still checked elsewhere
        if abs(eig.min()) < 1e-9:
            return
        assert is_psd(sym) == (eig.min() > 0)

    @given(st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=1, max_size=4)
    ))
    def test_gram_of_vectors_is_psd(self, vectors):
        assert is_psd(GramMatrix.from_factor(vectors))
