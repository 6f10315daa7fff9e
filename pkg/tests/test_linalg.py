from __future__ import annotations

import random

import pytest

from depthtwo.fields import GF, QQ
from depthtwo.linalg import (LinAlgError, Matrix, Subspace, nullspace,
                             quotient_structure, rref, solve_in_span)


def vec(field, *entries):
    return [field.of(e) for e in entries]


def random_matrix(rng, field, nrows, ncols, span=5):
    return [[field.of(rng.randint(-span, span)) for _ in range(ncols)]
            for _ in range(nrows)]


# -- solve_in_span --------------------------------------------------------

def test_solve_zero_vector_in_any_span():
    assert solve_in_span(vec(QQ, 0, 0), [vec(QQ, 1, 2)], QQ) == vec(QQ, 0)


def test_solve_identity_case():
    assert solve_in_span(vec(QQ, 1, 2), [vec(QQ, 1, 2)], QQ) == vec(QQ, 1)


def test_solve_diagonal_case():
    coeffs = solve_in_span(vec(QQ, 1, 1), [vec(QQ, 1, 0), vec(QQ, 0, 2)], QQ)
    assert coeffs == [QQ.of(1), QQ.parse("1/2")]


def test_solve_absent_when_outside_span():
    assert solve_in_span(vec(QQ, 0, 1), [vec(QQ, 1, 0)], QQ) is None


def test_solve_dimension_mismatch():
    with pytest.raises(LinAlgError):
        solve_in_span(vec(QQ, 1), [vec(QQ, 1, 0)], QQ)


def test_solve_succeeds_iff_rank_unchanged():
    rng = random.Random(7)
    for field in (QQ, GF(5)):
        for _ in range(40):
            gens = random_matrix(rng, field, rng.randint(0, 4), 5)
            target = [field.of(rng.randint(-5, 5)) for _ in range(5)]
            _, p1 = rref(gens, field, 5)
            _, p2 = rref(gens + [target], field, 5)
            coeffs = solve_in_span(target, gens, field)
            if len(p1) == len(p2):
                assert coeffs is not None
                combo = [field.zero] * 5
                for c, g in zip(coeffs, gens):
                    combo = [a + c * b for a, b in zip(combo, g)]
                assert combo == target
            else:
                assert coeffs is None


# -- rref / nullspace ------------------------------------------------------

def test_rref_is_idempotent():
    rng = random.Random(11)
    for field in (QQ, GF(3)):
        for _ in range(30):
            rows = random_matrix(rng, field, 4, 6)
            red, piv = rref(rows, field, 6)
            red2, piv2 = rref(red, field, 6)
            assert red == red2 and piv == piv2


def test_nullspace_vectors_annihilate():
    rng = random.Random(13)
    for field in (QQ, GF(5)):
        for _ in range(30):
            rows = random_matrix(rng, field, 3, 5)
            m = Matrix(field, [r[:] for r in rows])
            basis = nullspace(rows, field, 5)
            _, piv = rref(rows, field, 5)
            assert len(basis) == 5 - len(piv)
            for v in basis:
                assert all(not x for x in m.apply(v))


# -- matrix ops ------------------------------------------------------------

def test_matmul_against_apply():
    rng = random.Random(17)
    a = Matrix(QQ, random_matrix(rng, QQ, 3, 4))
    b = Matrix(QQ, random_matrix(rng, QQ, 4, 2))
    ab = a @ b
    for j in range(2):
        assert ab.column(j) == a.apply(b.column(j))


def test_kron_index_convention():
    a = Matrix(QQ, [[QQ.of(2)]])
    b = Matrix.identity(QQ, 2)
    k = a.kron(b)
    assert k.nrows == 2 and k.data[0][0] == QQ.of(2) and k.data[1][1] == QQ.of(2)


def test_inverse_round_trip():
    rng = random.Random(19)
    for _ in range(10):
        m = Matrix(QQ, random_matrix(rng, QQ, 4, 4))
        if m.rank() < 4:
            continue
        assert m @ m.inverse() == Matrix.identity(QQ, 4)


def test_inverse_singular_raises():
    with pytest.raises(LinAlgError):
        Matrix.zeros(QQ, 2, 2).inverse()


# -- subspaces ---------------------------------------------------------------

def test_subspace_membership_and_equality():
    s = Subspace.span(QQ, 3, [vec(QQ, 1, 0, 1), vec(QQ, 0, 1, 1)])
    assert s.contains(vec(QQ, 1, 1, 2))
    assert not s.contains(vec(QQ, 1, 1, 1))
    s2 = Subspace.span(QQ, 3, [vec(QQ, 1, 1, 2), vec(QQ, 1, 0, 1)])
    assert s == s2


def test_intersection_and_sum_dims():
    rng = random.Random(23)
    for _ in range(25):
        u = Subspace.span(QQ, 5, random_matrix(rng, QQ, 2, 5))
        v = Subspace.span(QQ, 5, random_matrix(rng, QQ, 3, 5))
        inter = u.intersect(v)
        total = u.sum_with(v)
        assert inter.dim + total.dim == u.dim + v.dim
        for w in inter.basis:
            assert u.contains(w) and v.contains(w)


# -- quotients ----------------------------------------------------------------

def test_quotient_by_zero_is_identity():
    q = quotient_structure(3, Subspace.zero(QQ, 3))
    assert q.dim == 3
    assert q.projection == Matrix.identity(QQ, 3)
    assert q.section == Matrix.identity(QQ, 3)


def test_quotient_by_full_space_is_zero():
    q = quotient_structure(2, Subspace.full(QQ, 2))
    assert q.dim == 0


def test_quotient_identifies_one_relation():
    rel = Subspace.span(QQ, 2, [vec(QQ, 1, -1)])
    q = quotient_structure(2, rel)
    assert q.dim == 1
    assert q.project(vec(QQ, 1, 0)) == q.project(vec(QQ, 0, 1))


def test_quotient_invariants_random():
    rng = random.Random(29)
    for field in (QQ, GF(5)):
        for _ in range(25):
            rel = Subspace.span(field, 6, random_matrix(rng, field, 2, 6))
            q = quotient_structure(6, rel)
            assert q.projection @ q.section == Matrix.identity(field, q.dim)
            for r in rel.basis:
                assert all(not x for x in q.project(r))
            assert q.dim == 6 - rel.dim
