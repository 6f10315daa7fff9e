from __future__ import annotations

import pytest

from depthtwo.algebras import (AlgebraError, group_pair, ground_field_extension,
                               matrix_algebra, trivial_extension)
from depthtwo.bimodules import (Bimodule, algebra_bimodule, b_centralized,
                                compose_extensions, coproduct_summand_test,
                                group_quasibase, h_separability_test, hom_space,
                                left_d2_quasibase, right_d2_quasibase,
                                split_projectivity_audit, tensor_power,
                                tensor_square, verify_left_quasibase,
                                verify_right_quasibase)
from depthtwo.catalog import A3_INDICES, S3_TABLE, m2_over_ground_field
from depthtwo.fields import QQ
from depthtwo.linalg import Matrix, Subspace, nullspace


# -- tensor square -----------------------------------------------------------

def test_tensor_square_over_itself_collapses(trivial_m2):
    ts = tensor_square(trivial_m2)
    assert ts.dim == trivial_m2.A.dim


def test_tensor_square_over_ground_field_is_full(sqrt2):
    ts = tensor_square(sqrt2)
    assert ts.dim == sqrt2.A.dim ** 2


def test_tensor_square_s3_a3_coset_basis_oracle(s3a3):
    # the 12 classes e_g (x) e_s for g in G and s a transversal rep span
    # the quotient and are independent
    ts = tensor_square(s3a3)
    A = s3a3.A
    vectors = [ts.class_of(A.basis_vector(g), A.basis_vector(s))
               for g in range(6) for s in (0, 3)]
    span = Subspace.span(QQ, ts.dim, vectors)
    assert span.dim == 12 == ts.dim


def test_tensor_square_actions_are_bimodules(s3a3):
    ts = tensor_square(s3a3)
    ts.as_bimodule("A", "B").check()
    ts.as_bimodule("B", "A").check()
    ts.as_bimodule("A", "A").check()
    ts.as_bimodule("B", "B").check()


def test_mu_factors_through_quotient(s3a3):
    ts = tensor_square(s3a3)
    A = s3a3.A
    for i in range(A.dim):
        for j in range(A.dim):
            cls = ts.class_of(A.basis_vector(i), A.basis_vector(j))
            assert ts.mu.apply(cls) == A.table[i][j]


def test_tensor_power_dims_chain(s3a3):
    q3 = tensor_power(s3a3, 3)
    q4 = tensor_power(s3a3, 4)
    # |G| * [G:N]^(k-1) for the group pair
    assert q3.dim == 24
    assert q4.dim == 48


# -- hom spaces ---------------------------------------------------------------

def test_hom_space_contains_identity(s3a3):
    ts = tensor_square(s3a3)
    M = ts.as_bimodule("A", "B")
    homs = hom_space(M, M)
    vecs = [h.vec() for h in homs]
    span = Subspace.span(QQ, ts.dim ** 2, vecs)
    assert span.contains(Matrix.identity(QQ, ts.dim).vec())


def test_hom_from_a_is_b_central_tensor_square(s3a3):
    # Hom of A-B-bimodules (A, A(x)_B A) = (A(x)_B A)^B via f -> f(1)
    ts = tensor_square(s3a3)
    homs = hom_space(algebra_bimodule(s3a3, "A", "B"), ts.as_bimodule("A", "B"))
    central = b_centralized(ts)
    assert len(homs) == central.dim
    images = [f.apply(s3a3.A.unit) for f in homs]
    assert Subspace.span(QQ, ts.dim, images).dim == len(homs)
    for img in images:
        assert central.contains(img)


def test_hom_to_a_is_bb_endomorphisms(s3a3):
    # Hom of A-B-bimodules (A(x)_B A, A) = End of the B-B-bimodule A
    ts = tensor_square(s3a3)
    homs = hom_space(ts.as_bimodule("A", "B"), algebra_bimodule(s3a3, "A", "B"))
    bb_endos = hom_space(algebra_bimodule(s3a3, "B", "B"),
                         algebra_bimodule(s3a3, "B", "B"))
    assert len(homs) == len(bb_endos)


def test_hom_space_mismatch_raises(s3a3, sqrt2):
    with pytest.raises(AlgebraError):
        hom_space(algebra_bimodule(s3a3, "A", "B"), algebra_bimodule(sqrt2, "A", "B"))


# -- B-central subspace --------------------------------------------------------

def test_b_central_over_ground_field_is_everything(c2_over_k):
    ts = tensor_square(c2_over_k)
    assert b_centralized(ts).dim == ts.dim


def test_b_central_trivial_extension_matches_center(trivial_m2):
    ts = tensor_square(trivial_m2)
    central = b_centralized(ts)
    # center of M2 computed independently
    A = trivial_m2.A
    rows = []
    for i in range(A.dim):
        diff = A.left_mult(i) - A.right_mult(i)
        rows.extend(diff.data)
    center = Subspace.span(QQ, A.dim, nullspace(rows, QQ, A.dim))
    assert central.dim == center.dim == 1


def test_b_central_contains_transversal_tensors(s3a3):
    ts = tensor_square(s3a3)
    central = b_centralized(ts)
    A = s3a3.A
    inv = {0: 0, 3: 3}  # e and (12) are involutions
    for g, gi in inv.items():
        u = ts.class_of(A.basis_vector(gi), A.basis_vector(g))
        assert central.contains(u)


# -- summand test ----------------------------------------------------------------

def test_summand_test_on_itself(s3a3):
    P = algebra_bimodule(s3a3, "A", "B")
    fact = coproduct_summand_test(P, P)
    assert fact is not None
    total = Matrix.zeros(QQ, P.dim, P.dim)
    for f, g in fact.pairs:
        total = total + f @ g
    assert total == Matrix.identity(QQ, P.dim)


def _doubled(bm: Bimodule) -> Bimodule:
    field = bm.left_algebra.field
    n = bm.dim

    def block(m: Matrix) -> Matrix:
        out = Matrix.zeros(field, 2 * n, 2 * n)
        for i in range(n):
            for j in range(n):
                x = m.data[i][j]
                if x:
                    out.data[i][j] = x
                    out.data[n + i][n + j] = x
        return out

    return Bimodule(bm.left_algebra, bm.right_algebra, 2 * n,
                    [block(m) for m in bm.left_action],
                    [block(m) for m in bm.right_action])


def test_summand_test_on_doubled_module(sqrt2):
    P = algebra_bimodule(sqrt2, "A", "B")
    M = _doubled(P)
    M.check()
    fact = coproduct_summand_test(M, P)
    assert fact is not None
    total = Matrix.zeros(QQ, M.dim, M.dim)
    for f, g in fact.pairs:
        total = total + f @ g
    assert total == Matrix.identity(QQ, M.dim)


def test_summand_test_absent_for_non_d2_tensor_square(s3_transposition):
    ts = tensor_square(s3_transposition)
    M = ts.as_bimodule("A", "B")
    P = algebra_bimodule(s3_transposition, "A", "B")
    assert coproduct_summand_test(M, P) is None


# -- quasibases --------------------------------------------------------------------

def test_right_quasibase_s3_a3_and_transversal_agreement(s3a3):
    rqb = right_d2_quasibase(s3a3)
    assert rqb is not None
    assert verify_right_quasibase(s3a3, rqb)
    gq = group_quasibase(s3a3, S3_TABLE, A3_INDICES, [0, 3], "right")
    assert verify_right_quasibase(s3a3, gq)


def test_left_quasibase_s3_a3(s3a3):
    lqb = left_d2_quasibase(s3a3)
    assert lqb is not None
    assert verify_left_quasibase(s3a3, lqb)
    gq = group_quasibase(s3a3, S3_TABLE, A3_INDICES, [0, 3], "left")
    assert verify_left_quasibase(s3a3, gq)


def test_ground_field_extension_always_d2(c2_over_k, sqrt2):
    for ext in (c2_over_k, sqrt2):
        assert right_d2_quasibase(ext) is not None
        assert left_d2_quasibase(ext) is not None


def test_trivial_extension_d2_with_single_pair(trivial_m2):
    lqb = left_d2_quasibase(trivial_m2)
    assert lqb is not None and len(lqb) == 1


def test_non_normal_subgroup_is_not_d2(s3_transposition):
    assert right_d2_quasibase(s3_transposition) is None
    assert left_d2_quasibase(s3_transposition) is None


def test_quasibase_size_bound(s3a3):
    # |pairs| <= dim Hom(A, A(x)A) * dim Hom(A(x)A, A)
    ts = tensor_square(s3a3)
    rqb = right_d2_quasibase(s3a3)
    hp = hom_space(algebra_bimodule(s3a3, "A", "B"), ts.as_bimodule("A", "B"))
    hm = hom_space(ts.as_bimodule("A", "B"), algebra_bimodule(s3a3, "A", "B"))
    assert len(rqb) <= len(hp) * len(hm)


def test_endo_ring_splitting_from_quasibase(s3a3):
    # every left-B endomorphism of A is recovered from the quasibase:
    # alpha = sum_i gamma_i(-) u_i^1 alpha(u_i^2)
    from depthtwo.bimodules import left_module_bimodule
    A = s3a3.A
    rqb = right_d2_quasibase(s3a3)
    ts = rqb.ts
    left_b = left_module_bimodule(
        s3a3.B, A.dim, [s3a3.left_mult_iota(j) for j in range(s3a3.B.dim)])
    endos = hom_space(left_b, left_b)
    for alpha in endos:
        total = Matrix.zeros(QQ, A.dim, A.dim)
        for gamma, u in rqb.pairs:
            w = [QQ.zero] * A.dim
            for (s, t), c in ts.lift_items(u):
                term = A.mul(A.basis_vector(s), alpha.column(t))
                w = [x + c * y for x, y in zip(w, term)]
            total = total + A.right_mult_by(w) @ gamma
        assert total == alpha


# -- H-separability and composites ------------------------------------------------

def test_m2_over_q_is_h_separable_with_azumaya_oracle():
    ext = m2_over_ground_field()
    assert h_separability_test(ext) is not None
    # oracle: the enveloping map a (x) b -> (x -> a x b) has full rank
    A = ext.A
    cols = []
    for i in range(A.dim):
        for j in range(A.dim):
            cols.append((A.left_mult(i) @ A.right_mult(j)).vec())
    env = Matrix.from_columns(QQ, cols)
    assert env.rank() == A.dim ** 2


def test_trivial_extension_h_separable(trivial_m2):
    assert h_separability_test(trivial_m2) is not None


def test_c2_over_q_not_h_separable(c2_over_k):
    # commutative non-trivial extension of the ground field: the enveloping
    # map has rank 2 < 4, so A (x) A cannot divide a free power of A
    assert h_separability_test(c2_over_k) is None
    A = c2_over_k.A
    cols = [(A.left_mult(i) @ A.right_mult(j)).vec()
            for i in range(A.dim) for j in range(A.dim)]
    assert Matrix.from_columns(QQ, cols).rank() == 2


def test_compose_with_identity_extensions(sqrt2):
    ident = trivial_extension(sqrt2.A)
    left = compose_extensions(sqrt2, ident)
    assert left.iota.matrix == sqrt2.iota.matrix
    ident_b = trivial_extension(sqrt2.B)
    right = compose_extensions(ident_b, sqrt2)
    assert right.iota.matrix == sqrt2.iota.matrix


def test_compose_mismatch_raises(sqrt2, s3a3):
    with pytest.raises(AlgebraError):
        compose_extensions(sqrt2, s3a3)


def test_composite_d2_from_h_separable_inner():
    inner = m2_over_ground_field()           # M2 | Q, H-separable
    outer = trivial_extension(inner.A)       # M2 | M2, right D2
    assert h_separability_test(inner) is not None
    assert right_d2_quasibase(outer) is not None
    composite = compose_extensions(inner, outer)
    assert composite.B.dim == 1 and composite.A.dim == 4
    assert right_d2_quasibase(composite) is not None


def test_composite_d2_second_instance(s3a3):
    # trivial inner extensions are H-separable, so composing one under a
    # right-D2 outer extension must stay right D2
    inner = trivial_extension(s3a3.B)
    assert h_separability_test(inner) is not None
    composite = compose_extensions(inner, s3a3)
    assert right_d2_quasibase(composite) is not None


# -- split projectivity --------------------------------------------------------------

def test_split_projectivity_trivial_extension(trivial_m2):
    p = Matrix.identity(QQ, trivial_m2.A.dim)
    db = split_projectivity_audit(trivial_m2, p)
    assert len(db) >= 1


def test_split_projectivity_s3_a3_identity_coset(s3a3):
    p = Matrix.zeros(QQ, 3, 6)
    for j in range(3):
        p.data[j][j] = QQ.one
    db = split_projectivity_audit(s3a3, p)
    assert len(db) >= 2


def test_split_projectivity_rejects_non_splitting(s3a3):
    with pytest.raises(AlgebraError, match="split"):
        split_projectivity_audit(s3a3, Matrix.zeros(QQ, 3, 6))


def test_quasibase_is_bit_reproducible():
    # two independent builds of the same extension produce identical pairs
    ext1, _ = group_pair(QQ, S3_TABLE, A3_INDICES)
    ext2, _ = group_pair(QQ, S3_TABLE, A3_INDICES)
    qb1 = right_d2_quasibase(ext1)
    qb2 = right_d2_quasibase(ext2)
    assert len(qb1) == len(qb2)
    for (g1, u1), (g2, u2) in zip(qb1.pairs, qb2.pairs):
        assert g1 == g2 and u1 == u2
