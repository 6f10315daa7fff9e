"""Coaction, Galois map, coinvariants, balance, and the theorem audits.

The canonical comparison map A (x)_R T -> A (x)_B A, a (x) t -> a t^1 (x) t^2
is defined for every extension with no quasibase at all; together with an
independent projectivity test for T over R it decides the depth-two
condition a second way, which is the oracle the quasibase solver is
checked against.  The coaction sends a to the class of 1 (x) a through
the inverse comparison map, and the full audit confirms that the two
characterizations (quasibase + balance versus Galois data) always agree.
"""

from __future__ import annotations

from .algebras import AlgebraError, Extension, SubalgebraData
from .bialgebroid import (RightBialgebroid, TCore, WitnessError, build_T,
                          build_T_quasibase_free, left_r_projectivity, t_core)
from .bimodules import QuasibaseSet, right_d2_quasibase, tensor_square
from .linalg import (LinAlgError, Matrix, Subspace, kron_vec, nullspace,
                     quotient_structure)


class TensorWithT:
    """A (x)_R T realized as a quotient of A (x) T."""

    __slots__ = ("core", "quot", "dim")

    def __init__(self, core: TCore):
        self.core = core
        A = core.ext.A
        field = A.field
        n, m = A.dim, core.dim
        eye_n = Matrix.identity(field, n)
        eye_m = Matrix.identity(field, m)
        relations = []
        for r in core.R_alg.generating_indices():
            rm = A.right_mult_by(core.incl_R.column(r))
            diff = rm.kron(eye_m) - eye_n.kron(core.lam_R[r])
            relations.extend(diff.transpose().data)
        rel = Subspace.span(field, n * m, relations)
        self.quot = quotient_structure(n * m, rel)
        self.dim = self.quot.dim

    def class_of(self, avec: list, tcoords: list) -> list:
        return self.quot.project(kron_vec(self.core.ext.A.field, avec, tcoords))

    def lift_items(self, coords: list) -> list[tuple[tuple[int, int], object]]:
        m = self.core.dim
        vec = self.quot.lift(coords)
        return [((f // m, f % m), c) for f, c in enumerate(vec) if c]

    def right_R_action(self, r: int) -> Matrix:
        eye_n = Matrix.identity(self.core.ext.A.field, self.core.ext.A.dim)
        return self.quot.induced(eye_n.kron(self.core.rho_R[r]))


def tensor_with_t(ext: Extension) -> TensorWithT:
    if "at" not in ext._cache:
        ext._cache["at"] = TensorWithT(t_core(ext))
    return ext._cache["at"]


def ice_matrix(core: TCore, at: TensorWithT) -> Matrix:
    """The comparison map A (x)_R T -> A (x)_B A, a (x) t -> a t^1 (x) t^2."""
    field = core.ext.A.field
    cols = []
    for j in range(at.dim):
        acc = [field.zero] * core.ts.dim
        for (k, c), coeff in at.lift_items(
                [field.one if i == j else field.zero for i in range(at.dim)]):
            term = core.ts.left_act_by(core.ext.A.basis_vector(k)).apply(core.t_basis[c])
            acc = [x + coeff * y for x, y in zip(acc, term)]
        cols.append(acc)
    return Matrix.from_columns(field, cols, nrows=core.ts.dim)


def unit_coaction_target(ext: Extension, at: TensorWithT) -> Matrix:
    """The map a -> class of (1 (x) a) in A (x)_B A coordinates."""
    A = ext.A
    ts = tensor_square(ext)
    field = A.field
    cols = [ts.class_of(A.unit, A.basis_vector(j)) for j in range(A.dim)]
    return Matrix.from_columns(field, cols, nrows=ts.dim)


def coaction(ext: Extension, rqb: QuasibaseSet) -> Matrix:
    """delta(a) = sum_i gamma_i(a) (x)_R u_i as a matrix A -> A (x)_R T."""
    core = t_core(ext)
    at = tensor_with_t(ext)
    A = ext.A
    field = A.field
    cols = []
    for j in range(A.dim):
        acc = [field.zero] * at.dim
        for gamma, u in rqb.pairs:
            u_t = core.t_coords(u, "quasibase tensor escaped T")
            term = at.class_of(gamma.column(j), u_t)
            acc = [x + y for x, y in zip(acc, term)]
        cols.append(acc)
    delta = Matrix.from_columns(field, cols, nrows=at.dim)
    if delta.apply(A.unit) != at.class_of(A.unit, core.unit_T):
        raise AlgebraError("coaction does not send 1 to 1 (x) 1_T")
    return delta


class GaloisMap:
    """The canonical map beta with its explicit inverse and exact verdict."""

    __slots__ = ("beta", "beta_inverse", "bijective")

    def __init__(self, beta: Matrix, beta_inverse: Matrix, bijective: bool):
        self.beta = beta
        self.beta_inverse = beta_inverse
        self.bijective = bijective


def galois_map(ext: Extension, rqb: QuasibaseSet) -> GaloisMap:
    """beta(x (x) y) = sum_i x gamma_i(y) (x)_R u_i with inverse a (x) t -> a t^1 (x) t^2.

    Bijectivity is decided by exact rank equality plus both round trips of
    the explicit inverse, never by rank alone.
    """
    core = t_core(ext)
    at = tensor_with_t(ext)
    ts = core.ts
    A = ext.A
    field = A.field
    u_ts = [core.t_coords(u, "quasibase tensor escaped T") for _, u in rqb.pairs]
    cols = []
    for w in range(ts.dim):
        acc = [field.zero] * at.dim
        for (s, t), coeff in ts.lift_items(
                [field.one if i == w else field.zero for i in range(ts.dim)]):
            for (gamma, _), u_t in zip(rqb.pairs, u_ts):
                xv = A.mul(A.basis_vector(s), gamma.column(t))
                term = at.class_of(xv, u_t)
                acc = [x + coeff * y for x, y in zip(acc, term)]
        cols.append(acc)
    beta = Matrix.from_columns(field, cols, nrows=at.dim)
    ice = ice_matrix(core, at)
    bij = (at.dim == ts.dim
           and beta.rank() == ts.dim
           and ice @ beta == Matrix.identity(field, ts.dim)
           and beta @ ice == Matrix.identity(field, at.dim))
    return GaloisMap(beta, ice, bij)


class GaloisData:
    """The assembled Galois package: coaction, canonical map with inverse,
    coinvariants and the realized A (x)_R T."""

    __slots__ = ("delta", "galois", "coinvariants", "tensor_at")

    def __init__(self, delta: Matrix, galois: GaloisMap, coinvariants_report,
                 tensor_at: TensorWithT):
        self.delta = delta
        self.galois = galois
        self.coinvariants = coinvariants_report
        self.tensor_at = tensor_at


def galois_data(ext: Extension, rqb: QuasibaseSet) -> GaloisData:
    """Build the full Galois package and enforce delta(a) = beta(1 (x) a)."""
    delta = coaction(ext, rqb)
    gmap = galois_map(ext, rqb)
    ts = tensor_square(ext)
    A = ext.A
    for j in range(A.dim):
        cls = ts.class_of(A.unit, A.basis_vector(j))
        if delta.column(j) != gmap.beta.apply(cls):
            raise AlgebraError("coaction disagrees with the canonical map at 1 (x) a")
    report = coinvariants(ext, delta)
    return GaloisData(delta, gmap, report, tensor_with_t(ext))


class CoinvariantsReport:
    """The coinvariant subalgebra with its comparisons against iota(B)."""

    __slots__ = ("subalgebra", "contains_b", "equals_b", "symmetric_tensor_ok")

    def __init__(self, subalgebra, contains_b, equals_b, symmetric_tensor_ok):
        self.subalgebra = subalgebra
        self.contains_b = contains_b
        self.equals_b = equals_b
        self.symmetric_tensor_ok = symmetric_tensor_ok

    def to_json(self):
        return {"dim": self.subalgebra.dim, "contains_b": self.contains_b,
                "equals_b": self.equals_b,
                "symmetric_tensor_ok": self.symmetric_tensor_ok}


def coinvariants(ext: Extension, delta: Matrix) -> CoinvariantsReport:
    """Kernel of delta - (- (x) 1_T), compared with the image of iota.

    Each coinvariant x also gets the symmetry check 1 (x) x = x (x) 1 in
    the tensor square.
    """
    core = t_core(ext)
    at = tensor_with_t(ext)
    A = ext.A
    field = A.field
    one_map = Matrix.from_columns(
        field, [at.class_of(A.basis_vector(j), core.unit_T) for j in range(A.dim)],
        nrows=at.dim)
    diff = delta - one_map
    space = Subspace.span(field, A.dim, nullspace(diff.data, field, A.dim))
    sub = SubalgebraData(A, space, check=True)
    b_image = ext.b_image_subspace()
    contains = b_image.is_contained_in(space)
    equals = contains and space.dim == b_image.dim
    ts = tensor_square(ext)
    symmetric = all(ts.class_of(A.unit, x) == ts.class_of(x, A.unit)
                    for x in space.basis)
    return CoinvariantsReport(sub, contains, equals, symmetric)


class BalancedReport:
    """Whether rho: B -> End over E of A is onto, E = End of A over B."""

    __slots__ = ("balanced", "e_dim", "double_commutant_dim", "witness")

    def __init__(self, balanced, e_dim, double_commutant_dim, witness):
        self.balanced = balanced
        self.e_dim = e_dim
        self.double_commutant_dim = double_commutant_dim
        self.witness = witness

    def to_json(self):
        return {"balanced": self.balanced, "e_dim": self.e_dim,
                "double_commutant_dim": self.double_commutant_dim}


def balanced_audit(ext: Extension) -> BalancedReport:
    """Compute E = End(A_B), its commutant, and test it against rho(iota(B))."""
    A = ext.A
    field = A.field
    n = A.dim
    rows = []
    for j in ext.B.generating_indices():
        rb = ext.right_mult_iota(j)
        for r in range(n):
            for c in range(n):
                row = [field.zero] * (n * n)
                for k in range(n):
                    x = rb.data[k][c]
                    if x:
                        row[r * n + k] = row[r * n + k] + x
                    x2 = rb.data[r][k]
                    if x2:
                        row[k * n + c] = row[k * n + c] - x2
                rows.append(row)
    e_basis = nullspace(rows, field, n * n) if rows else Matrix.identity(field, n * n).data
    e_mats = [Matrix.unvec(field, v, n, n) for v in e_basis]

    rows2 = []
    for em in e_mats:
        for r in range(n):
            for c in range(n):
                row = [field.zero] * (n * n)
                for k in range(n):
                    x = em.data[k][c]
                    if x:
                        row[r * n + k] = row[r * n + k] + x
                    x2 = em.data[r][k]
                    if x2:
                        row[k * n + c] = row[k * n + c] - x2
                rows2.append(row)
    dc_basis = nullspace(rows2, field, n * n) if rows2 else \
        Matrix.identity(field, n * n).data
    dc_space = Subspace.span(field, n * n, dc_basis)
    rho_b = Subspace.span(field, n * n,
                          [ext.right_mult_iota(j).vec() for j in range(ext.B.dim)])
    if not rho_b.is_contained_in(dc_space):
        raise AlgebraError("rho(B) escaped its own double commutant")
    witness = None
    balanced = True
    for v in dc_space.basis:
        if not rho_b.contains(v):
            balanced = False
            witness = Matrix.unvec(field, v, n, n)
            break
    return BalancedReport(balanced, len(e_mats), dc_space.dim, witness)


class ComoduleReport:
    """The five comodule-algebra conditions, each with a counterexample label."""

    CONDITIONS = ("base_map_is_algebra_map", "comodule_counit_and_coassociativity",
                  "coaction_unital", "base_twist_compatibility",
                  "coaction_multiplicative")

    def __init__(self):
        self.results: dict[str, tuple[bool, str | None]] = {}

    def record(self, name, ok, witness=None):
        self.results[name] = (ok, None if ok else witness)

    @property
    def all_pass(self):
        return all(ok for ok, _ in self.results.values())

    def failing(self) -> list[str]:
        return [name for name, (ok, _) in self.results.items() if not ok]

    def to_json(self):
        return [{"name": name, "pass": ok, **({} if ok else {"witness": wit})}
                for name, (ok, wit) in self.results.items()]


def comodule_algebra_audit(ext: Extension, delta: Matrix,
                           bgd: RightBialgebroid) -> ComoduleReport:
    """Check the five conditions making A a right T-comodule algebra.

    Coassociativity of the coaction is compared inside the realized triple
    tensor power, where both composites must land on 1 (x) 1 (x) a.
    """
    core = bgd.core
    wit = bgd.witness
    at = tensor_with_t(ext)
    A = ext.A
    field = A.field
    n, m = A.dim, core.dim
    report = ComoduleReport()

    # (1) R -> A is an algebra map (the centralizer inclusion)
    ok, witness = True, None
    if core.incl_R.apply(core.R_alg.unit) != A.unit:
        ok, witness = False, "inclusion does not preserve the unit"
    else:
        for i in range(core.R_alg.dim):
            for j in range(core.R_alg.dim):
                lhs = A.mul(core.incl_R.column(i), core.incl_R.column(j))
                rhs = core.incl_R.apply(core.R_alg.table[i][j])
                if lhs != rhs:
                    ok, witness = False, f"inclusion not multiplicative at (r_{i}, r_{j})"
                    break
            if not ok:
                break
    report.record("base_map_is_algebra_map", ok, witness)

    # (2) comodule structure: right R-linearity, counit, coassociativity
    ok, witness = True, None
    for r in range(core.R_alg.dim):
        lhs = delta @ A.right_mult_by(core.incl_R.column(r))
        rhs = at.right_R_action(r) @ delta
        if lhs != rhs:
            ok, witness = False, f"coaction not right R-linear at r_{r}"
            break
    if ok:
        eps_in_A = core.incl_R @ core.eps
        for a in range(n):
            acc = [field.zero] * n
            for (k, c), coeff in at.lift_items(delta.column(a)):
                term = A.mul(A.basis_vector(k), eps_in_A.column(c))
                acc = [x + coeff * y for x, y in zip(acc, term)]
            if acc != A.basis_vector(a):
                ok, witness = False, f"counit condition fails at e_{a}"
                break
    if ok:
        for a in range(n):
            items = at.lift_items(delta.column(a))
            lhs3 = [field.zero] * wit.q3.dim
            rhs3 = [field.zero] * wit.q3.dim
            for (k, c), coeff in items:
                # (delta (x) id): expand delta(e_k) in the first leg
                for (k2, c2), coeff2 in at.lift_items(delta.column(k)):
                    img = wit.q3.left_A[k2].apply(wit.forward3(c2, c))
                    cc = coeff * coeff2
                    lhs3 = [x + cc * y for x, y in zip(lhs3, img)]
                # (id (x) Delta): expand Delta(t_c) in the last two legs
                for idx, coeff2 in enumerate(core.tt.lift(bgd.Delta.column(c))):
                    if not coeff2:
                        continue
                    e, f = divmod(idx, m)
                    img = wit.q3.left_A[k].apply(wit.forward3(e, f))
                    cc = coeff * coeff2
                    rhs3 = [x + cc * y for x, y in zip(rhs3, img)]
            unit_nz = [(i, c) for i, c in enumerate(A.unit) if c]
            expected = wit.q3.project_items(
                [((u1, u2, a), c1 * c2) for u1, c1 in unit_nz for u2, c2 in unit_nz])
            if lhs3 != rhs3 or lhs3 != expected:
                ok, witness = False, f"coassociativity fails at e_{a}"
                break
    report.record("comodule_counit_and_coassociativity", ok, witness)

    # (3) delta(1) = 1 (x) 1_T
    report.record("coaction_unital",
                  delta.apply(A.unit) == at.class_of(A.unit, core.unit_T),
                  "delta(1) != 1 (x) 1_T")

    # (4) r a_(0) (x) a_(1) = a_(0) (x) t_R(r) a_(1)
    ok, witness = True, None
    eye_m = Matrix.identity(field, m)
    eye_n = Matrix.identity(field, n)
    ice = ice_matrix(core, at)
    for r in range(core.R_alg.dim):
        rvec = core.incl_R.column(r)
        lmap = at.quot.induced(A.left_mult_by(rvec).kron(eye_m))
        rmap = at.quot.induced(eye_n.kron(core.T_alg.left_mult_by(core.t_R.column(r))))
        for a in range(n):
            lhs = lmap.apply(delta.column(a))
            rhs = rmap.apply(delta.column(a))
            if lhs != rhs:
                ok, witness = False, f"base twist fails at (r_{r}, e_{a})"
                break
            expected = core.ts.class_of(rvec, A.basis_vector(a))
            if ice.apply(lhs) != expected:
                ok, witness = False, f"tensor-square image mismatch at (r_{r}, e_{a})"
                break
        if not ok:
            break
    report.record("base_twist_compatibility", ok, witness)

    # (5) delta(xy) = x_(0) y_(0) (x) x_(1) y_(1)
    ok, witness = True, None
    for x in range(n):
        items_x = at.lift_items(delta.column(x))
        for y in range(n):
            items_y = at.lift_items(delta.column(y))
            rhs = [field.zero] * at.dim
            for (k, c), c1 in items_x:
                for (l, d), c2 in items_y:
                    term = at.class_of(A.table[k][l], core.T_alg.table[c][d])
                    cc = c1 * c2
                    rhs = [u + cc * v for u, v in zip(rhs, term)]
            lhs = delta.apply(A.table[x][y])
            if lhs != rhs:
                ok, witness = False, f"multiplicativity fails at (e_{x}, e_{y})"
                break
            if ice.apply(rhs) != core.ts.class_of(A.unit, A.table[x][y]):
                ok, witness = False, f"tensor-square image mismatch at (e_{x}, e_{y})"
                break
        if not ok:
            break
    report.record("coaction_multiplicative", ok, witness)
    return report


class CorollaryReport:
    """Agreement between the quasibase solver and the comparison-map criterion."""

    __slots__ = ("quasibase_right_d2", "comparison_bijective", "rt_projective",
                 "corollary_right_d2", "agree")

    def __init__(self, quasibase_right_d2, comparison_bijective, rt_projective):
        self.quasibase_right_d2 = quasibase_right_d2
        self.comparison_bijective = comparison_bijective
        self.rt_projective = rt_projective
        self.corollary_right_d2 = comparison_bijective and rt_projective
        self.agree = self.corollary_right_d2 == quasibase_right_d2

    def to_json(self):
        return {"quasibase_right_d2": self.quasibase_right_d2,
                "comparison_bijective": self.comparison_bijective,
                "rt_projective": self.rt_projective,
                "corollary_right_d2": self.corollary_right_d2,
                "agree": self.agree}


def d2_iff_corollary_audit(ext: Extension) -> CorollaryReport:
    """Decide right depth two twice: quasibase solver vs. the comparison map
    a (x) t -> a t^1 (x) t^2 being bijective with T left R-projective."""
    quasibase_verdict = right_d2_quasibase(ext) is not None
    core = t_core(ext)
    at = tensor_with_t(ext)
    ice = ice_matrix(core, at)
    bij = at.dim == core.ts.dim and ice.rank() == core.ts.dim
    proj = left_r_projectivity(core) is not None
    return CorollaryReport(quasibase_verdict, bij, proj)


class MainTheoremReport:
    """Both sides of the depth-two/Galois equivalence, computed independently."""

    __slots__ = ("right_d2", "left_d2", "balanced", "lhs", "rt_projective",
                 "galois_bijective", "coinvariants_equal_b", "comodule",
                 "rhs", "consistent")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw[k])

    def to_json(self):
        return {
            "right_d2": self.right_d2,
            "left_d2": self.left_d2,
            "balanced": self.balanced,
            "galois_bijective": self.galois_bijective,
            "rt_projective": self.rt_projective,
            "coinvariants_equal_B": self.coinvariants_equal_b,
            "comodule_conditions": (None if self.comodule is None
                                    else self.comodule.to_json()),
            "main_theorem_consistent": self.consistent,
        }


def main_theorem_audit(ext: Extension) -> MainTheoremReport:
    """Right D2 + balanced on one side; Galois data for the canonical T on the
    other.  The two verdicts are computed along disjoint pathways and must
    agree; disagreement is the strongest possible failure signal.
    """
    from .bimodules import left_d2_quasibase
    rqb = right_d2_quasibase(ext)
    lqb = left_d2_quasibase(ext)
    bal = balanced_audit(ext)
    lhs = (rqb is not None) and bal.balanced

    core = t_core(ext)
    at = tensor_with_t(ext)
    ice = ice_matrix(core, at)
    proj = left_r_projectivity(core)
    galois_bij = at.dim == core.ts.dim and ice.rank() == core.ts.dim
    coinv_eq = None
    comodule = None
    rhs = False
    if galois_bij and proj is not None:
        try:
            ice_inv = ice.inverse()
            delta = ice_inv @ unit_coaction_target(ext, at)
            bgd = build_T_quasibase_free(ext)
            coinv = coinvariants(ext, delta)
            comodule = comodule_algebra_audit(ext, delta, bgd)
            coinv_eq = coinv.equals_b
            rhs = coinv.equals_b and comodule.all_pass and coinv.symmetric_tensor_ok
        except (WitnessError, LinAlgError):
            rhs = False
    return MainTheoremReport(right_d2=(rqb is not None),
                             left_d2=(lqb is not None),
                             balanced=bal.balanced,
                             lhs=lhs,
                             rt_projective=(proj is not None),
                             galois_bijective=galois_bij,
                             coinvariants_equal_b=coinv_eq,
                             comodule=comodule,
                             rhs=rhs,
                             consistent=(lhs == rhs))
