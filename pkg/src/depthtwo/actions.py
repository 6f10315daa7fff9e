"""The right T-action on endomorphism rings of left modules, and the
anchor action on the centralizer.

For a left A-module M, the endomorphisms of M as a B-module carry a
right T-action f . t = t^1 f(t^2 -).  The action measures composition
through the coproduct, and its invariants recover exactly the A-linear
endomorphisms; the anchor is the same action specialized to R inside
End(A).
"""

from __future__ import annotations

from .algebras import AlgebraError, Extension, FiniteAlgebra
from .bialgebroid import RightBialgebroid, build_T
from .bimodules import QuasibaseSet, hom_space, left_module_bimodule
from .linalg import Matrix, Subspace, nullspace, solve_in_span


class LeftModule:
    """A unital left module over an algebra, given by action matrices."""

    __slots__ = ("algebra", "dim", "action")

    def __init__(self, algebra: FiniteAlgebra, dim: int, action: list[Matrix],
                 validate: bool = True):
        self.algebra = algebra
        self.dim = dim
        self.action = action
        if validate:
            self._validate()

    def _validate(self):
        A = self.algebra
        field = A.field
        unit_act = Matrix.zeros(field, self.dim, self.dim)
        for i, c in enumerate(A.unit):
            if c:
                unit_act = unit_act + self.action[i].scaled(c)
        if unit_act != Matrix.identity(field, self.dim):
            raise AlgebraError("module action is not unital")
        for i in range(A.dim):
            for j in range(A.dim):
                combo = Matrix.zeros(field, self.dim, self.dim)
                for k, c in enumerate(A.table[i][j]):
                    if c:
                        combo = combo + self.action[k].scaled(c)
                if self.action[i] @ self.action[j] != combo:
                    raise AlgebraError(f"module action fails on (e_{i}, e_{j})")

    @classmethod
    def regular(cls, A: FiniteAlgebra) -> "LeftModule":
        return cls(A, A.dim, [A.left_mult(i) for i in range(A.dim)], validate=False)

    def act_by(self, x: list) -> Matrix:
        m = Matrix.zeros(self.algebra.field, self.dim, self.dim)
        for i, c in enumerate(x):
            if c:
                m = m + self.action[i].scaled(c)
        return m


def b_endomorphisms(ext: Extension, M: LeftModule) -> list[Matrix]:
    """Basis of endomorphisms of M as a module over B (restricted via iota)."""
    action = [M.act_by(ext.iota_col(j)) for j in range(ext.B.dim)]
    bm = left_module_bimodule(ext.B, M.dim, action)
    return hom_space(bm, bm)


class MeasuredEndos:
    """End of M over B with its verified right T-module algebra structure."""

    __slots__ = ("bgd", "module", "endo_basis", "action")

    def __init__(self, bgd: RightBialgebroid, module: LeftModule,
                 endo_basis: list[Matrix], action: list[Matrix]):
        self.bgd = bgd
        self.module = module
        self.endo_basis = endo_basis
        self.action = action

    @property
    def dim(self) -> int:
        return len(self.endo_basis)

    def act(self, tcoords: list) -> Matrix:
        m = Matrix.zeros(self.module.algebra.field, self.dim, self.dim)
        for c, x in enumerate(tcoords):
            if x:
                m = m + self.action[c].scaled(x)
        return m

    def endo_coords(self, endo: Matrix) -> list:
        coords = solve_in_span(endo.vec(), [f.vec() for f in self.endo_basis],
                               self.module.algebra.field)
        if coords is None:
            raise AlgebraError("endomorphism is not B-linear")
        return coords

    def from_coords(self, coords: list) -> Matrix:
        field = self.module.algebra.field
        out = Matrix.zeros(field, self.module.dim, self.module.dim)
        for a, c in enumerate(coords):
            if c:
                out = out + self.endo_basis[a].scaled(c)
        return out


def t_action(ext: Extension, rqb: QuasibaseSet, M: LeftModule,
             bgd: RightBialgebroid | None = None) -> MeasuredEndos:
    """The right T-action f . t = t^1 f(t^2 -) on End of M over B.

    Construction verifies: unitality, the module law over products,
    the measuring identity through the coproduct on all basis triples,
    and that id_M . t = id_M . s_R(eps(t)).
    """
    if bgd is None:
        bgd = build_T(ext, rqb)
    core = bgd.core
    A = ext.A
    field = A.field
    endos = b_endomorphisms(ext, M)
    ne = len(endos)
    m = core.dim
    endo_vecs = [f.vec() for f in endos]

    def acted(f: Matrix, c: int) -> Matrix:
        # f . t_c = t_c^1 f(t_c^2 -), summed over the lift of t_c
        out = Matrix.zeros(field, M.dim, M.dim)
        for (s, t), coeff in core.t_lift_items(c):
            out = out + (M.action[s] @ f @ M.action[t]).scaled(coeff)
        return out

    acted_table = [[acted(endos[a], c) for c in range(m)] for a in range(ne)]
    action = []
    for c in range(m):
        cols = []
        for a in range(ne):
            coords = solve_in_span(acted_table[a][c].vec(), endo_vecs, field)
            if coords is None:
                raise AlgebraError("T-action left the B-endomorphism algebra")
            cols.append(coords)
        action.append(Matrix.from_columns(field, cols, nrows=ne))
    me = MeasuredEndos(bgd, M, endos, action)

    # unitality: f . 1_T = f
    if me.act(core.unit_T) != Matrix.identity(field, ne):
        raise AlgebraError("T-action is not unital")
    # module law: (f . t) . u = f . (t u)
    for c in range(m):
        for d in range(m):
            prod = core.T_alg.table[c][d]
            if me.action[d] @ me.action[c] != me.act(prod):
                raise AlgebraError(f"T-action fails the module law on (t_{c}, t_{d})")
    # measuring: (f . t_(1)) o (g . t_(2)) = (f o g) . t
    for c in range(m):
        lift = core.tt.lift(bgd.Delta.column(c))
        for a in range(ne):
            for b in range(ne):
                rhs_m = Matrix.zeros(field, M.dim, M.dim)
                for idx, coeff in enumerate(lift):
                    if not coeff:
                        continue
                    e, f = divmod(idx, m)
                    rhs_m = rhs_m + (acted_table[a][e] @ acted_table[b][f]).scaled(coeff)
                lhs_m = acted(endos[a] @ endos[b], c)
                if lhs_m != rhs_m:
                    raise AlgebraError(
                        f"measuring identity fails at (f_{a}, f_{b}, t_{c})")
    # id_M . t = id_M . s_R(eps(t))
    id_coords = me.endo_coords(Matrix.identity(field, M.dim))
    for c in range(m):
        tvec = [field.one if i == c else field.zero for i in range(m)]
        twisted = core.s_R.apply(core.eps.apply(tvec))
        if me.act(tvec).apply(id_coords) != me.act(twisted).apply(id_coords):
            raise AlgebraError(f"identity is not invariant at t_{c}")
    return me


def action_invariants(me: MeasuredEndos, M: LeftModule) -> Subspace:
    """Invariants {phi : phi . t = phi . s_R(eps(t))} inside End_k(M),
    verified to coincide with the A-linear endomorphisms of M."""
    core = me.bgd.core
    field = M.algebra.field
    m = core.dim
    rows = []
    for c in range(m):
        tvec = [field.one if i == c else field.zero for i in range(m)]
        twisted = core.s_R.apply(core.eps.apply(tvec))
        diff = me.act(tvec) - me.act(twisted)
        rows.extend(diff.data)
    coords_basis = nullspace(rows, field, me.dim) if rows else \
        Matrix.identity(field, me.dim).data
    amb = M.dim * M.dim
    vectors = [me.from_coords(coords).vec() for coords in coords_basis]
    invariants = Subspace.span(field, amb, vectors)

    a_bm = left_module_bimodule(M.algebra, M.dim, M.action)
    a_endos = hom_space(a_bm, a_bm)
    a_space = Subspace.span(field, amb, [f.vec() for f in a_endos])
    if invariants != a_space:
        raise AlgebraError("invariants differ from the A-linear endomorphisms")
    return invariants


class AnchorAction:
    """The right T-action r . t = t^1 r t^2 on the centralizer."""

    __slots__ = ("bgd", "action")

    def __init__(self, bgd: RightBialgebroid, action: list[Matrix]):
        self.bgd = bgd
        self.action = action

    def act(self, tcoords: list) -> Matrix:
        core = self.bgd.core
        field = core.ext.A.field
        m = Matrix.zeros(field, core.R_alg.dim, core.R_alg.dim)
        for c, x in enumerate(tcoords):
            if x:
                m = m + self.action[c].scaled(x)
        return m


def anchor(ext: Extension, rqb: QuasibaseSet,
           bgd: RightBialgebroid | None = None) -> AnchorAction:
    """Build and verify the anchor: r . 1_T = r, 1_R . t = eps(t), and R is
    a right T-module algebra under it."""
    if bgd is None:
        bgd = build_T(ext, rqb)
    core = bgd.core
    A = ext.A
    field = A.field
    m = core.dim
    rdim = core.R_alg.dim
    action = []
    for c in range(m):
        cols = []
        for r in range(rdim):
            acc = [field.zero] * A.dim
            rvec = core.incl_R.column(r)
            for (s, t), coeff in core.t_lift_items(c):
                term = A.mul(A.mul(A.basis_vector(s), rvec), A.basis_vector(t))
                acc = [x + coeff * y for x, y in zip(acc, term)]
            coords = core.R.coords_of(acc)
            if coords is None:
                raise AlgebraError("anchor value escaped the centralizer")
            cols.append(coords)
        action.append(Matrix.from_columns(field, cols, nrows=rdim))
    out = AnchorAction(bgd, action)

    if out.act(core.unit_T) != Matrix.identity(field, rdim):
        raise AlgebraError("anchor: r . 1_T != r")
    for c in range(m):
        tvec = [field.one if i == c else field.zero for i in range(m)]
        if out.act(tvec).apply(core.R_alg.unit) != core.eps.column(c):
            raise AlgebraError(f"anchor: 1_R . t_{c} != eps(t_{c})")
    # module law over products of T
    for c in range(m):
        for d in range(m):
            if out.act(core.T_alg.table[c][d]) != action[d] @ action[c]:
                raise AlgebraError("anchor fails the module law")
    # measuring: (r s) . t = (r . t_(1)) (s . t_(2))
    for c in range(m):
        lift = core.tt.lift(bgd.Delta.column(c))
        for r in range(rdim):
            for s in range(rdim):
                lhs = action[c].apply(core.R_alg.table[r][s])
                rhs = [field.zero] * rdim
                for idx, coeff in enumerate(lift):
                    if not coeff:
                        continue
                    e, f = divmod(idx, m)
                    term = core.R_alg.mul(
                        action[e].apply(core.R_alg.basis_vector(r)),
                        action[f].apply(core.R_alg.basis_vector(s)))
                    rhs = [x + coeff * y for x, y in zip(rhs, term)]
                if lhs != rhs:
                    raise AlgebraError(
                        f"anchor measuring fails at (r_{r}, r_{s}, t_{c})")
    return out
