"""Structure-constant algebras, morphisms, extensions and group algebras.

An algebra lives entirely in coordinates: a cube c[i][j][k] with
e_i e_j = sum_k c[i][j][k] e_k plus the coordinates of the unit.
Extensions are unit-preserving morphisms iota: B -> A; they are never
assumed injective, and all downstream code multiplies by iota(b)
rather than by b itself.
"""

from __future__ import annotations

from .linalg import Matrix, Subspace, solve_in_span, nullspace


class AlgebraError(ValueError):
    """Invalid algebraic data; the message names the first violated identity."""


class FiniteAlgebra:
    """A finite-dimensional unital associative algebra over an exact field."""

    __slots__ = ("field", "dim", "structure", "unit", "_table", "_left", "_right",
                 "_generators")

    def __init__(self, field, structure: list[list[list]], unit: list, validate: bool = True):
        self.field = field
        self.dim = len(structure)
        self.structure = structure
        self.unit = unit
        self._table: list[list[list]] | None = None
        self._left: list[Matrix] | None = None
        self._right: list[Matrix] | None = None
        self._generators: list[int] | None = None
        if validate:
            self._validate()

    def _validate(self):
        n = self.dim
        if n == 0:
            raise AlgebraError("algebra must have positive dimension")
        for i in range(n):
            if len(self.structure[i]) != n:
                raise AlgebraError("structure cube is not dim x dim x dim")
            for j in range(n):
                if len(self.structure[i][j]) != n:
                    raise AlgebraError("structure cube is not dim x dim x dim")
        if len(self.unit) != n:
            raise AlgebraError("unit vector has wrong length")
        # unit law on both sides
        for i in range(n):
            e_i = self.basis_vector(i)
            if self.mul(self.unit, e_i) != e_i:
                raise AlgebraError(f"unit law fails: 1*e_{i} != e_{i}")
            if self.mul(e_i, self.unit) != e_i:
                raise AlgebraError(f"unit law fails: e_{i}*1 != e_{i}")
        # associativity on all basis triples
        t = self.table
        for i in range(n):
            for j in range(n):
                tij = t[i][j]
                for k in range(n):
                    left = self.mul(tij, self.basis_vector(k))
                    right = self.mul(self.basis_vector(i), t[j][k])
                    if left != right:
                        raise AlgebraError(
                            f"associativity fails: (e_{i}e_{j})e_{k} != e_{i}(e_{j}e_{k})")

    # -- basic structure ----------------------------------------------

    @property
    def table(self) -> list[list[list]]:
        """table[i][j] = coordinates of e_i * e_j."""
        if self._table is None:
            self._table = [[list(self.structure[i][j]) for j in range(self.dim)]
                           for i in range(self.dim)]
        return self._table

    def basis_vector(self, i: int) -> list:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def mul(self, x: list, y: list) -> list:
        zero = self.field.zero
        out = [zero] * self.dim
        t = self.table
        for i, xi in enumerate(x):
            if not xi:
                continue
            ti = t[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, tk in enumerate(ti[j]):
                    if tk:
                        out[k] = out[k] + c * tk
        return out

    def left_mult(self, i: int) -> Matrix:
        """Matrix of x -> e_i * x."""
        if self._left is None:
            self._left = [
                Matrix(self.field, [[self.structure[a][j][k] for j in range(self.dim)]
                                    for k in range(self.dim)])
                for a in range(self.dim)]
        return self._left[i]

    def right_mult(self, j: int) -> Matrix:
        """Matrix of x -> x * e_j."""
        if self._right is None:
            self._right = [
                Matrix(self.field, [[self.structure[i][b][k] for i in range(self.dim)]
                                    for k in range(self.dim)])
                for b in range(self.dim)]
        return self._right[j]

    def left_mult_by(self, x: list) -> Matrix:
        m = Matrix.zeros(self.field, self.dim, self.dim)
        for i, xi in enumerate(x):
            if xi:
                m = m + self.left_mult(i).scaled(xi)
        return m

    def right_mult_by(self, y: list) -> Matrix:
        m = Matrix.zeros(self.field, self.dim, self.dim)
        for j, yj in enumerate(y):
            if yj:
                m = m + self.right_mult(j).scaled(yj)
        return m

    def is_commutative(self) -> bool:
        t = self.table
        return all(t[i][j] == t[j][i] for i in range(self.dim) for j in range(self.dim))

    def generating_indices(self) -> list[int]:
        """A small set of basis indices generating the whole unital algebra.

        Greedy over the basis order, so the result is deterministic.
        Intertwining constraints written over this set extend to the whole
        algebra by multiplicativity and linearity.
        """
        if self._generators is not None:
            return self._generators
        gens: list[int] = []
        span = Subspace.span(self.field, self.dim, [self.unit])
        for i in range(self.dim):
            if span.contains(self.basis_vector(i)):
                continue
            gens.append(i)
            span = self._unital_closure(span.basis + [self.basis_vector(i)])
            if span.dim == self.dim:
                break
        self._generators = gens
        return gens

    def _unital_closure(self, vectors: list[list]) -> Subspace:
        span = Subspace.span(self.field, self.dim, [self.unit] + list(vectors))
        while True:
            products = [self.mul(u, v) for u in span.basis for v in span.basis]
            bigger = Subspace.span(self.field, self.dim, span.basis + products)
            if bigger.dim == span.dim:
                return bigger
            span = bigger


def make_algebra(field, structure, unit) -> FiniteAlgebra:
    """Validate and build an algebra; raises AlgebraError naming the first violation."""
    return FiniteAlgebra(field, structure, unit, validate=True)


def field_as_algebra(field) -> FiniteAlgebra:
    return FiniteAlgebra(field, [[[field.one]]], [field.one], validate=False)


def matrix_algebra(field, n: int) -> FiniteAlgebra:
    """M_n via matrix units, basis e_{uv} at index u*n + v."""
    dim = n * n
    zero, one = field.zero, field.one
    structure = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
    for u in range(n):
        for v in range(n):
            for w in range(n):
                for x in range(n):
                    if v == w:
                        structure[u * n + v][w * n + x][u * n + x] = one
    unit = [zero] * dim
    for u in range(n):
        unit[u * n + u] = one
    return FiniteAlgebra(field, structure, unit, validate=False)


# -- groups ------------------------------------------------------------


def _check_group_table(table: list[list[int]]) -> int:
    """Validate a Cayley table (indices); returns the identity index."""
    n = len(table)
    if n == 0:
        raise AlgebraError("empty group table")
    for row in table:
        if len(row) != n or any(not (0 <= x < n) for x in row):
            raise AlgebraError("group table is not an n x n table of indices")
    identity = -1
    for e in range(n):
        if all(table[e][j] == j for j in range(n)) and all(table[i][e] == i for i in range(n)):
            identity = e
            break
    if identity < 0:
        raise AlgebraError("group table has no identity")
    for i in range(n):
        if sorted(table[i]) != list(range(n)) or sorted(r[i] for r in table) != list(range(n)):
            raise AlgebraError("group table rows/columns are not permutations")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise AlgebraError(
                        f"group table not associative at ({i},{j},{k})")
    return identity


def group_inverses(table: list[list[int]]) -> list[int]:
    n = len(table)
    identity = _check_group_table(table)
    inv = [0] * n
    for i in range(n):
        inv[i] = table[i].index(identity)
    return inv


def group_algebra(field, table: list[list[int]]) -> FiniteAlgebra:
    """k[G] from a validated Cayley table; basis indexed by group elements."""
    identity = _check_group_table(table)
    n = len(table)
    zero, one = field.zero, field.one
    structure = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            structure[i][j][table[i][j]] = one
    unit = [zero] * n
    unit[identity] = one
    return FiniteAlgebra(field, structure, unit, validate=False)


def subgroup_extension(field, table: list[list[int]], subgroup: list[int]):
    """Extension k[N] -> k[G] for a (not necessarily normal) subgroup N.

    Returns (Extension, sorted subgroup indices).
    """
    identity = _check_group_table(table)
    sub = sorted(set(subgroup))
    if not sub:
        raise AlgebraError("empty subgroup")
    pos = {g: i for i, g in enumerate(sub)}
    for a in sub:
        for b in sub:
            if table[a][b] not in pos:
                raise AlgebraError(f"subgroup not closed: {a}*{b} escapes")
    if identity not in pos:
        raise AlgebraError("subgroup does not contain the identity")
    subtable = [[pos[table[a][b]] for b in sub] for a in sub]
    B = group_algebra(field, subtable)
    A = group_algebra(field, table)
    iota = Matrix.zeros(field, len(table), len(sub))
    for i, g in enumerate(sub):
        iota.data[g][i] = field.one
    ext = Extension(B, A, AlgebraMorphism(B, A, iota))
    return ext, sub


def group_pair(field, table: list[list[int]], subgroup: list[int]):
    """Extension k[N] -> k[G] for a normal subgroup, plus a coset transversal.

    The transversal lists the lexicographically least representative of
    each right coset Ng, in ascending order.  Raises if N is not normal;
    non-normal subgroups are still accepted by ``subgroup_extension``.
    """
    ext, sub = subgroup_extension(field, table, subgroup)
    inv = group_inverses(table)
    subset = set(sub)
    for g in range(len(table)):
        for m in sub:
            if table[table[g][m]][inv[g]] not in subset:
                raise AlgebraError(f"subgroup not normal: {g}*{m}*{g}^-1 escapes")
    seen: set[int] = set()
    transversal: list[int] = []
    for g in range(len(table)):
        if g in seen:
            continue
        transversal.append(g)
        seen.update(table[m][g] for m in sub)
    return ext, transversal


# -- morphisms and extensions ------------------------------------------


class AlgebraMorphism:
    """A unit-preserving algebra homomorphism given by its matrix."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FiniteAlgebra, target: FiniteAlgebra, matrix: Matrix,
                 validate: bool = True):
        self.source = source
        self.target = target
        self.matrix = matrix
        if validate:
            self._validate()

    def _validate(self):
        if (self.matrix.nrows, self.matrix.ncols) != (self.target.dim, self.source.dim):
            raise AlgebraError("morphism matrix has wrong shape")
        if self.matrix.apply(self.source.unit) != self.target.unit:
            raise AlgebraError("morphism does not preserve the unit")
        cols = self.matrix.columns()
        for i in range(self.source.dim):
            for j in range(self.source.dim):
                lhs = self.target.mul(cols[i], cols[j])
                rhs = self.matrix.apply(self.source.table[i][j])
                if lhs != rhs:
                    raise AlgebraError(
                        f"morphism not multiplicative on (e_{i}, e_{j})")

    def apply(self, vec: list) -> list:
        return self.matrix.apply(vec)

    def compose(self, inner: "AlgebraMorphism") -> "AlgebraMorphism":
        if inner.target is not self.source and inner.target.structure != self.source.structure:
            raise AlgebraError("composition mismatch")
        return AlgebraMorphism(inner.source, self.target,
                               self.matrix @ inner.matrix, validate=False)


class Extension:
    """An algebra extension A|B: the morphism iota: B -> A with both algebras."""

    __slots__ = ("B", "A", "iota", "_cache")

    def __init__(self, B: FiniteAlgebra, A: FiniteAlgebra, iota: AlgebraMorphism):
        if iota.source is not B or iota.target is not A:
            raise AlgebraError("iota must map B into A")
        self.B = B
        self.A = A
        self.iota = iota
        self._cache: dict = {}

    def iota_col(self, j: int) -> list:
        return self.iota.matrix.column(j)

    def b_image_subspace(self) -> Subspace:
        return Subspace.span(self.A.field, self.A.dim, self.iota.matrix.columns())

    def left_mult_iota(self, j: int) -> Matrix:
        return self.A.left_mult_by(self.iota_col(j))

    def right_mult_iota(self, j: int) -> Matrix:
        return self.A.right_mult_by(self.iota_col(j))


def trivial_extension(A: FiniteAlgebra) -> Extension:
    eye = Matrix.identity(A.field, A.dim)
    return Extension(A, A, AlgebraMorphism(A, A, eye, validate=False))


def ground_field_extension(A: FiniteAlgebra) -> Extension:
    B = field_as_algebra(A.field)
    iota = Matrix.from_columns(A.field, [A.unit])
    return Extension(B, A, AlgebraMorphism(B, A, iota, validate=False))


# -- centralizer, ideals, normality ------------------------------------


class SubalgebraData:
    """A unital, multiplicatively closed subspace of an ambient algebra."""

    __slots__ = ("ambient", "space")

    def __init__(self, ambient: FiniteAlgebra, space: Subspace, check: bool = True):
        self.ambient = ambient
        self.space = space
        if check:
            if not space.contains(ambient.unit):
                raise AlgebraError("subalgebra does not contain the unit")
            for u in space.basis:
                for v in space.basis:
                    if not space.contains(ambient.mul(u, v)):
                        raise AlgebraError("subspace not closed under multiplication")

    @property
    def dim(self) -> int:
        return self.space.dim

    def as_algebra(self) -> tuple[FiniteAlgebra, Matrix]:
        """The subalgebra as an abstract algebra plus its inclusion matrix."""
        amb = self.ambient
        basis = self.space.basis
        m = len(basis)
        structure = []
        for u in basis:
            row = []
            for v in basis:
                coords = solve_in_span(amb.mul(u, v), basis, amb.field)
                if coords is None:
                    raise AlgebraError("subspace not closed under multiplication")
                row.append(coords)
            structure.append(row)
        unit = solve_in_span(amb.unit, basis, amb.field)
        if unit is None:
            raise AlgebraError("subalgebra does not contain the unit")
        alg = FiniteAlgebra(amb.field, structure, unit, validate=False)
        incl = Matrix.from_columns(amb.field, basis)
        return alg, incl

    def coords_of(self, vec: list) -> list | None:
        return solve_in_span(vec, self.space.basis, self.ambient.field)


def centralizer(ext: Extension) -> SubalgebraData:
    """R = C_A(B): all a in A with a*iota(b) = iota(b)*a for every b."""
    A = ext.A
    rows: list[list] = []
    for j in ext.B.generating_indices():
        diff = A.left_mult_by(ext.iota_col(j)) - A.right_mult_by(ext.iota_col(j))
        rows.extend(diff.data)
    if not rows:
        space = Subspace.full(A.field, A.dim)
    else:
        space = Subspace.span(A.field, A.dim, nullspace(rows, A.field, A.dim))
    return SubalgebraData(A, space, check=True)


def ideal_closure(A: FiniteAlgebra, generators: list[list]) -> Subspace:
    """Smallest two-sided ideal containing the generators (fixpoint iteration)."""
    span = Subspace.span(A.field, A.dim, [list(g) for g in generators])
    for _ in range(A.dim + 1):
        extra = []
        for v in span.basis:
            for i in range(A.dim):
                extra.append(A.mul(A.basis_vector(i), v))
                extra.append(A.mul(v, A.basis_vector(i)))
        bigger = Subspace.span(A.field, A.dim, span.basis + extra)
        if bigger.dim == span.dim:
            return bigger
        span = bigger
    return span


def is_two_sided_ideal(A: FiniteAlgebra, space: Subspace) -> bool:
    for v in space.basis:
        for i in range(A.dim):
            if not space.contains(A.mul(A.basis_vector(i), v)):
                return False
            if not space.contains(A.mul(v, A.basis_vector(i))):
                return False
    return True


class NormalityReport:
    """Outcome of the centralizer-contraction audit for one ideal."""

    __slots__ = ("intersection_dim", "left_in_right", "right_in_left")

    def __init__(self, intersection_dim, left_in_right, right_in_left):
        self.intersection_dim = intersection_dim
        self.left_in_right = left_in_right    # A(I cap R) contained in (I cap R)A
        self.right_in_left = right_in_left    # (I cap R)A contained in A(I cap R)

    @property
    def equal(self) -> bool:
        return self.left_in_right and self.right_in_left

    def to_json(self):
        return {"intersection_dim": self.intersection_dim,
                "A_IR_in_IR_A": self.left_in_right,
                "IR_A_in_A_IR": self.right_in_left,
                "equal": self.equal}


def normality_audit(ext: Extension, ideal: Subspace) -> NormalityReport:
    """Compare the spans A*(I cap R) and (I cap R)*A for a two-sided ideal I."""
    A = ext.A
    if not is_two_sided_ideal(A, ideal):
        raise AlgebraError("input subspace is not a two-sided ideal")
    R = centralizer(ext)
    inter = ideal.intersect(R.space)
    left = Subspace.span(A.field, A.dim,
                         [A.mul(A.basis_vector(i), v)
                          for v in inter.basis for i in range(A.dim)] + inter.basis)
    right = Subspace.span(A.field, A.dim,
                          [A.mul(v, A.basis_vector(i))
                           for v in inter.basis for i in range(A.dim)] + inter.basis)
    return NormalityReport(inter.dim, left.is_contained_in(right),
                           right.is_contained_in(left))
