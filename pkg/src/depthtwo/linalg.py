"""Dense exact linear algebra: matrices, RREF, subspaces, quotients.

Pivot choice is always the leftmost nonzero column, so every reduced
echelon form, nullspace basis and quotient coordinate system produced
here is canonical; identical inputs give bit-identical outputs.
"""

from __future__ import annotations


class LinAlgError(ValueError):
    """Dimension mismatch or singular input."""


class Matrix:
    """A dense field-valued matrix stored row-major."""

    __slots__ = ("field", "nrows", "ncols", "data")

    def __init__(self, field, data: list[list]):
        self.field = field
        self.data = data
        self.nrows = len(data)
        self.ncols = len(data[0]) if data else 0
        for row in data:
            if len(row) != self.ncols:
                raise LinAlgError("ragged rows")

    # -- constructors ------------------------------------------------

    @classmethod
    def zeros(cls, field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        one = field.one
        for i in range(n):
            m.data[i][i] = one
        return m

    @classmethod
    def from_columns(cls, field, columns: list[list], nrows: int | None = None) -> "Matrix":
        if not columns:
            return cls.zeros(field, nrows or 0, 0)
        n = len(columns[0])
        m = cls.zeros(field, n, len(columns))
        for j, col in enumerate(columns):
            if len(col) != n:
                raise LinAlgError("ragged columns")
            for i, x in enumerate(col):
                m.data[i][j] = x
        return m

    # -- access ------------------------------------------------------

    def column(self, j: int) -> list:
        return [row[j] for row in self.data]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.ncols)]

    def copy(self) -> "Matrix":
        return Matrix(self.field, [row[:] for row in self.data])

    # -- arithmetic --------------------------------------------------

    def apply(self, vec: list) -> list:
        if len(vec) != self.ncols:
            raise LinAlgError(f"apply: {self.ncols} columns vs vector of length {len(vec)}")
        zero = self.field.zero
        hot = [(k, x) for k, x in enumerate(vec) if x]
        out = []
        for row in self.data:
            s = zero
            for k, x in hot:
                rk = row[k]
                if rk:
                    s = s + rk * x
            out.append(s)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise LinAlgError(f"matmul: {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        zero = self.field.zero
        out = [[zero] * other.ncols for _ in range(self.nrows)]
        odata = other.data
        for i, arow in enumerate(self.data):
            crow = out[i]
            for k, a in enumerate(arow):
                if not a:
                    continue
                brow = odata[k]
                for j, b in enumerate(brow):
                    if b:
                        crow[j] = crow[j] + a * b
        return Matrix(self.field, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinAlgError("shape mismatch in +")
        return Matrix(self.field, [[a + b for a, b in zip(r1, r2)]
                                   for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinAlgError("shape mismatch in -")
        return Matrix(self.field, [[a - b for a, b in zip(r1, r2)]
                                   for r1, r2 in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [[-a for a in row] for row in self.data])

    def scaled(self, c) -> "Matrix":
        return Matrix(self.field, [[c * a for a in row] for row in self.data])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.data == other.data)

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(tuple(r) for r in self.data)))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [list(col) for col in zip(*self.data)]) if self.data \
            else Matrix.zeros(self.field, self.ncols, 0)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; index (i, k) of the product flattens to i*other.nrows + k."""
        zero = self.field.zero
        out = [[zero] * (self.ncols * other.ncols)
               for _ in range(self.nrows * other.nrows)]
        for i, arow in enumerate(self.data):
            for j, a in enumerate(arow):
                if not a:
                    continue
                for k, brow in enumerate(other.data):
                    orow = out[i * other.nrows + k]
                    off = j * other.ncols
                    for l, b in enumerate(brow):
                        if b:
                            orow[off + l] = a * b
        return Matrix(self.field, out)

    def vec(self) -> list:
        """Row-major flattening, the canonical vectorization used for hom spaces."""
        out = []
        for row in self.data:
            out.extend(row)
        return out

    @classmethod
    def unvec(cls, field, flat: list, nrows: int, ncols: int) -> "Matrix":
        if len(flat) != nrows * ncols:
            raise LinAlgError("unvec: wrong length")
        return cls(field, [list(flat[i * ncols:(i + 1) * ncols]) for i in range(nrows)])

    def rank(self) -> int:
        _, pivots = rref([row[:] for row in self.data], self.field, self.ncols)
        return len(pivots)

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise LinAlgError("inverse of non-square matrix")
        n = self.nrows
        aug = [row[:] + irow[:] for row, irow in
               zip(self.data, Matrix.identity(self.field, n).data)]
        rows, pivots = rref(aug, self.field, 2 * n)
        if pivots[:n] != list(range(n)):
            raise LinAlgError("matrix is singular")
        return Matrix(self.field, [row[n:] for row in rows[:n]])

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field!r})"


def kron_vec(field, u: list, v: list) -> list:
    """Coordinates of u (x) v; entry (i, j) flattens to i*len(v) + j."""
    zero = field.zero
    nv = len(v)
    out = [zero] * (len(u) * nv)
    for i, a in enumerate(u):
        if not a:
            continue
        off = i * nv
        for j, b in enumerate(v):
            if b:
                out[off + j] = a * b
    return out


def rref(rows: list[list], field, ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form in place of a copy; returns (nonzero rows, pivot cols)."""
    rows = [row[:] for row in rows]
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    one = field.one
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        pv = prow[c]
        if pv != one:
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] / pv
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                row = rows[i]
                for j in range(c, ncols):
                    pj = prow[j]
                    if pj:
                        row[j] = row[j] - f * pj
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def solve_in_span(target: list, generators: list[list], field) -> list | None:
    """Coefficients c with sum_i c_i * generators[i] = target, or None.

    The returned solution is the RREF particular solution: free variables
    are pinned to zero, so it is unique and reproducible.
    """
    n = len(target)
    for g in generators:
        if len(g) != n:
            raise LinAlgError("solve_in_span: ambient dimension mismatch")
    ng = len(generators)
    rows = [[g[r] for g in generators] + [target[r]] for r in range(n)]
    red, pivots = rref(rows, field, ng + 1)
    if pivots and pivots[-1] == ng:
        return None
    zero = field.zero
    coeffs = [zero] * ng
    for i, c in enumerate(pivots):
        coeffs[c] = red[i][ng]
    return coeffs


def nullspace(rows: list[list], field, ncols: int) -> list[list]:
    """Canonical basis of {x : rows @ x = 0}, ordered by ascending free column."""
    red, pivots = rref(rows, field, ncols)
    pivot_set = set(pivots)
    zero, one = field.zero, field.one
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [zero] * ncols
        v[f] = one
        for i, p in enumerate(pivots):
            x = red[i][f]
            if x:
                v[p] = -x
        basis.append(v)
    return basis


class Subspace:
    """A subspace of a coordinate space, stored as the unique RREF basis of itself."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field, ambient_dim: int, basis: list[list], pivots: list[int]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, field, ambient_dim: int, vectors: list[list]) -> "Subspace":
        for v in vectors:
            if len(v) != ambient_dim:
                raise LinAlgError("span: ambient dimension mismatch")
        basis, pivots = rref(vectors, field, ambient_dim)
        return cls(field, ambient_dim, basis, pivots)

    @classmethod
    def zero(cls, field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, [], [])

    @classmethod
    def full(cls, field, ambient_dim: int) -> "Subspace":
        eye = Matrix.identity(field, ambient_dim)
        return cls(field, ambient_dim, eye.data, list(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, vec: list) -> list:
        """Subtract the projection onto this subspace along its pivot columns."""
        if len(vec) != self.ambient_dim:
            raise LinAlgError("reduce: ambient dimension mismatch")
        v = vec[:]
        for row, p in zip(self.basis, self.pivots):
            f = v[p]
            if f:
                for j in range(p, self.ambient_dim):
                    rj = row[j]
                    if rj:
                        v[j] = v[j] - f * rj
        return v

    def contains(self, vec: list) -> bool:
        return all(not x for x in self.reduce(vec))

    def is_contained_in(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.field == other.field and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, tuple(tuple(r) for r in self.basis)))

    def sum_with(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise LinAlgError("sum: ambient dimension mismatch")
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: rref of [[U,U],[V,0]] leaves the intersection in the
        # right half of the rows whose left half vanished.
        if self.ambient_dim != other.ambient_dim:
            raise LinAlgError("intersect: ambient dimension mismatch")
        n = self.ambient_dim
        zero = self.field.zero
        rows = [u[:] + u[:] for u in self.basis]
        rows += [v[:] + [zero] * n for v in other.basis]
        red, _ = rref(rows, self.field, 2 * n)
        inter = [row[n:] for row in red if all(not x for x in row[:n])]
        return Subspace.span(self.field, n, inter)

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"


class Quotient:
    """A coordinate realization of ambient/relations.

    Quotient coordinates are indexed by the non-pivot columns of the
    relations' RREF in ascending order; ``projection @ section`` is the
    identity and ``projection`` kills exactly the relation subspace.
    """

    __slots__ = ("field", "ambient_dim", "dim", "projection", "section", "relations")

    def __init__(self, field, ambient_dim, dim, projection, section, relations):
        self.field = field
        self.ambient_dim = ambient_dim
        self.dim = dim
        self.projection = projection
        self.section = section
        self.relations = relations

    def project(self, vec: list) -> list:
        return self.projection.apply(vec)

    def lift(self, coords: list) -> list:
        return self.section.apply(coords)

    def induced(self, ambient_map: Matrix) -> Matrix:
        """Induced map on the quotient; valid when ambient_map preserves the relations."""
        return self.projection @ ambient_map @ self.section


def quotient_structure(ambient_dim: int, relations: Subspace) -> Quotient:
    if relations.ambient_dim != ambient_dim:
        raise LinAlgError("quotient: ambient dimension mismatch")
    field = relations.field
    pivot_set = set(relations.pivots)
    free = [c for c in range(ambient_dim) if c not in pivot_set]
    q = len(free)
    zero, one = field.zero, field.one
    proj = Matrix.zeros(field, q, ambient_dim)
    for qi, f in enumerate(free):
        proj.data[qi][f] = one
    for row, p in zip(relations.basis, relations.pivots):
        for qi, f in enumerate(free):
            x = row[f]
            if x:
                proj.data[qi][p] = -x
    sect = Matrix.zeros(field, ambient_dim, q)
    for qi, f in enumerate(free):
        sect.data[f][qi] = one
    return Quotient(field, ambient_dim, q, proj, sect, relations)
