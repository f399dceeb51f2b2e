"""Finite-dimensional associative algebras given by structure constants.

Vectors are coordinate lists over an exact field; multiplication tables are
stored sparsely (dict per basis pair) because group-algebra-like inputs and
all tower levels built from them stay very sparse, while solves run dense.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional

from .fields import Field
from .linalg import (
    DimensionError,
    Matrix,
    basis_vector,
    kernel_basis,
    rref,
    solve,
    stack,
    vec_eq,
    vec_is_zero,
)


class AlgebraError(ValueError):
    """Inconsistent algebra, module or subspace data."""


# ---------------------------------------------------------------------------
# linear maps
# ---------------------------------------------------------------------------


@dataclass
class LinMap:
    """Linear map between coordinate spaces; matrix is codomain x domain."""

    matrix: Matrix

    @property
    def domain_dim(self) -> int:
        return self.matrix.cols

    @property
    def codomain_dim(self) -> int:
        return self.matrix.rows

    def apply(self, v: list) -> list:
        return self.matrix.matvec(v)

    def compose(self, inner: "LinMap") -> "LinMap":
        """self after inner."""
        return LinMap(self.matrix.mul(inner.matrix))

    @classmethod
    def from_columns(cls, field: Field, columns: list[list]) -> "LinMap":
        if not columns:
            raise DimensionError("LinMap with no columns")
        rows = len(columns[0])
        data = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls(Matrix(field, data))

    @classmethod
    def identity(cls, field: Field, n: int) -> "LinMap":
        return cls(Matrix.identity(field, n))


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------


class Algebra:
    """Associative unital algebra over an exact field.

    table[i][j] is a sparse dict {k: c} with e_i e_j = sum_k c e_k.
    """

    __slots__ = ("field", "dim", "unit", "table")

    def __init__(self, field: Field, dim: int, table: list[list[dict]], unit: list):
        self.field = field
        self.dim = dim
        self.table = table
        self.unit = unit

    @classmethod
    def from_entries(
        cls, field: Field, dim: int, entries: Iterable[tuple[int, int, int, object]], unit: list
    ) -> "Algebra":
        table: list[list[dict]] = [[{} for _ in range(dim)] for _ in range(dim)]
        for i, j, k, c in entries:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise AlgebraError(f"structure constant index out of range: {(i, j, k)}")
            if field.is_zero(c):
                continue
            cell = table[i][j]
            c = field.add(cell.get(k, field.zero), c)
            if field.is_zero(c):
                cell.pop(k, None)
            else:
                cell[k] = c
        return cls(field, dim, table, list(unit))

    def entries(self) -> list[tuple[int, int, int, object]]:
        out = []
        for i in range(self.dim):
            for j in range(self.dim):
                for k in sorted(self.table[i][j]):
                    out.append((i, j, k, self.table[i][j][k]))
        return out

    # -- products -------------------------------------------------------
    def mul_sparse(self, x: dict, y: dict) -> dict:
        f = self.field
        fadd, fmul = f.add, f.mul
        zero = f.zero
        out: dict = {}
        table = self.table
        for i, xi in x.items():
            row = table[i]
            for j, yj in y.items():
                c = fmul(xi, yj)
                for k, t in row[j].items():
                    v = fadd(out.get(k, zero), fmul(c, t))
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def to_sparse(self, v: list) -> dict:
        return {i: c for i, c in enumerate(v) if c}

    def to_dense(self, d: dict) -> list:
        v = [self.field.zero] * self.dim
        for i, c in d.items():
            v[i] = c
        return v

    def mul(self, x: list, y: list) -> list:
        return self.to_dense(self.mul_sparse(self.to_sparse(x), self.to_sparse(y)))

    def lmul_matrix(self, x: list) -> Matrix:
        """Matrix of left multiplication by x."""
        f = self.field
        cols = []
        xs = self.to_sparse(x)
        for j in range(self.dim):
            cols.append(self.to_dense(self.mul_sparse(xs, {j: f.one})))
        return Matrix(f, [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def rmul_matrix(self, x: list) -> Matrix:
        f = self.field
        xs = self.to_sparse(x)
        cols = []
        for j in range(self.dim):
            cols.append(self.to_dense(self.mul_sparse({j: f.one}, xs)))
        return Matrix(f, [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def power(self, x: list, n: int) -> list:
        out = list(self.unit)
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def commutes(self, x: list, y: list) -> bool:
        return vec_eq(self.field, self.mul(x, y), self.mul(y, x))

    def multiplication_matrix(self) -> Matrix:
        """mu as a dim x dim^2 matrix, columns indexed by (i, j) row-major."""
        f = self.field
        m = Matrix.zero(f, self.dim, self.dim * self.dim)
        for i in range(self.dim):
            for j in range(self.dim):
                for k, c in self.table[i][j].items():
                    m.data[k][i * self.dim + j] = c
        return m


@dataclass
class AlgebraReport:
    ok: bool
    unit_failures: list
    assoc_failures: list

    def summary(self) -> str:
        if self.ok:
            return "algebra axioms hold on all basis pairs/triples"
        return (
            f"{len(self.unit_failures)} unit failure(s), "
            f"{len(self.assoc_failures)} associativity failure(s); "
            f"first: {self.unit_failures[:1] or self.assoc_failures[:1]}"
        )


def verify_algebra(alg: Algebra, max_failures: int = 5) -> AlgebraReport:
    """Check unit laws on all basis elements and associativity on all triples."""
    f = alg.field
    unit_failures = []
    us = alg.to_sparse(alg.unit)
    for i in range(alg.dim):
        ei = {i: f.one}
        left = alg.mul_sparse(us, ei)
        right = alg.mul_sparse(ei, us)
        if left != ei or right != ei:
            unit_failures.append({"basis": i, "left": left, "right": right})
            if len(unit_failures) >= max_failures:
                break
    assoc_failures = []
    table = alg.table
    for i in range(alg.dim):
        for j in range(alg.dim):
            v = table[i][j]
            for k in range(alg.dim):
                lhs = alg.mul_sparse(v, {k: f.one})
                rhs = alg.mul_sparse({i: f.one}, table[j][k])
                if lhs != rhs:
                    assoc_failures.append(
                        {"triple": (i, j, k), "lhs": lhs, "rhs": rhs}
                    )
                    if len(assoc_failures) >= max_failures:
                        return AlgebraReport(False, unit_failures, assoc_failures)
    ok = not unit_failures and not assoc_failures
    return AlgebraReport(ok, unit_failures, assoc_failures)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


class SubspaceBasis:
    """Linearly independent vectors inside an ambient algebra.

    Computed subspaces are canonicalised to RREF; user-supplied embeddings keep
    their original basis (coordinates of attached maps refer to it) and only
    the internal reduced form is canonical.
    """

    def __init__(self, ambient: Algebra, vectors: list[list], canonicalize: bool = False):
        self.ambient = ambient
        f = ambient.field
        mat = Matrix(f, [list(v) for v in vectors]) if vectors else Matrix.zero(f, 0, ambient.dim)
        red, pivots = rref(mat)
        if len(pivots) != len(vectors):
            raise AlgebraError("subspace basis vectors are dependent")
        self._rref_rows = red.data[: len(pivots)]
        self._pivots = pivots
        self.vectors = [list(r) for r in self._rref_rows] if canonicalize else [list(v) for v in vectors]
        self._coord_solver: Optional[Matrix] = None

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def _reduce(self, v: list) -> list:
        f = self.ambient.field
        w = list(v)
        for row, pc in zip(self._rref_rows, self._pivots):
            c = w[pc]
            if not f.is_zero(c):
                w = [f.sub(x, f.mul(c, y)) for x, y in zip(w, row)]
        return w

    def contains(self, v: list) -> bool:
        return vec_is_zero(self.ambient.field, self._reduce(v))

    def coords(self, v: list) -> Optional[list]:
        """Coordinates of v in self.vectors, or None when v is outside."""
        f = self.ambient.field
        if not self.contains(v):
            return None
        if self._coord_solver is None:
            self._coord_solver = Matrix(
                f, [[self.vectors[j][i] for j in range(self.dim)] for i in range(self.ambient.dim)]
            )
        res = solve(self._coord_solver, v)
        assert res is not None
        return res[0]

    def equals(self, other: "SubspaceBasis") -> bool:
        return (
            self._pivots == other._pivots
            and all(vec_eq(self.ambient.field, a, b) for a, b in zip(self._rref_rows, other._rref_rows))
        )

    def contains_subspace(self, other: "SubspaceBasis") -> bool:
        return all(self.contains(v) for v in other.vectors)

    def is_unital_subalgebra(self) -> bool:
        alg = self.ambient
        if not self.contains(alg.unit):
            return False
        for x in self.vectors:
            for y in self.vectors:
                if not self.contains(alg.mul(x, y)):
                    return False
        return True

    def induced_algebra(self) -> tuple[Algebra, LinMap]:
        """Algebra structure on this subspace plus the embedding map."""
        alg = self.ambient
        f = alg.field
        entries = []
        for i, x in enumerate(self.vectors):
            for j, y in enumerate(self.vectors):
                coords = self.coords(alg.mul(x, y))
                if coords is None:
                    raise AlgebraError("subspace not closed under multiplication")
                for k, c in enumerate(coords):
                    if not f.is_zero(c):
                        entries.append((i, j, k, c))
        unit = self.coords(alg.unit)
        if unit is None:
            raise AlgebraError("subspace does not contain the unit")
        sub = Algebra.from_entries(f, self.dim, entries, unit)
        embed = LinMap.from_columns(f, [list(v) for v in self.vectors])
        return sub, embed

    @classmethod
    def from_spanning(cls, ambient: Algebra, vectors: list[list]) -> "SubspaceBasis":
        """Canonical subspace from a spanning set (RREF rows)."""
        f = ambient.field
        if not vectors:
            return cls(ambient, [])
        red, pivots = rref(Matrix(f, [list(v) for v in vectors]))
        return cls(ambient, [list(red.data[r]) for r in range(len(pivots))], canonicalize=True)


def span_dim(field: Field, vectors: list[list]) -> int:
    if not vectors:
        return 0
    return len(rref(Matrix(field, [list(v) for v in vectors]))[1])


# ---------------------------------------------------------------------------
# centralizers
# ---------------------------------------------------------------------------


def centralizer(alg: Algebra, sub: SubspaceBasis, require_subalgebra: bool = True) -> SubspaceBasis:
    """Canonical basis of {x in alg : xs = sx for every s in sub}."""
    if require_subalgebra and not sub.is_unital_subalgebra():
        raise AlgebraError("centralizer: given subspace is not a unital subalgebra")
    blocks = [alg.lmul_matrix(s).sub(alg.rmul_matrix(s)) for s in sub.vectors]
    if not blocks:
        return SubspaceBasis(alg, [basis_vector(alg.field, alg.dim, i) for i in range(alg.dim)], canonicalize=True)
    sys_mat = stack(alg.field, blocks)
    basis = kernel_basis(sys_mat)
    out = SubspaceBasis.from_spanning(alg, basis)
    if not out.is_unital_subalgebra():
        raise AlgebraError("centralizer output failed closure check")
    return out


# ---------------------------------------------------------------------------
# quotient tensor product  M (x)_N M
# ---------------------------------------------------------------------------


class TensorQuotient:
    """M tensor M over a unital subalgebra N, as a quotient of M tensor_k M.

    The relation subspace span{mn (x) m' - m (x) nm'} is kept in sparse RREF;
    the canonical quotient basis consists of the non-pivot coordinates e_i(x)e_j,
    the projection reduces modulo the relations, and the section re-embeds
    representatives. projection(section) = id by construction.
    """

    def __init__(self, M: Algebra, N: SubspaceBasis):
        self.M = M
        self.N = N
        f = M.field
        d = M.dim
        self.amb_dim = d * d
        pivot_rows: dict[int, dict] = {}

        def reduce_row(row: dict) -> dict:
            while row:
                lead = min(row)
                if lead not in pivot_rows:
                    return row
                c = row[lead]
                piv = pivot_rows[lead]
                for col, val in piv.items():
                    v = f.sub(row.get(col, f.zero), f.mul(c, val))
                    if f.is_zero(v):
                        row.pop(col, None)
                    else:
                        row[col] = v
            return row

        for x in range(d):
            ex = {x: f.one}
            for n in N.vectors:
                ns = M.to_sparse(n)
                xn = M.mul_sparse(ex, ns)
                for y in range(d):
                    ny = M.mul_sparse(ns, {y: f.one})
                    row: dict = {}
                    for l, c in xn.items():
                        col = l * d + y
                        v = f.add(row.get(col, f.zero), c)
                        if f.is_zero(v):
                            row.pop(col, None)
                        else:
                            row[col] = v
                    for m, c in ny.items():
                        col = x * d + m
                        v = f.sub(row.get(col, f.zero), c)
                        if f.is_zero(v):
                            row.pop(col, None)
                        else:
                            row[col] = v
                    row = reduce_row(row)
                    if not row:
                        continue
                    lead = min(row)
                    inv = f.inv(row[lead])
                    row = {c: f.mul(inv, v) for c, v in row.items()}
                    for other in pivot_rows.values():
                        c = other.get(lead)
                        if c is not None:
                            for col, val in row.items():
                                v = f.sub(other.get(col, f.zero), f.mul(c, val))
                                if f.is_zero(v):
                                    other.pop(col, None)
                                else:
                                    other[col] = v
                    pivot_rows[lead] = row

        self._pivot_rows = pivot_rows
        pivset = set(pivot_rows)
        self.pairs = [(i, j) for i in range(d) for j in range(d) if i * d + j not in pivset]
        self.dim = len(self.pairs)
        self._pair_index = {i * d + j: c for c, (i, j) in enumerate(self.pairs)}

    def project_sparse(self, tensor: dict) -> dict:
        """Quotient coordinates of a sparse element of M tensor_k M."""
        f = self.M.field
        work = dict(tensor)
        out: dict = {}
        for col in sorted(work):
            c = work.get(col)
            if c is None or f.is_zero(c):
                continue
            piv = self._pivot_rows.get(col)
            if piv is None:
                continue
            for pcol, val in piv.items():
                v = f.sub(work.get(pcol, f.zero), f.mul(c, val))
                if f.is_zero(v):
                    work.pop(pcol, None)
                else:
                    work[pcol] = v
        for col, c in work.items():
            if f.is_zero(c):
                continue
            out[self._pair_index[col]] = c
        return out

    def project(self, tensor: dict) -> list:
        v = [self.M.field.zero] * self.dim
        for c, val in self.project_sparse(tensor).items():
            v[c] = val
        return v

    def section_sparse(self, coords: dict) -> dict:
        d = self.M.dim
        out = {}
        for c, val in coords.items():
            i, j = self.pairs[c]
            out[i * d + j] = val
        return out

    def pure_tensor(self, x: list, y: list) -> dict:
        """x tensor y as a sparse ambient element."""
        f = self.M.field
        d = self.M.dim
        out = {}
        for i, a in enumerate(x):
            if f.is_zero(a):
                continue
            for j, b in enumerate(y):
                if f.is_zero(b):
                    continue
                out[i * d + j] = f.mul(a, b)
        return out

    def project_pure(self, x: list, y: list) -> list:
        return self.project(self.pure_tensor(x, y))


def tensor_over_subalgebra(M: Algebra, N: SubspaceBasis) -> TensorQuotient:
    return TensorQuotient(M, N)


# ---------------------------------------------------------------------------
# endomorphism algebras of right modules
# ---------------------------------------------------------------------------


@dataclass
class EndomorphismAlgebra:
    algebra: Algebra
    basis_matrices: list[Matrix]
    _pivots: list[int] = dc_field(default_factory=list)
    _rref_rows: list[list] = dc_field(default_factory=list)

    def coords_of_matrix(self, mat: Matrix) -> Optional[list]:
        """Coordinates of an endomorphism in the canonical basis, or None."""
        f = self.algebra.field
        flat = [x for row in mat.data for x in row]
        coords = [flat[p] for p in self._pivots]
        resid = list(flat)
        for c, row in zip(coords, self._rref_rows):
            if f.is_zero(c):
                continue
            resid = [f.sub(a, f.mul(c, b)) for a, b in zip(resid, row)]
        if not vec_is_zero(f, resid):
            return None
        return coords


def module_axioms_ok(field: Field, action_mats: list[Matrix], sub_alg: Algebra) -> bool:
    """Right-module axioms: R_1 = id and R_{nn'} = R_{n'} R_n on basis pairs."""
    dim_v = action_mats[0].rows if action_mats else 0
    r_unit = Matrix.zero(field, dim_v, dim_v)
    for j, c in enumerate(sub_alg.unit):
        if not field.is_zero(c):
            r_unit = r_unit.add(action_mats[j].scale(c))
    if not r_unit == Matrix.identity(field, dim_v):
        return False
    for i in range(sub_alg.dim):
        for j in range(sub_alg.dim):
            prod = Matrix.zero(field, dim_v, dim_v)
            for k, c in sub_alg.table[i][j].items():
                prod = prod.add(action_mats[k].scale(c))
            if not prod == action_mats[j].mul(action_mats[i]):
                return False
    return True


def endomorphism_algebra(
    field: Field, dim_v: int, action_mats: list[Matrix], sub_alg: Algebra
) -> EndomorphismAlgebra:
    """Algebra of all endomorphisms commuting with the given right action.

    Raises AlgebraError when the module axioms fail.
    """
    if not module_axioms_ok(field, action_mats, sub_alg):
        raise AlgebraError("right-module axioms violated")
    n2 = dim_v * dim_v
    blocks = []
    for r in action_mats:
        # constraint X R = R X, unknown X flattened row-major
        block = Matrix.zero(field, n2, n2)
        for a in range(dim_v):
            for b in range(dim_v):
                rowidx = a * dim_v + b
                for c in range(dim_v):
                    block.data[rowidx][a * dim_v + c] = field.add(
                        block.data[rowidx][a * dim_v + c], r.data[c][b]
                    )
                    block.data[rowidx][c * dim_v + b] = field.sub(
                        block.data[rowidx][c * dim_v + b], r.data[a][c]
                    )
        blocks.append(block)
    if blocks:
        basis_flat = kernel_basis(stack(field, blocks))
    else:
        basis_flat = [basis_vector(field, n2, i) for i in range(n2)]
    red, pivots = rref(Matrix(field, basis_flat)) if basis_flat else (Matrix.zero(field, 0, n2), [])
    rows = [list(red.data[r]) for r in range(len(pivots))]
    mats = [Matrix(field, [row[i * dim_v : (i + 1) * dim_v] for i in range(dim_v)]) for row in rows]

    endo = EndomorphismAlgebra(None, mats, pivots, rows)  # type: ignore[arg-type]

    entries = []
    unit_coords = endo_coords(field, rows, pivots, Matrix.identity(field, dim_v))
    if unit_coords is None:
        raise AlgebraError("identity endomorphism escaped the solved basis")
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            coords = endo_coords(field, rows, pivots, a.mul(b))
            if coords is None:
                raise AlgebraError("endomorphism product escaped the solved basis")
            for k, c in enumerate(coords):
                if not field.is_zero(c):
                    entries.append((i, j, k, c))
    endo.algebra = Algebra.from_entries(field, len(mats), entries, unit_coords)
    return endo


def endo_coords(field: Field, rref_rows: list[list], pivots: list[int], mat: Matrix) -> Optional[list]:
    flat = [x for row in mat.data for x in row]
    coords = [flat[p] for p in pivots]
    resid = list(flat)
    for c, row in zip(coords, rref_rows):
        if field.is_zero(c):
            continue
        resid = [field.sub(a, field.mul(c, b)) for a, b in zip(resid, row)]
    if not vec_is_zero(field, resid):
        return None
    return coords


# ---------------------------------------------------------------------------
# morphism verification
# ---------------------------------------------------------------------------


@dataclass
class MorphismReport:
    is_homomorphism: bool
    is_isomorphism: bool
    failures: list

    def ok(self) -> bool:
        return self.is_homomorphism and self.is_isomorphism


def check_morphism(f_map: LinMap, A: Algebra, B: Algebra, max_failures: int = 5) -> MorphismReport:
    """Multiplicativity and unitality on all basis pairs; bijectivity via rank."""
    if f_map.domain_dim != A.dim or f_map.codomain_dim != B.dim:
        raise DimensionError("check_morphism: map shape does not match algebras")
    fld = A.field
    failures = []
    if not vec_eq(fld, f_map.apply(A.unit), B.unit):
        failures.append({"kind": "unit"})
    images = [f_map.apply(basis_vector(fld, A.dim, i)) for i in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = f_map.apply(A.to_dense(A.table[i][j]))
            rhs = B.mul(images[i], images[j])
            if not vec_eq(fld, lhs, rhs):
                failures.append({"kind": "mult", "pair": (i, j), "lhs": lhs, "rhs": rhs})
                if len(failures) >= max_failures:
                    break
        if len(failures) >= max_failures:
            break
    is_homo = not failures
    from .linalg import rank as _rank

    is_iso = is_homo and A.dim == B.dim and _rank(f_map.matrix) == A.dim
    return MorphismReport(is_homo, is_iso, failures)
