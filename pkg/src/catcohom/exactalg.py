"""Exact linear algebra over the integers and the rationals.

Everything here is exact: entries are Python ints (ring "Z") or ints mixed
with ``fractions.Fraction`` (ring "Q").  No floating point is used anywhere.
The matrix convention is fixed repo-wide: columns index the source basis,
rows index the target basis, so a composite "first f then g" is the product
``g_matrix * f_matrix``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    DegreeOutOfRange,
    InternalInvariantError,
    MalformedInput,
    NonFunctorialDiagram,
    RingUnsupported,
)
from .fincat import FinCat

RING_Z = "Z"
RING_Q = "Q"


def _check_ring(ring: str) -> str:
    if ring not in (RING_Z, RING_Q):
        raise RingUnsupported(f"unsupported ring {ring!r}")
    return ring


class Matrix:
    """Immutable exact matrix with explicit shape (0 rows or columns allowed)."""

    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, ring: str, rows: int, cols: int, data: Sequence[Sequence]):
        self.ring = _check_ring(ring)
        self.rows = rows
        self.cols = cols
        data = tuple(tuple(r) for r in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise MalformedInput(f"matrix data does not match shape {rows}x{cols}")
        if ring == RING_Z:
            for r in data:
                for x in r:
                    if not isinstance(x, int):
                        raise MalformedInput("integer matrix with non-integer entry")
        else:
            for r in data:
                for x in r:
                    if not isinstance(x, (int, Fraction)):
                        raise MalformedInput("rational matrix with inexact entry")
        self.data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ring: str = RING_Z,
                  cols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(ring, len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int, ring: str = RING_Z) -> "Matrix":
        return cls(ring, rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int, ring: str = RING_Z) -> "Matrix":
        return cls(ring, n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            self.data == other.data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Matrix({self.ring}, {self.rows}x{self.cols}, {self.data!r})"

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise MalformedInput(
                f"shape mismatch in product: {self.rows}x{self.cols} * "
                f"{other.rows}x{other.cols}"
            )
        ring = RING_Q if RING_Q in (self.ring, other.ring) else RING_Z
        nc = other.cols
        od = other.data
        out = []
        for r in self.data:
            acc = [0] * nc
            for k, v in enumerate(r):
                if v == 0:
                    continue
                row_k = od[k]
                if v == 1:
                    for j in range(nc):
                        acc[j] += row_k[j]
                elif v == -1:
                    for j in range(nc):
                        acc[j] -= row_k[j]
                else:
                    for j in range(nc):
                        acc[j] += v * row_k[j]
            out.append(acc)
        return Matrix(ring, self.rows, nc, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise MalformedInput("shape mismatch in sum")
        ring = RING_Q if RING_Q in (self.ring, other.ring) else RING_Z
        return Matrix(ring, self.rows, self.cols,
                      [[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.ring, self.rows, self.cols,
                      [[-a for a in r] for r in self.data])

    def scale(self, c) -> "Matrix":
        ring = RING_Q if isinstance(c, Fraction) else self.ring
        return Matrix(ring, self.rows, self.cols,
                      [[c * a for a in r] for r in self.data])

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, self.cols, self.rows,
                      list(zip(*self.data)) if self.rows else [[] for _ in range(self.cols)])

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def to_ring(self, ring: str) -> "Matrix":
        _check_ring(ring)
        if ring == RING_Z and self.ring == RING_Q:
            out = []
            for r in self.data:
                row = []
                for x in r:
                    f = Fraction(x)
                    if f.denominator != 1:
                        raise MalformedInput("matrix entry is not an integer")
                    row.append(int(f))
                out.append(row)
            return Matrix(RING_Z, self.rows, self.cols, out)
        return Matrix(ring, self.rows, self.cols, self.data)

    def column(self, j: int) -> list:
        return [r[j] for r in self.data]


def hjoin(mats: Sequence[Matrix]) -> Matrix:
    """Horizontal concatenation; all blocks must share a row count."""
    rows = mats[0].rows
    ring = RING_Q if any(m.ring == RING_Q for m in mats) else RING_Z
    data = [[] for _ in range(rows)]
    for m in mats:
        if m.rows != rows:
            raise MalformedInput("hjoin with differing row counts")
        for i in range(rows):
            data[i].extend(m.data[i])
    return Matrix(ring, rows, sum(m.cols for m in mats), data)


def assemble_blocks(
    row_dims: Sequence[int],
    col_dims: Sequence[int],
    blocks: dict[tuple[int, int], Matrix],
    ring: str,
) -> Matrix:
    """Materialize a block-sparse matrix keyed by (row block, column block)."""
    roff = [0]
    for d in row_dims:
        roff.append(roff[-1] + d)
    coff = [0]
    for d in col_dims:
        coff.append(coff[-1] + d)
    data = [[0] * coff[-1] for _ in range(roff[-1])]
    for (bi, bj), m in blocks.items():
        if m.rows != row_dims[bi] or m.cols != col_dims[bj]:
            raise InternalInvariantError("block shape mismatch during assembly")
        r0, c0 = roff[bi], coff[bj]
        for i, row in enumerate(m.data):
            tr = data[r0 + i]
            for j, x in enumerate(row):
                tr[c0 + j] = x
    return Matrix(ring, roff[-1], coff[-1], data)


# -- rank, kernels, solving -------------------------------------------------


def _is_int_matrix(A: Matrix) -> bool:
    return all(isinstance(x, int) for r in A.data for x in r)


def _rank_bareiss(data: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; entries stay integral."""
    rows = [r[:] for r in data]
    m = len(rows)
    n = len(rows[0]) if m else 0
    rank = 0
    prev = 1
    for col in range(n):
        piv = None
        for i in range(rank, m):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        rr = rows[rank]
        p = rr[col]
        for i in range(rank + 1, m):
            ri = rows[i]
            f = ri[col]
            if f == 0:
                if prev != 1:
                    rows[i] = [(x * p) // prev for x in ri]
                elif p != 1:
                    rows[i] = [x * p for x in ri]
                continue
            if prev == 1:
                rows[i] = [x * p - f * y for x, y in zip(ri, rr)]
            else:
                rows[i] = [(x * p - f * y) // prev for x, y in zip(ri, rr)]
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def _echelon_q(data: list[list[Fraction]]):
    """Row reduce over Q; returns (reduced rows, pivot column list)."""
    rows = [[Fraction(x) for x in r] for r in data]
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def rank_exact(A: Matrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    if _is_int_matrix(A):
        return _rank_bareiss([list(r) for r in A.data])
    return len(_echelon_q([list(r) for r in A.data])[1])


def kernel_basis_q(A: Matrix) -> Matrix:
    """Columns form a basis of ker(A) over Q."""
    if A.cols == 0:
        return Matrix(RING_Q, 0, 0, [])
    if A.rows == 0:
        return Matrix.identity(A.cols, RING_Q)
    rows, pivots = _echelon_q([list(r) for r in A.data])
    free = [c for c in range(A.cols) if c not in pivots]
    cols = []
    for fc in free:
        v = [Fraction(0)] * A.cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        cols.append(v)
    data = [[cols[k][i] for k in range(len(cols))] for i in range(A.cols)]
    return Matrix(RING_Q, A.cols, len(cols), data)


def column_space_basis_q(A: Matrix) -> Matrix:
    """Columns form a basis of the column space of A over Q."""
    if A.cols == 0 or A.rows == 0:
        return Matrix(RING_Q, A.rows, 0, [[] for _ in range(A.rows)])
    _, pivots = _echelon_q([list(r) for r in A.data])
    data = [[A.data[i][j] for j in pivots] for i in range(A.rows)]
    return Matrix(RING_Q, A.rows, len(pivots), data)


def solve_exact(A: Matrix, B: Matrix) -> Matrix:
    """Solve A X = B over Q; raises if the system is inconsistent."""
    if A.rows != B.rows:
        raise MalformedInput("shape mismatch in solve")
    aug = [list(ra) + list(rb) for ra, rb in zip(A.data, B.data)]
    if A.rows == 0:
        return Matrix.zeros(A.cols, B.cols, RING_Q)
    rows, pivots = _echelon_q(aug)
    for r in range(len(pivots), A.rows):
        if any(x != 0 for x in rows[r][A.cols:]):
            raise MalformedInput("inconsistent linear system")
        if any(x != 0 for x in rows[r][: A.cols]):  # pragma: no cover
            raise InternalInvariantError("echelon form broke")
    if any(p >= A.cols for p in pivots):
        raise MalformedInput("inconsistent linear system")
    X = [[Fraction(0)] * B.cols for _ in range(A.cols)]
    for r, pc in enumerate(pivots):
        for j in range(B.cols):
            X[pc][j] = rows[r][A.cols + j]
    return Matrix(RING_Q, A.cols, B.cols, X)


def determinant(A: Matrix) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    if A.rows != A.cols:
        raise MalformedInput("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    rows = [list(r) for r in A.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if piv is None:
                return 0
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return sign * rows[n - 1][n - 1]


# -- Smith normal form -------------------------------------------------------


def smith_normal_form(A: Matrix, verify: bool = False):
    """Diagonalize an integer matrix: returns (U, D, V) with U·A·V = D.

    U and V are unimodular and the diagonal of D is a nonnegative
    divisibility chain d1 | d2 | ...  With ``verify`` the postconditions are
    re-checked by exact multiplication (used by the test suite).
    """
    if A.ring != RING_Z or not _is_int_matrix(A):
        raise RingUnsupported("Smith normal form needs an integer matrix")
    m, n = A.rows, A.cols
    S = [list(r) for r in A.data]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, k, q):  # row_i -= q * row_k
        Si, Sk = S[i], S[k]
        Ui, Uk = U[i], U[k]
        for j in range(n):
            Si[j] -= q * Sk[j]
        for j in range(m):
            Ui[j] -= q * Uk[j]

    def col_op(j, k, q):  # col_j -= q * col_k
        for r in S:
            r[j] -= q * r[k]
        for r in V:
            r[j] -= q * r[k]

    t = 0
    while t < min(m, n):
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = S[i][j]
                if v != 0 and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
        if piv is None:
            break
        while True:
            pi, pj = piv
            if pi != t:
                S[t], S[pi] = S[pi], S[t]
                U[t], U[pi] = U[pi], U[t]
            if pj != t:
                for r in S:
                    r[t], r[pj] = r[pj], r[t]
                for r in V:
                    r[t], r[pj] = r[pj], r[t]
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t] != 0:
                    row_op(i, t, S[i][t] // p)
                    if S[i][t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if S[t][j] != 0:
                    col_op(j, t, S[t][j] // p)
                    if S[t][j] != 0:
                        dirty = True
            if not dirty:
                # cross is clear; enforce divisibility into the rest
                offender = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if S[i][j] % p != 0:
                            offender = i
                            break
                    if offender is not None:
                        break
                if offender is None:
                    break
                for j in range(n):
                    S[t][j] += S[offender][j]
                for j in range(m):
                    U[t][j] += U[offender][j]
            piv = None
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = S[i][j]
                    if v != 0 and (best is None or abs(v) < best):
                        best = abs(v)
                        piv = (i, j)
        if S[t][t] < 0:
            for j in range(n):
                S[t][j] = -S[t][j]
            for j in range(m):
                U[t][j] = -U[t][j]
        t += 1

    Um = Matrix(RING_Z, m, m, U)
    Dm = Matrix(RING_Z, m, n, S)
    Vm = Matrix(RING_Z, n, n, V)
    if verify:
        if Um * A * Vm != Dm:
            raise InternalInvariantError("SNF postcondition U*A*V = D failed")
        if abs(determinant(Um)) != 1 or abs(determinant(Vm)) != 1:
            raise InternalInvariantError("SNF transform is not unimodular")
        diag = [Dm.data[i][i] for i in range(min(m, n))]
        for a, b in zip(diag, diag[1:]):
            if a == 0 and b != 0:
                raise InternalInvariantError("SNF zero before nonzero on diagonal")
            if a != 0 and b % a != 0:
                raise InternalInvariantError("SNF divisibility chain broken")
        for i in range(m):
            for j in range(n):
                if i != j and Dm.data[i][j] != 0:
                    raise InternalInvariantError("SNF result not diagonal")
    return Um, Dm, Vm


def invariant_factors(A: Matrix) -> list[int]:
    """Nonzero diagonal entries of the Smith form, in chain order."""
    _, D, _ = smith_normal_form(A)
    out = []
    for i in range(min(D.rows, D.cols)):
        d = D.data[i][i]
        if d != 0:
            out.append(d)
    return out


def kernel_basis_z(A: Matrix) -> Matrix:
    """Columns form a Z-basis of the kernel lattice of an integer matrix."""
    if A.cols == 0:
        return Matrix(RING_Z, 0, 0, [])
    if A.rows == 0:
        return Matrix.identity(A.cols, RING_Z)
    _, D, V = smith_normal_form(A)
    r = sum(1 for i in range(min(D.rows, D.cols)) if D.data[i][i] != 0)
    data = [[V.data[i][j] for j in range(r, A.cols)] for i in range(A.cols)]
    return Matrix(RING_Z, A.cols, A.cols - r, data)


# -- homology groups and bounded complexes -----------------------------------


@dataclass(frozen=True)
class HomologyGroup:
    """Free rank plus invariant factors d1 | d2 | ... (each > 1).

    Over the rationals the torsion list is empty by construction.
    ``truncation_unsafe`` marks a top-degree answer computed without the
    next differential; it is excluded from equality.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()
    truncation_unsafe: bool = field(default=False, compare=False)

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise InternalInvariantError("torsion is not a divisibility chain")
        if any(d <= 1 for d in self.torsion):
            raise InternalInvariantError("trivial invariant factor reported")

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


COCHAIN = "cochain"
CHAIN = "chain"


@dataclass(frozen=True)
class IntComplex:
    """A bounded complex of free modules in degrees 0..N.

    For orientation "cochain", ``diffs[i]`` maps degree i to i+1; for
    "chain" it maps degree i+1 to i.  Consecutive composites are checked to
    vanish on construction.
    """

    ring: str
    orientation: str
    dims: tuple[int, ...]
    diffs: tuple[Matrix, ...]

    def __post_init__(self):
        _check_ring(self.ring)
        if self.orientation not in (COCHAIN, CHAIN):
            raise MalformedInput("orientation must be cochain or chain")
        if len(self.diffs) != max(len(self.dims) - 1, 0):
            raise MalformedInput("wrong number of differentials")
        for i, d in enumerate(self.diffs):
            lo, hi = self.dims[i], self.dims[i + 1]
            want = (hi, lo) if self.orientation == COCHAIN else (lo, hi)
            if (d.rows, d.cols) != want:
                raise MalformedInput(f"differential {i} has shape {d.rows}x{d.cols}, "
                                     f"expected {want[0]}x{want[1]}")
        for i in range(len(self.diffs) - 1):
            if self.orientation == COCHAIN:
                prod = self.diffs[i + 1] * self.diffs[i]
            else:
                prod = self.diffs[i] * self.diffs[i + 1]
            if not prod.is_zero():
                raise InternalInvariantError(f"d∘d != 0 between degrees {i} and {i + 2}")

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1


def complex_homology(K: IntComplex, n: int) -> HomologyGroup:
    """Homology of K at degree n: kernel modulo image via SNF or rank counts.

    At the top assembled degree the outgoing (cochain) resp. incoming
    (chain) differential is unknown; the answer is flagged
    ``truncation_unsafe`` rather than rejected.
    """
    N = K.top_degree
    if not 0 <= n <= N:
        raise DegreeOutOfRange(f"degree {n} outside 0..{N}")
    if K.orientation == COCHAIN:
        out = K.diffs[n] if n < N else None      # d^n, kernel of
        into = K.diffs[n - 1] if n >= 1 else None  # d^{n-1}, image of
        unsafe = n == N
    else:
        out = K.diffs[n - 1] if n >= 1 else None   # d_n, kernel of
        into = K.diffs[n] if n < N else None       # d_{n+1}, image of
        unsafe = n == N
    c = K.dims[n]
    rank_out = rank_exact(out) if out is not None else 0
    rank_in = rank_exact(into) if into is not None else 0
    free = c - rank_out - rank_in
    if free < 0:
        raise InternalInvariantError("negative free rank; complex is inconsistent")
    if K.ring == RING_Z and into is not None:
        torsion = tuple(d for d in invariant_factors(into) if d > 1)
    else:
        torsion = ()
    return HomologyGroup(free, torsion, truncation_unsafe=unsafe)


# -- finite diagrams of free modules ------------------------------------------


@dataclass(frozen=True)
class ModuleDiagram:
    """A functor from a finite category to free modules, given by tables.

    ``ranks[x]`` is the rank at object x; ``mats[m]`` is the matrix of
    morphism m.  Covariant: mats[m]: ranks[src m] -> ranks[dst m].
    Contravariant: mats[m]: ranks[dst m] -> ranks[src m].  Identity and
    composition laws are verified exhaustively.
    """

    cat: FinCat
    ring: str
    ranks: tuple[int, ...]
    mats: tuple[Matrix, ...]
    contravariant: bool = False

    def __post_init__(self):
        C = self.cat
        _check_ring(self.ring)
        if len(self.ranks) != C.n_objects or len(self.mats) != C.n_morphisms:
            raise NonFunctorialDiagram("tables do not cover the index category")
        for m in range(C.n_morphisms):
            a, b = C.mor_src[m], C.mor_dst[m]
            want = (self.ranks[b], self.ranks[a]) if not self.contravariant \
                else (self.ranks[a], self.ranks[b])
            M = self.mats[m]
            if (M.rows, M.cols) != want:
                raise NonFunctorialDiagram(
                    f"matrix of {C.mor_names[m]} has shape {M.rows}x{M.cols}, "
                    f"expected {want[0]}x{want[1]}"
                )
        for x in range(C.n_objects):
            if self.mats[C.identity[x]] != Matrix.identity(self.ranks[x], self.ring):
                raise NonFunctorialDiagram(f"identity of {C.objects[x]} is not the identity matrix")
        for f in range(C.n_morphisms):
            for g in range(C.n_morphisms):
                if not C.defined(g, f):
                    continue
                gf = C.table[g][f]
                if self.contravariant:
                    expect = self.mats[f] * self.mats[g]
                else:
                    expect = self.mats[g] * self.mats[f]
                if self.mats[gf] != expect:
                    raise NonFunctorialDiagram(
                        f"composition fails on ({C.mor_names[g]}, {C.mor_names[f]})"
                    )

    def rank(self, x: int) -> int:
        return self.ranks[x]

    def mat(self, m: int) -> Matrix:
        return self.mats[m]


def constant_diagram(C: FinCat, rank: int, ring: str = RING_Z,
                     contravariant: bool = False) -> ModuleDiagram:
    return ModuleDiagram(
        C, ring, (rank,) * C.n_objects,
        tuple(Matrix.identity(rank, ring) for _ in range(C.n_morphisms)),
        contravariant,
    )


def pull_diagram(F: ModuleDiagram, u) -> ModuleDiagram:
    """Precompose a diagram with a functor into its index category."""
    if u.target != F.cat:
        raise NonFunctorialDiagram("functor target does not match the diagram")
    return ModuleDiagram(
        u.source, F.ring,
        tuple(F.ranks[u.obj_map[x]] for x in range(u.source.n_objects)),
        tuple(F.mats[u.mor_map[m]] for m in range(u.source.n_morphisms)),
        F.contravariant,
    )


@dataclass(frozen=True)
class LimitResult:
    group: HomologyGroup
    kernel: Matrix               # columns: basis of the limit inside ∏ F(j)
    projections: tuple[Matrix, ...]  # cone map to each F(j)


def _difference_map(F: ModuleDiagram) -> tuple[Matrix, list[int], list[int]]:
    """Map ∏_j F(j) -> ∏_{m: a->b} F(b), x ↦ (F(m) x_a - x_b)."""
    C = F.cat
    col_dims = list(F.ranks)
    row_dims = [F.ranks[C.mor_dst[m]] for m in range(C.n_morphisms)]
    blocks: dict[tuple[int, int], Matrix] = {}
    for m in range(C.n_morphisms):
        a, b = C.mor_src[m], C.mor_dst[m]
        blocks[(m, a)] = F.mats[m]
        eb = -Matrix.identity(F.ranks[b], F.ring)
        blocks[(m, b)] = blocks.get((m, b), Matrix.zeros(F.ranks[b], F.ranks[b], F.ring)) + eb
    return assemble_blocks(row_dims, col_dims, blocks, F.ring), row_dims, col_dims


def finite_limit(F: ModuleDiagram) -> LimitResult:
    """Limit of a covariant diagram as the kernel of the difference map."""
    if F.contravariant:
        raise NonFunctorialDiagram("finite_limit expects a covariant diagram")
    D, _, col_dims = _difference_map(F)
    K = kernel_basis_z(D.to_ring(RING_Z)) if F.ring == RING_Z and _is_int_matrix(D) \
        else kernel_basis_q(D)
    offs = [0]
    for d in col_dims:
        offs.append(offs[-1] + d)
    projections = []
    for j, d in enumerate(col_dims):
        rows = [K.data[offs[j] + i] for i in range(d)]
        projections.append(Matrix(K.ring, d, K.cols, rows))
    return LimitResult(HomologyGroup(K.cols, ()), K, tuple(projections))


def finite_colimit(F: ModuleDiagram) -> HomologyGroup:
    """Colimit of a covariant diagram as the cokernel of the difference map."""
    if F.contravariant:
        raise NonFunctorialDiagram("finite_colimit expects a covariant diagram")
    C = F.cat
    # ⊕_{m: a->b} F(a) -> ⊕_j F(j), y_m ↦ inj_b(F(m) y) - inj_a(y)
    col_dims = [F.ranks[C.mor_src[m]] for m in range(C.n_morphisms)]
    row_dims = list(F.ranks)
    blocks: dict[tuple[int, int], Matrix] = {}
    for m in range(C.n_morphisms):
        a, b = C.mor_src[m], C.mor_dst[m]
        blocks[(b, m)] = blocks.get((b, m), Matrix.zeros(F.ranks[b], F.ranks[a], F.ring)) + F.mats[m]
        blocks[(a, m)] = blocks.get((a, m), Matrix.zeros(F.ranks[a], F.ranks[a], F.ring)) + \
            (-Matrix.identity(F.ranks[a], F.ring))
    D = assemble_blocks(row_dims, col_dims, blocks, F.ring)
    total = sum(row_dims)
    if F.ring == RING_Z:
        facs = invariant_factors(D.to_ring(RING_Z))
        free = total - len(facs)
        return HomologyGroup(free, tuple(d for d in facs if d > 1))
    return HomologyGroup(total - rank_exact(D), ())
