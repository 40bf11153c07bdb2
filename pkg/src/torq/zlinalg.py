"""Exact integer and rational linear algebra.

Everything here works on Python integers (arbitrary precision) and
:class:`fractions.Fraction`. Matrices are immutable :class:`IntMatrix`
values; vectors are plain tuples of ints.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import Iterable, Optional, Sequence

Vector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def content(v: Iterable[int]) -> int:
    """gcd of the entries (0 for the zero vector)."""
    return reduce(gcd, v, 0)


def primitive(v: Sequence[int]) -> Vector:
    """Divide ``v`` by the gcd of its entries. The zero vector is returned unchanged."""
    g = content(v)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    """True iff the gcd of the entries of the nonzero vector ``v`` is 1."""
    if not any(v):
        raise ValueError("is_primitive is undefined for the zero vector")
    return content(v) == 1


@dataclass(frozen=True)
class IntMatrix:
    """An integer matrix, read as a homomorphism ``Z^cols -> Z^rows``."""

    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError(
                f"entry count does not match declared shape {self.rows}x{self.cols}")
        for r in self.data:
            for x in r:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError(f"matrix entries must be integers, got {x!r}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: Optional[int] = None) -> IntMatrix:
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("cannot infer the column count of a matrix with no rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], rows: Optional[int] = None
                     ) -> IntMatrix:
        columns = [tuple(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("cannot infer the row count of a matrix with no columns")
            rows = len(columns[0])
        if not columns:
            return cls.zeros(rows, 0)
        return cls.from_rows(zip(*columns), len(columns)) if rows else cls(0, len(columns), ())

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else
                         tuple(() for _ in range(self.cols)))

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def __iter__(self):
        return iter(self.data)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.T.data
            return IntMatrix(self.rows, other.cols,
                             tuple(tuple(dot(r, c) for c in ocols) for r in self.data))
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError(f"cannot apply a {self.rows}x{self.cols} matrix "
                             f"to a vector of length {len(v)}")
        return tuple(dot(r, v) for r in self.data)

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(tuple(-x for x in r) for r in self.data))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(a + b for a, b in zip(r, s))
                               for r, s in zip(self.data, other.data)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        return IntMatrix(self.rows, self.cols + other.cols,
                         tuple(a + b for a, b in zip(self.data, other.data)))

    def vstack(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.cols:
            raise ValueError("vstack needs equal column counts")
        return IntMatrix(self.rows + other.rows, self.cols, self.data + other.data)

    def select_rows(self, idx: Iterable[int]) -> IntMatrix:
        return IntMatrix.from_rows([self.data[i] for i in idx], self.cols)

    def select_columns(self, idx: Iterable[int]) -> IntMatrix:
        idx = list(idx)
        return IntMatrix(self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.data))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    @cached_property
    def rank(self) -> int:
        return len(_echelon_pivots(self.data, self.cols))

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det([list(r) for r in self.data])

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, {self.tolist()})"


def _echelon_pivots(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Pivot columns of a fraction-free row echelon form."""
    work = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        a = work[r][c]
        for i in range(r + 1, len(work)):
            b = work[i][c]
            if b:
                work[i] = [a * x - b * y for x, y in zip(work[i], work[r])]
                g = content(work[i])
                if g > 1:
                    work[i] = [x // g for x in work[i]]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return pivots


def rank_of(vectors: Sequence[Sequence[int]], dim: Optional[int] = None) -> int:
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return 0
    return len(_echelon_pivots(vectors, dim if dim is not None else len(vectors[0])))


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# --- Smith normal form -----------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ A @ right == diag`` with unimodular ``left`` and ``right``.

    The exact inverses of the transforms are kept as well since they are needed
    to lift normal-form coordinates back into the original lattices.
    """

    left: IntMatrix
    diag: IntMatrix
    right: IntMatrix
    left_inv: IntMatrix = field(repr=False)
    right_inv: IntMatrix = field(repr=False)

    @property
    def invariants(self) -> tuple[int, ...]:
        """Nonzero diagonal entries d1 | d2 | ..."""
        return tuple(d for d in (self.diag[i, i] for i in range(min(self.diag.shape))) if d)

    @property
    def rank(self) -> int:
        return len(self.invariants)


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form by elementary operations with a minimal-|.| pivot."""
    m, n = A.shape
    D = [list(r) for r in A.data]
    L = [[int(i == j) for j in range(m)] for i in range(m)]
    Li = [[int(i == j) for j in range(m)] for i in range(m)]
    R = [[int(i == j) for j in range(n)] for i in range(n)]
    Ri = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        L[i], L[k] = L[k], L[i]
        for r in Li:
            r[i], r[k] = r[k], r[i]

    def swap_cols(j, k):
        for r in D:
            r[j], r[k] = r[k], r[j]
        for r in R:
            r[j], r[k] = r[k], r[j]
        Ri[j], Ri[k] = Ri[k], Ri[j]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        D[dst] = [x + c * y for x, y in zip(D[dst], D[src])]
        L[dst] = [x + c * y for x, y in zip(L[dst], L[src])]
        for r in Li:
            r[src] -= c * r[dst]

    def add_col(dst, src, c):
        # col_dst += c * col_src
        for r in D:
            r[dst] += c * r[src]
        for r in R:
            r[dst] += c * r[src]
        Ri[src] = [x - c * y for x, y in zip(Ri[src], Ri[dst])]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            rest_col = [i for i in range(t + 1, m) if D[i][t]]
            rest_row = [j for j in range(t + 1, n) if D[t][j]]
            if rest_col or rest_row:
                cands = [(abs(D[i][t]), 'r', i) for i in rest_col] + \
                        [(abs(D[t][j]), 'c', j) for j in rest_row]
                _, kind, k = min(cands)
                if kind == 'r':
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            L[t] = [-x for x in L[t]]
            for r in Li:
                r[t] = -r[t]
        t += 1

    mk = IntMatrix.from_rows
    return SmithDecomposition(mk(L, m), mk(D, n), mk(R, n), mk(Li, m), mk(Ri, n))


# --- abelian groups --------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroupPresentation:
    """``Z^free_rank + Z/d1 + ... + Z/dk`` with 2 <= d1 | d2 | ... | dk."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
            if i + 1 < len(self.torsion) and self.torsion[i + 1] % d:
                raise ValueError("invariant factors must divide their successors")

    @property
    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


class QuotientGroup:
    """The cokernel ``Z^m / A Z^n`` with normal-form coordinates.

    Elements are written as ``(f_1, ..., f_r, t_1, ..., t_k)``: free
    coordinates first, then residues ``0 <= t_i < d_i`` for the torsion part.
    Two vectors represent the same class iff their normal forms agree.
    """

    def __init__(self, A: IntMatrix):
        self.matrix = A
        self.snf = snf = smith_normal_form(A)
        m = A.rows
        diag = [snf.diag[i, i] if i < min(A.shape) else 0 for i in range(m)]
        self._torsion_idx = [i for i, d in enumerate(diag) if d > 1]
        self._free_idx = [i for i, d in enumerate(diag) if d == 0]
        self._moduli = [diag[i] for i in self._torsion_idx]
        self.presentation = AbelianGroupPresentation(len(self._free_idx), tuple(self._moduli))

    @property
    def ambient_rank(self) -> int:
        return self.matrix.rows

    def normal_form(self, v: Sequence[int]) -> Vector:
        y = self.snf.left @ v
        return tuple(y[i] for i in self._free_idx) + tuple(
            y[i] % d for i, d in zip(self._torsion_idx, self._moduli))

    def is_zero(self, v: Sequence[int]) -> bool:
        return not any(self.normal_form(v))

    def lift(self, coords: Sequence[int]) -> Vector:
        """A representative vector of the class with the given normal form."""
        nf, nt = len(self._free_idx), len(self._torsion_idx)
        if len(coords) != nf + nt:
            raise ValueError("coordinate vector has the wrong length")
        y = [0] * self.matrix.rows
        for i, c in zip(self._free_idx + self._torsion_idx, coords):
            y[i] = c
        return self.snf.left_inv @ y

    def generators(self) -> list[Vector]:
        """Lifts of the standard generators of the presentation."""
        k = len(self._free_idx) + len(self._torsion_idx)
        return [self.lift(tuple(int(i == j) for j in range(k))) for i in range(k)]


def cokernel(A: IntMatrix) -> AbelianGroupPresentation:
    """Presentation of ``Z^rows / image(A)``."""
    return QuotientGroup(A).presentation


# --- solving ---------------------------------------------------------------

class IntegerSolver:
    """Repeated integer solves against a fixed matrix (the SNF is computed once)."""

    def __init__(self, A: IntMatrix):
        self.matrix = A
        self.snf = smith_normal_form(A)

    def solve(self, b: Sequence[int]) -> Optional[Vector]:
        A, snf = self.matrix, self.snf
        if len(b) != A.rows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
        c = snf.left @ b
        y = [0] * A.cols
        for i in range(A.rows):
            d = snf.diag[i, i] if i < A.cols else 0
            if d == 0:
                if c[i]:
                    return None
            elif c[i] % d:
                return None
            else:
                y[i] = c[i] // d
        return snf.right @ y


def solve_integer(A: IntMatrix, b: Sequence[int]) -> Optional[Vector]:
    """Some integer x with ``A @ x == b``, or None if there is none."""
    return IntegerSolver(A).solve(b)


def solve_rational(A: IntMatrix, b: Sequence) -> Optional[RationalVector]:
    """Some rational x with ``A @ x == b`` (Gauss-Jordan over Q), or None."""
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
    n = A.cols
    work = [[Fraction(x) for x in r] + [Fraction(bi)] for r, bi in zip(A.data, b)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in work[r:]):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = work[i][-1]
    return tuple(x)


def kernel_basis(A: IntMatrix) -> list[Vector]:
    """Basis of the (saturated) integer kernel of A, in Hermite normal form."""
    snf = smith_normal_form(A)
    cols = snf.right.columns()[snf.rank:]
    return hermite_normal_form(cols, A.cols)


# --- lattices --------------------------------------------------------------

def hermite_normal_form(vectors: Iterable[Sequence[int]], dim: Optional[int] = None
                        ) -> list[Vector]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    The result is the canonical basis: echelon form, positive pivots, entries
    above each pivot reduced into ``[0, pivot)``. Equal lattices give equal output.
    """
    rows = [list(v) for v in vectors]
    if dim is None:
        if not rows:
            return []
        dim = len(rows[0])
    pr = 0
    for col in range(dim):
        while True:
            nz = [i for i in range(pr, len(rows)) if rows[i][col]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(rows[i][col]))
            rows[pr], rows[i0] = rows[i0], rows[pr]
            p = rows[pr][col]
            clean = True
            for i in range(pr + 1, len(rows)):
                if rows[i][col]:
                    q = rows[i][col] // p
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[pr])]
                    clean = clean and rows[i][col] == 0
            if clean:
                break
        if pr < len(rows) and rows[pr][col]:
            if rows[pr][col] < 0:
                rows[pr] = [-x for x in rows[pr]]
            p = rows[pr][col]
            for i in range(pr):
                q = rows[i][col] // p
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[pr])]
            pr += 1
    return [tuple(r) for r in rows[:pr]]


def lattice_preimage(A: IntMatrix, basis: Sequence[Sequence[int]]) -> list[Vector]:
    """HNF basis of ``{x in Z^cols : A x in span_Z(basis)}``."""
    B = IntMatrix.from_columns(basis, A.rows) if basis else IntMatrix.zeros(A.rows, 0)
    K = kernel_basis(A.hstack(-B))
    return hermite_normal_form([k[:A.cols] for k in K], A.cols)


def lattice_intersection(b1: Sequence[Sequence[int]], b2: Sequence[Sequence[int]],
                         dim: int) -> list[Vector]:
    """HNF basis of the intersection of two sublattices of ``Z^dim``."""
    if not b1 or not b2:
        return []
    B1 = IntMatrix.from_columns(b1, dim)
    return hermite_normal_form([B1 @ y for y in lattice_preimage(B1, b2)], dim)


def lattice_index(sub: Sequence[Sequence[int]], dim: int) -> Optional[int]:
    """Index of the sublattice spanned by ``sub`` in ``Z^dim`` (None if infinite)."""
    if rank_of(sub, dim) < dim:
        return None
    A = IntMatrix.from_columns(sub, dim)
    out = 1
    for d in smith_normal_form(A).invariants:
        out *= d
    return out


def coordinates_in(basis: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[Vector]:
    """Integer coordinates of ``v`` in the lattice basis, if ``v`` lies in the lattice."""
    if not basis:
        return () if not any(v) else None
    return solve_integer(IntMatrix.from_columns(basis, len(v)), v)


def unimodular_completion(basis: Sequence[Sequence[int]], dim: int) -> IntMatrix:
    """Unimodular matrix whose last ``k`` columns span the saturated lattice ``basis``."""
    k = len(basis)
    if k == 0:
        return IntMatrix.identity(dim)
    snf = smith_normal_form(IntMatrix.from_columns(basis, dim))
    if snf.invariants != (1,) * k:
        raise ValueError("lattice is not saturated or basis is not independent")
    # basis = left_inv @ [I_k; 0] @ right_inv
    Linv = snf.left_inv
    head = Linv.select_columns(range(k)) @ snf.right_inv
    tail = Linv.select_columns(range(k, dim))
    return tail.hstack(head)


def saturation(vectors: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Basis of ``span_Q(vectors) meet Z^dim``."""
    rows = [tuple(v) for v in vectors if any(v)]
    perp = kernel_basis(IntMatrix.from_rows(rows, dim) if rows else IntMatrix.zeros(0, dim))
    return kernel_basis(IntMatrix.from_rows(perp, dim) if perp else IntMatrix.zeros(0, dim))


def unimodular_inverse(U: IntMatrix) -> IntMatrix:
    n = U.rows
    cols = [solve_rational(U, [int(i == j) for i in range(n)]) for j in range(n)]
    if any(c is None or any(x.denominator != 1 for x in c) for c in cols):
        raise ValueError("matrix is not unimodular")
    return IntMatrix.from_columns([tuple(int(x) for x in c) for c in cols], n)
