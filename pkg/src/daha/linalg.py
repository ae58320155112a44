"""Dense exact linear algebra over an exact scalar field.

Everything here works entrywise with :mod:`daha.scalar` values
(Fraction or RatFun); a pivot is any nonzero entry, there are no
tolerances anywhere.  Matrices are immutable after construction, all
functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DahaError, SingularMatrixError
from .scalar import as_scalar, scalar_from_str, scalar_to_str


class Matrix:
    """An immutable rows x cols matrix with exact scalar entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(as_scalar(e) for e in row) for row in entries)
        if not rows or not rows[0]:
            raise DahaError("empty matrix")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DahaError("ragged matrix rows")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, n: int, one=Fraction(1)) -> "Matrix":
        zero = one - one
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int, zero=Fraction(0)) -> "Matrix":
        return cls([[zero] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, columns) -> "Matrix":
        """Build from a list of column vectors (each a sequence of scalars)."""
        cols = [list(c) for c in columns]
        n = len(cols[0])
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(n)])

    # -- arithmetic ---------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DahaError(f"shape mismatch {self.shape} * {other.shape}")
        bt = list(zip(*other.entries))
        out = []
        for arow in self.entries:
            out.append([sum(a * b for a, b in zip(arow, bcol)) for bcol in bt])
        return Matrix(out)

    def scale(self, c) -> "Matrix":
        return Matrix([[c * e for e in row] for row in self.entries])

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DahaError("shape mismatch in addition")
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b
            for ra, rb in zip(self.entries, other.entries)
            for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash((self.rows, self.cols))

    # -- views ----------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def apply(self, vec) -> tuple:
        """Matrix times a coordinate column vector."""
        vec = list(vec)
        if len(vec) != self.cols:
            raise DahaError("vector length mismatch")
        return tuple(sum(e * v for e, v in zip(row, vec)) for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.entries)))

    def scalar_value(self):
        """The scalar c when this matrix equals c*I, else None."""
        if not self.is_square():
            return None
        c = self.entries[0][0]
        for i in range(self.rows):
            for j in range(self.cols):
                e = self.entries[i][j]
                if i == j:
                    if e != c:
                        return None
                elif e:
                    return None
        return c

    def __repr__(self):
        body = "; ".join(
            " ".join(scalar_to_str(e) for e in row) for row in self.entries
        )
        return f"Matrix[{body}]"

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[scalar_to_str(e) for e in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Matrix":
        m = cls([[scalar_from_str(e) for e in row] for row in data["entries"]])
        if m.rows != data["rows"] or m.cols != data["cols"]:
            raise DahaError("matrix JSON shape mismatch")
        return m


@dataclass(frozen=True)
class Subspace:
    """A subspace of coordinate space, held as a reduced-echelon basis.

    Basis rows are pairwise independent with strictly increasing pivot
    columns; the zero space has an empty basis.
    """

    ambient: int
    basis: tuple

    @classmethod
    def from_vectors(cls, ambient: int, vectors) -> "Subspace":
        rows = [list(v) for v in vectors]
        for r in rows:
            if len(r) != ambient:
                raise DahaError("vector length does not match ambient dimension")
        reduced, _ = _rref_rows(rows)
        return cls(ambient, tuple(tuple(r) for r in reduced))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vec) -> bool:
        v = list(vec)
        if len(v) != self.ambient:
            raise DahaError("vector length does not match ambient dimension")
        for row in self.basis:
            p = _leading_index(row)
            if v[p]:
                c = v[p]
                for i in range(p, self.ambient):
                    if row[i]:
                        v[i] = v[i] - c * row[i]
        return all(not x for x in v)


def _leading_index(row) -> int:
    for i, x in enumerate(row):
        if x:
            return i
    raise DahaError("zero row has no leading index")


def _rref_rows(rows):
    """In-place reduced row echelon form; returns (nonzero rows, pivot cols)."""
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        if pv != 1:
            inv = 1 / pv
            rows[r] = [e * inv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rref(m: Matrix):
    """Reduced row echelon form and rank."""
    rows = [list(r) for r in m.entries]
    reduced, pivots = _rref_rows(rows)
    zero = m.entries[0][0] * 0
    while len(reduced) < m.rows:
        reduced.append([zero] * m.cols)
    return Matrix(reduced), len(pivots)


def rank(m: Matrix) -> int:
    rows = [list(r) for r in m.entries]
    _, pivots = _rref_rows(rows)
    return len(pivots)


def kernel(m: Matrix) -> Subspace:
    """Basis of the right null space; dim = cols - rank."""
    rows = [list(r) for r in m.entries]
    reduced, pivots = _rref_rows(rows)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    vectors = []
    for fc in free:
        v = [Fraction(0)] * m.cols
        v[fc] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[fc]
        vectors.append(v)
    return Subspace.from_vectors(m.cols, vectors)


def det(m: Matrix):
    """Exact determinant by elimination with exact pivoting."""
    if not m.is_square():
        raise DahaError("determinant of a non-square matrix")
    rows = [list(r) for r in m.entries]
    n = m.rows
    sign = 1
    acc = None
    for c in range(n):
        pr = None
        for i in range(c, n):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            return m.entries[0][0] * 0
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            sign = -sign
        pv = rows[c][c]
        acc = pv if acc is None else acc * pv
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] / pv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return acc if sign > 0 else -acc


def inverse(m: Matrix) -> Matrix:
    """Exact inverse; raises SingularMatrixError when det is zero."""
    if not m.is_square():
        raise DahaError("inverse of a non-square matrix")
    n = m.rows
    one = Fraction(1)
    zero = Fraction(0)
    aug = [
        list(row) + [one if i == j else zero for j in range(n)]
        for i, row in enumerate(m.entries)
    ]
    reduced, pivots = _rref_rows(aug)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return Matrix([row[n:] for row in reduced[:n]])


def solve_right(m: Matrix, rhs):
    """The unique solution x of m x = rhs, or None when none/ambiguous.

    Used for applying inverse operators given in banded form; callers
    re-check the residual themselves.
    """
    rhs = [as_scalar(x) for x in rhs]
    if len(rhs) != m.rows:
        raise DahaError("right-hand side length mismatch")
    aug = [list(row) + [b] for row, b in zip(m.entries, rhs)]
    reduced, pivots = _rref_rows(aug)
    if m.cols in pivots:
        return None  # inconsistent
    if len(pivots) != m.cols:
        return None  # underdetermined
    x = [Fraction(0)] * m.cols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[-1]
    return tuple(x)


def solve_sylvester_homogeneous(pairs) -> Subspace:
    """All matrices T with T*A_i = B_i*T for every pair (A_i, B_i).

    All A_i must be square of one size n and all B_i square of one size
    m; the result is the solution space inside coordinate space of
    dimension m*n, with T vectorized row-major (T[r][s] at index r*n+s).
    """
    pairs = list(pairs)
    if not pairs:
        raise DahaError("no equation pairs given")
    n = pairs[0][0].rows
    m = pairs[0][1].rows
    for a, b in pairs:
        if not a.is_square() or a.rows != n:
            raise DahaError("left matrices must be square of equal size")
        if not b.is_square() or b.rows != m:
            raise DahaError("right matrices must be square of equal size")
    zero = Fraction(0)
    rows = []
    for a, b in pairs:
        ae = a.entries
        be = b.entries
        for r in range(m):
            for c in range(n):
                row = [zero] * (m * n)
                for s in range(n):
                    row[r * n + s] = row[r * n + s] + ae[s][c]
                for u in range(m):
                    row[u * n + c] = row[u * n + c] - be[r][u]
                rows.append(row)
    return kernel(Matrix(rows))


def span_closure(gens) -> int:
    """Dimension of the unital matrix algebra generated by gens.

    Seeds with the identity and repeatedly left-multiplies the current
    basis by each generator, inserting only elements that enlarge the
    echelonized span, until stable.  The result is at most n**2.
    """
    gens = list(gens)
    if not gens:
        raise DahaError("no generators given")
    n = gens[0].rows
    for g in gens:
        if not g.is_square() or g.rows != n:
            raise DahaError("generators must be square of equal size")
    cap = n * n

    basis = {}  # leading index -> normalized flat vector

    def insert(mat: Matrix) -> bool:
        v = [e for row in mat.entries for e in row]
        for p in sorted(basis):
            if v[p]:
                c = v[p]
                bv = basis[p]
                v = [a - c * b for a, b in zip(v, bv)]
        for p, x in enumerate(v):
            if x:
                inv = 1 / x
                basis[p] = tuple(e * inv for e in v)
                return True
        return False

    frontier = [Matrix.identity(n, one=gens[0].entries[0][0] ** 0)]
    insert(frontier[0])
    while frontier:
        if len(basis) > cap:
            raise DahaError("span closure exceeded its dimension cap")
        new = []
        for w in frontier:
            for g in gens:
                cand = g * w
                if insert(cand):
                    new.append(cand)
        frontier = new
        if len(basis) == cap:
            break
    return len(basis)
