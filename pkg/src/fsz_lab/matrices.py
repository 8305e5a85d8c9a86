"""Dense matrices over a finite field, and upper unitriangular groups.

Matrices are immutable tuples of FieldElem entries with exact arithmetic.
All indices in this package are 0-based.  The symplectic membership test
checks the defining block identity directly: writing M in n x n blocks
[[X, A], [B, Y]], M is symplectic iff

    M @ [[Y^T, -A^T], [-B^T, X^T]] == I.

UniTriMat wraps the group UT(n, q) of upper triangular matrices with unit
diagonal, whose exponent is p^ceil(log_p n); element orders are computed by
repeated p-th powers.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Sequence

from .fields import FieldElem, FieldSpec, split_prime_power


class MatFq:
    """An immutable r x c matrix of FieldElem sharing one FieldSpec."""

    __slots__ = ("spec", "rows")

    def __init__(self, spec: FieldSpec, rows):
        rows = tuple(tuple(r) for r in rows)
        width = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged rows")
            for x in r:
                if not isinstance(x, FieldElem) or x.spec != spec:
                    raise ValueError("entries must be elements of the given field")
        self.spec = spec
        self.rows = rows

    # -- constructors ------------------------------------------------------------

    @classmethod
    def zeros(cls, spec: FieldSpec, r: int, c: int | None = None) -> "MatFq":
        c = r if c is None else c
        z = spec.zero
        return cls(spec, [[z] * c for _ in range(r)])

    @classmethod
    def identity(cls, spec: FieldSpec, m: int) -> "MatFq":
        z, o = spec.zero, spec.one
        return cls(spec, [[o if i == j else z for j in range(m)] for i in range(m)])

    @classmethod
    def from_ints(cls, spec: FieldSpec, rows: Sequence[Sequence[int]]) -> "MatFq":
        return cls(spec, [[spec.elem(v) for v in r] for r in rows])

    @classmethod
    def elementary(cls, spec: FieldSpec, m: int, i: int, j: int, value=1) -> "MatFq":
        """m x m matrix with `value` at (i, j) and zeros elsewhere (0-based)."""
        rows = [[spec.zero] * m for _ in range(m)]
        rows[i][j] = spec.elem(value) if isinstance(value, int) else value
        return cls(spec, rows)

    # -- shape and access ----------------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def at(self, i: int, j: int) -> FieldElem:
        return self.rows[i][j]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "MatFq":
        return MatFq(self.spec, [[self.rows[i][j] for j in cols] for i in rows])

    # -- arithmetic ------------------------------------------------------------------

    def __add__(self, other: "MatFq") -> "MatFq":
        self._compat(other, same_shape=True)
        return MatFq(self.spec, [
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        ])

    def __sub__(self, other: "MatFq") -> "MatFq":
        self._compat(other, same_shape=True)
        return MatFq(self.spec, [
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        ])

    def __neg__(self) -> "MatFq":
        return MatFq(self.spec, [[-a for a in r] for r in self.rows])

    def __mul__(self, scalar) -> "MatFq":
        if isinstance(scalar, (int, FieldElem)):
            return MatFq(self.spec, [[a * scalar for a in r] for r in self.rows])
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other: "MatFq") -> "MatFq":
        self._compat(other)
        if self.ncols != other.nrows:
            raise ValueError(f"dimension mismatch: {self.ncols} vs {other.nrows}")
        cols = tuple(zip(*other.rows))
        out = []
        for row in self.rows:
            new = []
            for col in cols:
                acc = row[0] * col[0]
                for a, b in zip(row[1:], col[1:]):
                    acc = acc + a * b
                new.append(acc)
            out.append(new)
        return MatFq(self.spec, out)

    def transpose(self) -> "MatFq":
        return MatFq(self.spec, tuple(zip(*self.rows)))

    def pow(self, e: int) -> "MatFq":
        """Matrix power by square-and-multiply; e >= 0, square matrices only."""
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        if e < 0:
            return self.inv().pow(-e)
        result = MatFq.identity(self.spec, self.nrows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def inv(self) -> "MatFq":
        """Inverse by Gaussian elimination; raises ValueError when singular."""
        m = self.nrows
        if m != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        spec = self.spec
        aug = [list(r) + [spec.one if i == j else spec.zero for j in range(m)]
               for i, r in enumerate(self.rows)]
        for col in range(m):
            pivot = next((r for r in range(col, m) if not aug[r][col].is_zero()), None)
            if pivot is None:
                raise ValueError("singular matrix")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            pinv = aug[col][col].inv()
            aug[col] = [x * pinv for x in aug[col]]
            for r in range(m):
                if r != col and not aug[r][col].is_zero():
                    factor = aug[r][col]
                    aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
        return MatFq(spec, [row[m:] for row in aug])

    def is_symmetric(self) -> bool:
        return all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows)
            for j in range(i + 1, self.ncols)
        )

    def _compat(self, other: "MatFq", same_shape: bool = False):
        if not isinstance(other, MatFq):
            raise TypeError(f"matrix expected, got {type(other).__name__}")
        if other.spec != self.spec:
            raise ValueError("matrices over different fields")
        if same_shape and (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")

    def __eq__(self, other):
        if isinstance(other, MatFq):
            return self.spec == other.spec and self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.p, self.spec.n, self.rows))

    def __repr__(self):
        if self.spec.n == 1:
            body = "; ".join(" ".join(str(x.coeffs[0]) for x in r) for r in self.rows)
        else:
            body = "; ".join(" ".join(str(x.index()) for x in r) for r in self.rows)
        return f"MatFq({self.spec!r}, [{body}])"

    def to_json(self) -> dict:
        return {
            "n": self.spec.n,
            "q": self.spec.q,
            "rows": [[x.to_json() for x in r] for r in self.rows],
        }


def block_matrix(blocks: Sequence[Sequence[MatFq]]) -> MatFq:
    """Assemble a matrix from a grid of conformal blocks."""
    spec = blocks[0][0].spec
    rows = []
    for brow in blocks:
        for i in range(brow[0].nrows):
            rows.append([x for b in brow for x in b.rows[i]])
    return MatFq(spec, rows)


def is_symplectic(M: MatFq) -> bool:
    """Block test: M [[Y^T, -A^T], [-B^T, X^T]] == I for the n x n blocks of M."""
    m = M.nrows
    if m != M.ncols or m % 2:
        raise ValueError("even-dimensional square matrix required")
    n = m // 2
    idx = range(n)
    jdx = range(n, m)
    X = M.submatrix(idx, idx)
    A = M.submatrix(idx, jdx)
    B = M.submatrix(jdx, idx)
    Y = M.submatrix(jdx, jdx)
    partner = block_matrix([
        [Y.transpose(), -A.transpose()],
        [-B.transpose(), X.transpose()],
    ])
    return M @ partner == MatFq.identity(M.spec, m)


class UniTriMat:
    """Upper unitriangular n x n matrix: unit diagonal, zeros below.

    Stores only the strictly-upper entries, row-major:
    (0,1), (0,2), ..., (0,n-1), (1,2), ...
    """

    __slots__ = ("spec", "n", "upper")

    def __init__(self, spec: FieldSpec, n: int, upper: Sequence[FieldElem]):
        if len(upper) != n * (n - 1) // 2:
            raise ValueError(f"expected {n * (n - 1) // 2} strictly-upper entries")
        for x in upper:
            if not isinstance(x, FieldElem) or x.spec != spec:
                raise ValueError("entries must be elements of the given field")
        self.spec = spec
        self.n = n
        self.upper = tuple(upper)

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "UniTriMat":
        return cls(spec, n, (spec.zero,) * (n * (n - 1) // 2))

    @classmethod
    def from_ints(cls, spec: FieldSpec, n: int, upper: Sequence[int]) -> "UniTriMat":
        return cls(spec, n, [spec.elem(v) for v in upper])

    @classmethod
    def jordan(cls, spec: FieldSpec, n: int) -> "UniTriMat":
        """The single-Jordan-block element: ones on the superdiagonal."""
        entries = [spec.one if j == i + 1 else spec.zero
                   for i in range(n) for j in range(i + 1, n)]
        return cls(spec, n, entries)

    @classmethod
    def from_mat(cls, M: MatFq) -> "UniTriMat":
        n = M.nrows
        one, zero = M.spec.one, M.spec.zero
        for i in range(n):
            if M.rows[i][i] != one or any(M.rows[i][j] != zero for j in range(i)):
                raise ValueError("matrix is not upper unitriangular")
        return cls(M.spec, n, [M.rows[i][j] for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def random(cls, spec: FieldSpec, n: int, rng) -> "UniTriMat":
        return cls(spec, n, [spec.random(rng) for _ in range(n * (n - 1) // 2)])

    def entry(self, i: int, j: int) -> FieldElem:
        if i == j:
            return self.spec.one
        if i > j:
            return self.spec.zero
        return self.upper[self._pos(i, j)]

    def _pos(self, i: int, j: int) -> int:
        n = self.n
        return i * n - i * (i + 1) // 2 + (j - i - 1)

    def superdiagonal(self) -> tuple[FieldElem, ...]:
        return tuple(self.entry(i, i + 1) for i in range(self.n - 1))

    def to_mat(self) -> MatFq:
        return MatFq(self.spec, [[self.entry(i, j) for j in range(self.n)]
                                 for i in range(self.n)])

    def __matmul__(self, other: "UniTriMat") -> "UniTriMat":
        if not isinstance(other, UniTriMat):
            return NotImplemented
        return UniTriMat.from_mat(self.to_mat() @ other.to_mat())

    def inv(self) -> "UniTriMat":
        """Inverse via the nilpotent series (I + N)^-1 = I - N + N^2 - ..."""
        spec, n = self.spec, self.n
        N = self.to_mat() - MatFq.identity(spec, n)
        acc = MatFq.identity(spec, n)
        term = MatFq.identity(spec, n)
        for _ in range(n - 1):
            term = -(term @ N)
            acc = acc + term
        return UniTriMat.from_mat(acc)

    def pow(self, e: int) -> "UniTriMat":
        if e < 0:
            return self.inv().pow(-e)
        return UniTriMat.from_mat(self.to_mat().pow(e))

    def order(self) -> int:
        """Element order, found along the p-power tower."""
        p = self.spec.p
        acc = self
        order = 1
        ident = UniTriMat.identity(self.spec, self.n)
        while acc != ident:
            acc = acc.pow(p)
            order *= p
        return order

    def __eq__(self, other):
        if isinstance(other, UniTriMat):
            return (self.spec == other.spec and self.n == other.n
                    and self.upper == other.upper)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.p, self.spec.n, self.n, self.upper))

    def __repr__(self):
        return f"UniTriMat(n={self.n}, upper={[x.to_json() for x in self.upper]})"


def ut_exponent(n: int, q: int) -> int:
    """Exponent of UT(n, q): p^t with t = ceil(log_p n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p, _ = split_prime_power(q)
    t = 0
    size = 1
    while size < n:
        size *= p
        t += 1
    return p ** t


def unitri_power_entry(L: UniTriMat, m: int, i: int, j: int) -> FieldElem:
    """Entry (i, j) of L^m as the sum over non-decreasing index paths.

    Each path i = i_0 <= i_1 <= ... <= i_m = j contributes the product of the
    entries it traverses (diagonal steps contribute 1).  Independent of the
    matrix-multiplication route, so it serves as an oracle for small m.
    """
    spec = L.spec
    if i > j:
        return spec.zero
    if m == 0:
        return spec.one if i == j else spec.zero
    total = spec.zero
    for middle in combinations_with_replacement(range(i, j + 1), m - 1):
        path = (i,) + middle + (j,)
        prod = spec.one
        for a in range(m):
            prod = prod * L.entry(path[a], path[a + 1])
            if prod.is_zero():
                break
        total = total + prod
    return total
