"""Exact linear algebra over GF(2).

Dense binary vectors and matrices are plain ``numpy`` ``uint8`` arrays with
values in {0, 1}; all arithmetic is XOR/AND based and exact.  On top of the
generic kernels this module provides the symplectic structure used to
represent Clifford transfer matrices and the ring of Laurent polynomials in
``eta`` with GF(2) coefficients taken modulo ``eta^n - 1`` (the circulant
ring of a circumference-``n`` cylinder).

Binary layout convention (shared by every module in this package): a Pauli
operator on ``n`` qubits is the length-``2n`` vector ``xi`` whose first ``n``
entries are the X-support and last ``n`` entries the Z-support.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "bitvec",
    "bitmat",
    "rank",
    "row_echelon",
    "kernel_basis",
    "solve",
    "row_in_span",
    "symplectic_form",
    "is_symplectic",
    "SymplecticMatrix",
    "LaurentPoly",
    "LaurentMatrix",
    "circulant_lift",
    "laurent_trace",
    "blocked_laurent",
]


def bitvec(data) -> np.ndarray:
    """Return a 1-D uint8 array with entries reduced mod 2."""
    return (np.asarray(data, dtype=np.uint8) & 1).reshape(-1)


def bitmat(data) -> np.ndarray:
    """Return a 2-D uint8 array with entries reduced mod 2."""
    m = np.asarray(data, dtype=np.uint8) & 1
    if m.ndim != 2:
        raise ValueError("bitmat expects a 2-D array")
    return m


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over GF(2).

    Computed in float64 (BLAS): entries are 0/1 and inner dimensions stay
    far below 2^53, so the integer results are exact before reduction.
    """
    prod = a.astype(np.float64) @ b.astype(np.float64)
    return (prod.astype(np.int64) % 2).astype(np.uint8)


def row_echelon(m: np.ndarray, n_pivot_cols: int | None = None):
    """Row-reduce ``m`` over GF(2).

    Returns ``(R, pivot_cols)`` where ``R`` is the reduced row-echelon form
    and ``pivot_cols`` lists the pivot column indices (length = rank).  Row
    operations apply to the full row width even when pivot search is limited
    to the first ``n_pivot_cols`` columns.
    """
    R = bitmat(np.atleast_2d(m)).copy()
    rows, cols = R.shape
    if n_pivot_cols is None:
        n_pivot_cols = cols
    pivot_cols: list[int] = []
    r = 0
    for c in range(n_pivot_cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        pivot = r + int(nz[0])
        if pivot != r:
            R[[r, pivot]] = R[[pivot, r]]
        mask = R[:, c].astype(bool)
        mask[r] = False
        if mask.any():
            R[mask] ^= R[r]
        pivot_cols.append(c)
        r += 1
    return R, pivot_cols


def rank(m: np.ndarray) -> int:
    """Return the GF(2) rank of ``m``."""
    m = np.atleast_2d(np.asarray(m, dtype=np.uint8))
    if m.size == 0:
        return 0
    _, pivots = row_echelon(m)
    return len(pivots)


def kernel_basis(m: np.ndarray) -> list[np.ndarray]:
    """Return a basis of ``{v : m v = 0}`` over GF(2)."""
    m = bitmat(np.atleast_2d(m))
    rows, cols = m.shape
    R, pivot_cols = row_echelon(m)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        v = np.zeros(cols, dtype=np.uint8)
        v[free] = 1
        for i, pc in enumerate(pivot_cols):
            if R[i, free]:
                v[pc] = 1
        basis.append(v)
    return basis


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Return one solution ``x`` of ``a x = b`` over GF(2), or None."""
    a = bitmat(np.atleast_2d(a))
    b = bitvec(b)
    rows, cols = a.shape
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    R, pivot_cols = row_echelon(aug, n_pivot_cols=cols)
    # Inconsistent iff some row reduces to (0 ... 0 | 1).
    for i in range(len(pivot_cols), rows):
        if R[i, cols]:
            return None
    x = np.zeros(cols, dtype=np.uint8)
    for i, pc in enumerate(pivot_cols):
        x[pc] = R[i, cols]
    return x


def row_in_span(m: np.ndarray, row: np.ndarray) -> bool:
    """Return True iff ``row`` lies in the GF(2) row span of ``m``."""
    m = np.atleast_2d(np.asarray(m, dtype=np.uint8))
    if m.size == 0:
        return not np.any(bitvec(row))
    return rank(np.vstack([m, bitvec(row)])) == rank(m)


def symplectic_form(n: int) -> np.ndarray:
    """Return the 2n x 2n form pairing X and Z blocks: [[0, I], [I, 0]]."""
    lam = np.zeros((2 * n, 2 * n), dtype=np.uint8)
    lam[:n, n:] = np.eye(n, dtype=np.uint8)
    lam[n:, :n] = np.eye(n, dtype=np.uint8)
    return lam


def is_symplectic(m: np.ndarray, n: int) -> bool:
    """Return True iff ``m^T . Lambda . m = Lambda`` over GF(2)."""
    m = bitmat(m)
    if m.shape != (2 * n, 2 * n):
        raise ValueError(f"expected shape {(2*n, 2*n)}, got {m.shape}")
    lam = symplectic_form(n)
    return bool(np.array_equal(matmul(matmul(m.T, lam), m), lam))


@dataclass(frozen=True)
class SymplecticMatrix:
    """A 2n x 2n binary symplectic matrix (X block first, Z block second)."""

    n: int
    m: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "m", bitmat(self.m))
        if self.m.shape != (2 * self.n, 2 * self.n):
            raise ValueError("SymplecticMatrix shape mismatch")
        if not is_symplectic(self.m, self.n):
            raise ValueError("matrix does not preserve the symplectic form")

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        if self.n != other.n:
            raise ValueError("size mismatch")
        return SymplecticMatrix(self.n, matmul(self.m, other.m))

    def apply(self, xi: np.ndarray) -> np.ndarray:
        """Apply to a length-2n symplectic vector."""
        return (self.m.astype(np.int64) @ bitvec(xi).astype(np.int64) % 2).astype(np.uint8)

    def inverse(self) -> "SymplecticMatrix":
        """Symplectic inverse: Lambda m^T Lambda."""
        lam = symplectic_form(self.n)
        return SymplecticMatrix(self.n, matmul(matmul(lam, self.m.T), lam))

    def power(self, k: int) -> "SymplecticMatrix":
        if k < 0:
            return self.inverse().power(-k)
        out = SymplecticMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    @staticmethod
    def identity(n: int) -> "SymplecticMatrix":
        return SymplecticMatrix(n, np.eye(2 * n, dtype=np.uint8))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.m, np.eye(2 * self.n, dtype=np.uint8)))


@dataclass(frozen=True)
class LaurentPoly:
    """Polynomial in ``eta`` over GF(2), reduced modulo ``eta^n - 1``.

    ``coeffs[k]`` is the coefficient of ``eta^k``; negative powers are
    represented through the modulus (``eta^-1 == eta^(n-1)``).
    """

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = bitvec(self.coeffs)
        if c.size != self.n:
            raise ValueError("coefficient length must equal modulus exponent")
        object.__setattr__(self, "coeffs", c)

    @staticmethod
    def zero(n: int) -> "LaurentPoly":
        return LaurentPoly(n, np.zeros(n, dtype=np.uint8))

    @staticmethod
    def eta(n: int, power: int = 1) -> "LaurentPoly":
        c = np.zeros(n, dtype=np.uint8)
        c[power % n] = 1
        return LaurentPoly(n, c)

    @staticmethod
    def one(n: int) -> "LaurentPoly":
        return LaurentPoly.eta(n, 0)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.n != other.n:
            raise ValueError("modulus mismatch")
        return LaurentPoly(self.n, self.coeffs ^ other.coeffs)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.n != other.n:
            raise ValueError("modulus mismatch")
        # Cyclic convolution over GF(2).
        conv = np.convolve(self.coeffs.astype(np.int64), other.coeffs.astype(np.int64))
        out = np.zeros(self.n, dtype=np.int64)
        for k, v in enumerate(conv):
            out[k % self.n] += v
        return LaurentPoly(self.n, out % 2)

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def __str__(self) -> str:
        terms = [("1" if k == 0 else "eta" if k == 1 else f"eta^{k}")
                 for k in range(self.n) if self.coeffs[k]]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class LaurentMatrix:
    """Square matrix of LaurentPoly entries (block dimension ``dim``)."""

    dim: int
    n: int
    entries: tuple

    @staticmethod
    def from_lists(n: int, rows: list[list[LaurentPoly]]) -> "LaurentMatrix":
        dim = len(rows)
        for r in rows:
            if len(r) != dim:
                raise ValueError("LaurentMatrix must be square")
        return LaurentMatrix(dim, n, tuple(tuple(r) for r in rows))

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.entries[i][j]

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if (self.dim, self.n) != (other.dim, other.n):
            raise ValueError("shape/modulus mismatch")
        rows = [[self.entry(i, j) + other.entry(i, j) for j in range(self.dim)]
                for i in range(self.dim)]
        return LaurentMatrix.from_lists(self.n, rows)

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if (self.dim, self.n) != (other.dim, other.n):
            raise ValueError("shape/modulus mismatch")
        rows = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                acc = LaurentPoly.zero(self.n)
                for k in range(self.dim):
                    acc = acc + self.entry(i, k) * other.entry(k, j)
                row.append(acc)
            rows.append(row)
        return LaurentMatrix.from_lists(self.n, rows)


def circulant_lift(lm: LaurentMatrix, blocks: int) -> np.ndarray:
    """Expand a Laurent matrix into its binary circulant-block matrix.

    The cell size is ``d = dim // 2`` and the result acts on ``F_2^(2n)``
    with ``n = blocks * d``, in the shared X-block/Z-block layout.  A factor
    ``eta^k`` shifts by ``k`` cells in the periodic direction, so qubit
    ``(j, a)`` (cell ``j``, offset ``a``) occupies X index ``j*d + a`` and
    Z index ``n + j*d + a``.
    """
    if lm.n != blocks:
        raise ValueError("blocks must equal the Laurent modulus exponent")
    if lm.dim % 2:
        raise ValueError("Laurent block dimension must be even")
    d = lm.dim // 2
    n = blocks * d
    out = np.zeros((2 * n, 2 * n), dtype=np.uint8)

    def index(row: int, cell: int) -> int:
        # Laurent row 0..d-1 -> X block offset; d..2d-1 -> Z block offset.
        if row < d:
            return cell * d + row
        return n + cell * d + (row - d)

    for i in range(lm.dim):
        for j in range(lm.dim):
            poly = lm.entry(i, j)
            for k in range(blocks):
                if poly.coeffs[k]:
                    for cell in range(blocks):
                        out[index(i, (cell + k) % blocks), index(j, cell)] ^= 1
    return out


def laurent_trace(lm: LaurentMatrix) -> LaurentPoly:
    """Sum of diagonal entries over the Laurent ring."""
    acc = LaurentPoly.zero(lm.n)
    for i in range(lm.dim):
        acc = acc + lm.entry(i, i)
    return acc


def blocked_laurent(sym: SymplecticMatrix, cell: int) -> LaurentMatrix:
    """Read the blocked Laurent form of a cell-translation-invariant matrix.

    ``cell`` is the spatial cell size Delta; the qubit count ``n`` must be a
    multiple of it.  Raises ValueError when the matrix is not invariant
    under translation by one cell (in which case no Laurent form exists).
    """
    n = sym.n
    if n % cell:
        raise ValueError("qubit count must be a multiple of the cell size")
    blocks = n // cell
    m = sym.m

    def index(row: int, j: int) -> int:
        if row < cell:
            return j * cell + row
        return n + j * cell + (row - cell)

    rows = []
    for i in range(2 * cell):
        row = []
        for jcol in range(2 * cell):
            coeffs = np.zeros(blocks, dtype=np.uint8)
            for k in range(blocks):
                coeffs[k] = m[index(i, k % blocks), index(jcol, 0)]
            row.append(LaurentPoly(blocks, coeffs))
        rows.append(row)
    lm = LaurentMatrix.from_lists(blocks, rows)
    if not np.array_equal(circulant_lift(lm, blocks), m):
        raise ValueError("matrix is not invariant under cell translation")
    return lm
