"""Exact arithmetic and dense linear algebra over a prime field F_p.

Matrices are plain numpy ``int64`` arrays holding residues in ``[0, p)``.

Rank is computed by one of two eliminations. For primes up to about 2**26
a blocked elimination runs the trailing update as a float64 matrix product,
exact because every partial sum stays below 2**53. Larger primes use an
int64 elimination that defers the ``mod p`` reduction of the trailing
block as long as the 64-bit headroom allows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_PRIME = 32003

# products of two residues must fit in int64 with room to accumulate
_MAX_PRIME = 2**31 - 1
_INT64_MAX = 2**63 - 1
_FLOAT_EXACT = 2**53
PANEL = 128
# below this many rows or columns the blocked path is pure overhead
SMALL = 48


def is_prime(n: int) -> bool:
    """Deterministic trial division; primes of interest are below 2**31."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeModulus:
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or isinstance(self.p, bool):
            raise TypeError(f"prime must be an integer, got {self.p!r}")
        if self.p < 5:
            raise ValueError(f"prime must be at least 5, got {self.p}")
        if self.p > _MAX_PRIME:
            raise ValueError(f"prime must be below 2**31, got {self.p}")
        if not is_prime(int(self.p)):
            raise ValueError(f"{self.p} is not prime")

    def __int__(self) -> int:
        return int(self.p)


def _as_int(p: int | PrimeModulus) -> int:
    if isinstance(p, PrimeModulus):
        return p.p
    return int(PrimeModulus(int(p)).p)


def field_inverse(a: int, p: int | PrimeModulus = DEFAULT_PRIME) -> int:
    p = _as_int(p)
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse modulo %d" % p)
    return pow(a, -1, p)


def as_matrix(m, p: int | PrimeModulus = DEFAULT_PRIME) -> np.ndarray:
    """Copy ``m`` into a 2-D int64 array of canonical residues."""
    p = _as_int(p)
    if isinstance(m, np.ndarray) and m.dtype.kind in "iu":
        a = (m % p).astype(np.int64)
    else:
        # object dtype keeps Python ints exact until reduced
        a = (np.array(m, dtype=object) % p).astype(np.int64)
    if a.ndim == 1 and a.size == 0:
        a = a.reshape(0, 0)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    return a


def _reduction_interval(p: int) -> int:
    """Elimination steps that can run before entries risk overflowing int64."""
    return max(1, (_INT64_MAX - p) // ((p - 1) ** 2))


def _panel_width(p: int) -> int:
    """Widest panel whose float64 products and sums stay exact, capped at PANEL."""
    return min(PANEL, (_FLOAT_EXACT - p) // ((p - 1) ** 2))


def rank(m, p: int | PrimeModulus = DEFAULT_PRIME) -> int:
    """Rank of ``m`` over F_p.

    Uses blocked elimination on float64 with BLAS products when ``p`` is
    small enough for those products to be exact, and plain int64
    elimination otherwise. Both give the same answer.
    """
    p = _as_int(p)
    shape = np.shape(m)
    if _panel_width(p) >= 8 and len(shape) == 2 and min(shape) > SMALL:
        return rank_blocked(m, p)
    return rank_unblocked(m, p)


def rank_unblocked(m, p: int | PrimeModulus = DEFAULT_PRIME) -> int:
    """Row echelon elimination in int64 with delayed reduction of the trailing block."""
    p = _as_int(p)
    a = as_matrix(m, p)
    rows, cols = a.shape
    interval = _reduction_interval(p)
    r = 0
    since_reduce = 0
    for c in range(cols):
        if r == rows:
            break
        col = a[r:, c] % p
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        piv = nz[0]
        if piv:
            a[[r, r + piv]] = a[[r + piv, r]]
            col[[0, piv]] = col[[piv, 0]]
        inv = pow(int(col[0]), -1, p)
        prow = (a[r, c + 1:] % p) * inv % p
        below = col[1:]
        if below.any():
            block = a[r + 1:, c + 1:]
            block -= np.multiply.outer(below, prow)
            since_reduce += 1
            if since_reduce >= interval:
                block %= p
                since_reduce = 0
        r += 1
    return r


def _reduce(x: np.ndarray, p: int) -> np.ndarray:
    # exact for integer-valued |x| < 2**53; np.fmod is far slower on large values
    r = x - np.floor(x * (1.0 / p)) * p
    r[r < 0] += p
    r[r >= p] -= p
    return r


def _panel_pivots(panel: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Pivot rows and columns found by eliminating a tall, narrow float block."""
    P = panel.copy()
    order = np.arange(P.shape[0])
    piv_rows, piv_cols = [], []
    r = 0
    for c in range(P.shape[1]):
        if r == P.shape[0]:
            break
        col = _reduce(P[r:, c], p)
        P[r:, c] = col
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            P[[r, i]] = P[[i, r]]
            order[[r, i]] = order[[i, r]]
        inv = pow(int(P[r, c]), -1, p)
        prow = _reduce(_reduce(P[r, c + 1:], p) * inv, p)
        P[r + 1:, c + 1:] -= np.multiply.outer(P[r + 1:, c], prow)
        piv_rows.append(order[r])
        piv_cols.append(c)
        r += 1
    return np.array(piv_rows, dtype=np.int64), np.array(piv_cols, dtype=np.int64)


def rank_blocked(m, p: int | PrimeModulus = DEFAULT_PRIME) -> int:
    """Right-looking blocked elimination; the trailing update is one GEMM per panel.

    After a panel yields k pivots with pivot block ``A_pp``, the remaining
    rows are replaced by the Schur complement
    ``A_o - A_op A_pp^{-1} A_p`` on the columns right of the panel, and
    rank(A) = k + rank(Schur complement).
    """
    p = _as_int(p)
    width = _panel_width(p)
    if width < 1:
        raise ValueError(f"prime {p} is too large for exact float64 blocks")
    a = as_matrix(m, p).astype(np.float64)
    r = 0
    while a.shape[0] and a.shape[1]:
        b = min(width, a.shape[1])
        prow, pcol = _panel_pivots(a[:, :b], p)
        k = len(prow)
        r += k
        trail = a[:, b:]
        if k == 0:
            a = trail
            continue
        rest = np.ones(a.shape[0], dtype=bool)
        rest[prow] = False
        if not rest.any() or trail.shape[1] == 0:
            break
        inv = inverse(a[np.ix_(prow, pcol)].astype(np.int64), p).astype(np.float64)
        x = _reduce(inv @ trail[prow], p)
        a = _reduce(trail[rest] - _reduce(a[np.ix_(rest, pcol)] @ x, p), p)
    return r


def kernel_dimension(m, p: int | PrimeModulus = DEFAULT_PRIME) -> int:
    a = np.asarray(m)
    cols = a.shape[1] if a.ndim == 2 else 0
    return cols - rank(m, p)


def rref(m, p: int | PrimeModulus = DEFAULT_PRIME) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    p = _as_int(p)
    a = as_matrix(m, p)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        f = a[:, c].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            a[hit] = (a[hit] - np.multiply.outer(f[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def kernel_basis(m, p: int | PrimeModulus = DEFAULT_PRIME) -> np.ndarray:
    """Rows spanning the right kernel {v : m v = 0} over F_p."""
    p = _as_int(p)
    red, pivots = rref(m, p)
    cols = red.shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-red[i, fc]) % p
    return basis


def matmul(a, b, p: int | PrimeModulus = DEFAULT_PRIME) -> np.ndarray:
    """Product mod p, accumulating in chunks small enough to stay exact."""
    p = _as_int(p)
    a = as_matrix(a, p)
    b = as_matrix(b, p)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    step = _reduction_interval(p)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(0, a.shape[1], step):
        out = (out + a[:, k:k + step] @ b[k:k + step]) % p
    return out


def inverse(m, p: int | PrimeModulus = DEFAULT_PRIME) -> np.ndarray:
    p = _as_int(p)
    a = as_matrix(m, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"inverse needs a square matrix, got {a.shape}")
    red, pivots = rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular modulo %d" % p)
    return red[:, n:]


__all__ = [
    "DEFAULT_PRIME",
    "PrimeModulus",
    "is_prime",
    "field_inverse",
    "as_matrix",
    "rank",
    "rank_blocked",
    "rank_unblocked",
    "kernel_dimension",
    "rref",
    "kernel_basis",
    "matmul",
    "inverse",
]
