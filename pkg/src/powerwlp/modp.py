"""Dense linear algebra over a prime field F_p.

Small primes (p^2 < 2^63) run on numpy int64 arrays; anything larger falls
back to exact Python integers, which is correct but much slower.
"""

from __future__ import annotations

import numpy as np

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def fits_int64(p: int) -> bool:
    return (p - 1) * (p - 1) + p < 2**63


def rank_mod_p(M, p: int) -> int:
    """Rank of an integer matrix reduced mod p."""
    if fits_int64(p):
        A = np.asarray(M, dtype=np.int64) % p
        if A.ndim != 2 or 0 in A.shape:
            return 0
        return _rank_int64(A, p)
    rows = [[int(x) % p for x in row] for row in M]
    return _rank_python(rows, p)


def _rank_int64(A: np.ndarray, p: int) -> int:
    if A.shape[0] > A.shape[1]:
        A = np.ascontiguousarray(A.T)
    nr, nc = A.shape
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c:] = A[r, c:] * inv % p
        below = r + 1 + np.flatnonzero(A[r + 1:, c])
        if below.size:
            f = A[below, c][:, None]
            A[below, c:] = (A[below, c:] - f * A[r, c:]) % p
        r += 1
    return r


def _rank_python(rows: list[list[int]], p: int) -> int:
    if not rows or not rows[0]:
        return 0
    nr, nc = len(rows), len(rows[0])
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        prow = [x * inv % p for x in rows[r]]
        rows[r] = prow
        for i in range(r + 1, nr):
            f = rows[i][c]
            if f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        r += 1
    return r


def inverse_mod_p(M: list[list[int]], p: int) -> list[list[int]]:
    """Gauss-Jordan inverse of a small square matrix; raises ZeroDivisionError if singular."""
    n = len(M)
    aug = [[int(x) % p for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular mod p")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], p - 2, p)
        aug[c] = [x * inv % p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]
