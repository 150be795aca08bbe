"""Exact dense linear algebra over a prime field GF(p).

Matrices are numpy int64 arrays with entries in [0, p).  Elimination runs
in float64, which is exact as long as p**2 < 2**53; the default modulus
65521 leaves ample headroom.  All routines are pure functions.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

DEFAULT_PRIME = 65521
DEFAULT_CELL_BUDGET = 50_000_000

_F64_EXACT = 2**53


class SizeBudgetError(RuntimeError):
    """A requested matrix would exceed the configured cell budget."""


def cell_budget() -> int:
    return int(os.environ.get("JACRING_CELL_BUDGET", DEFAULT_CELL_BUDGET))


def check_budget(rows: int, cols: int, budget: int | None = None) -> None:
    limit = cell_budget() if budget is None else budget
    if rows * cols > limit:
        raise SizeBudgetError(
            f"matrix of shape {rows}x{cols} exceeds cell budget {limit}"
        )


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, int(math.isqrt(n)) + 1):
        if n % q == 0:
            return False
    return True


def validate_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if p * p >= _F64_EXACT:
        raise ValueError(f"modulus {p} too large for exact float64 elimination")
    return p


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 in GF(p)")
    return pow(a, p - 2, p)


@dataclass(frozen=True)
class RankProfile:
    rank: int
    kernel_dim: int
    rows: int
    cols: int


def _as_f64(M: np.ndarray, p: int) -> np.ndarray:
    A = np.asarray(M, dtype=np.float64)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return A % p


def _echelon(M: np.ndarray, p: int, reduced: bool) -> tuple[np.ndarray, list[int]]:
    """Row echelon form in place over GF(p); returns (matrix, pivot columns)."""
    A = _as_f64(M, p)
    rows, cols = A.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = inv_mod(int(A[r, c]), p)
        A[r, c:] = (A[r, c:] * inv) % p
        if reduced:
            others = np.nonzero(A[:, c])[0]
            others = others[others != r]
        else:
            below = np.nonzero(A[r + 1:, c])[0]
            others = below + r + 1
        if others.size:
            A[np.ix_(others, range(c, cols))] = (
                A[np.ix_(others, range(c, cols))]
                - np.outer(A[others, c], A[r, c:])
            ) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank_gfp(M: np.ndarray, p: int) -> int:
    if M.size == 0:
        return 0
    _, pivots = _echelon(M, p, reduced=False)
    return len(pivots)


def rank_profile(M: np.ndarray, p: int) -> RankProfile:
    rows, cols = np.asarray(M).shape
    r = rank_gfp(np.asarray(M), p)
    return RankProfile(rank=r, kernel_dim=cols - r, rows=rows, cols=cols)


def rref_gfp(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; zero rows are dropped."""
    A = np.asarray(M)
    if A.size == 0:
        return np.zeros((0, A.shape[1]), dtype=np.int64), []
    E, pivots = _echelon(A, p, reduced=True)
    return E[: len(pivots)].astype(np.int64), pivots


def nullspace_gfp(M: np.ndarray, p: int) -> np.ndarray:
    """Row basis of the right kernel {x : M x = 0}, in RREF."""
    A = np.asarray(M)
    cols = A.shape[1]
    R, pivots = rref_gfp(A, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    N = np.zeros((len(free), cols), dtype=np.int64)
    for row, f in enumerate(free):
        N[row, f] = 1
        for i, pc in enumerate(pivots):
            N[row, pc] = (-int(R[i, f])) % p
    # reverse so leading entries appear in increasing column order
    R2, _ = rref_gfp(N, p)
    return R2


def matmul_gfp(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Exact A @ B mod p via float64 BLAS, chunking the inner dimension."""
    Af = _as_f64(A, p)
    Bf = _as_f64(B, p)
    inner = Af.shape[1]
    if inner != Bf.shape[0]:
        raise ValueError("shape mismatch")
    chunk = max(1, _F64_EXACT // (p * p) - 1)
    out = np.zeros((Af.shape[0], Bf.shape[1]), dtype=np.float64)
    for lo in range(0, inner, chunk):
        hi = min(lo + chunk, inner)
        out = (out + Af[:, lo:hi] @ Bf[lo:hi, :]) % p
    return out.astype(np.int64)
