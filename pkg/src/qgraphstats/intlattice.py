"""Exact integer matrix algebra.

Matrices are numpy arrays of ``dtype=object`` holding Python ints, so entries
never overflow.  The Smith normal form is returned as ``M = P @ D @ Q`` with
``P`` and ``Q`` unimodular; their inverses come along for free because every
elementary operation is applied to both.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import NotUnimodular


def as_int_matrix(m, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Copy ``m`` into an object array of Python ints.

    ``rows``/``cols`` fix the shape of empty input, e.g. a ``0 x f2`` matrix.
    """
    if isinstance(m, np.ndarray) and m.ndim == 2:
        out = np.empty(m.shape, dtype=object)
        for idx, val in np.ndenumerate(m):
            if val != int(val):
                raise ValueError(f"non-integer entry {val!r}")
            out[idx] = int(val)
        return out
    m = [list(r) for r in m]
    if not m:
        return np.zeros((0, cols or 0), dtype=object)
    width = len(m[0])
    if any(len(r) != width for r in m):
        raise ValueError("ragged matrix")
    out = np.zeros((len(m), width), dtype=object)
    for i, r in enumerate(m):
        for j, val in enumerate(r):
            if val != int(val):
                raise ValueError(f"non-integer entry {val!r}")
            out[i, j] = int(val)
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product; handles empty inner dimensions."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=object)
    return np.dot(a, b)


@dataclass(frozen=True)
class SnfResult:
    P: np.ndarray
    D: np.ndarray
    Q: np.ndarray
    P_inv: np.ndarray
    Q_inv: np.ndarray

    @property
    def divisors(self) -> tuple[int, ...]:
        n = min(self.D.shape)
        return tuple(int(self.D[i, i]) for i in range(n) if self.D[i, i] != 0)

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.divisors if d > 1)


class _Reducer:
    """Working state for :func:`snf`; keeps ``P @ D @ Q == M`` at every step."""

    def __init__(self, m):
        self.D = m.copy()
        r, c = m.shape
        self.P, self.P_inv = identity(r), identity(r)
        self.Q, self.Q_inv = identity(c), identity(c)

    def swap_rows(self, i, j):
        if i != j:
            self.D[[i, j]] = self.D[[j, i]]
            self.P_inv[[i, j]] = self.P_inv[[j, i]]
            self.P[:, [i, j]] = self.P[:, [j, i]]

    def swap_cols(self, i, j):
        if i != j:
            self.D[:, [i, j]] = self.D[:, [j, i]]
            self.Q_inv[:, [i, j]] = self.Q_inv[:, [j, i]]
            self.Q[[i, j]] = self.Q[[j, i]]

    def add_row(self, dst, src, k):
        # row_dst += k * row_src
        self.D[dst] += k * self.D[src]
        self.P_inv[dst] += k * self.P_inv[src]
        self.P[:, src] -= k * self.P[:, dst]

    def add_col(self, dst, src, k):
        # col_dst += k * col_src
        self.D[:, dst] += k * self.D[:, src]
        self.Q_inv[:, dst] += k * self.Q_inv[:, src]
        self.Q[src] -= k * self.Q[dst]

    def negate_row(self, i):
        self.D[i] *= -1
        self.P_inv[i] *= -1
        self.P[:, i] *= -1


def _pivot(sub):
    """Row-major position of the smallest nonzero |entry|, or None."""
    best = None
    rows, cols = np.nonzero(sub != 0)
    for i, j in zip(rows, cols):
        a = abs(sub[i, j])
        if best is None or a < best[0]:
            best = (a, i, j)
            if a == 1:
                break
    return None if best is None else (best[1], best[2])


def snf(m) -> SnfResult:
    """Smith normal form ``m = P @ D @ Q``.

    ``D`` is diagonal, nonnegative, with each nonzero diagonal entry dividing
    the next.  Pivots are the smallest nonzero absolute value in the remaining
    submatrix (ties broken row-major), which keeps the output deterministic.
    """
    m = as_int_matrix(m) if not (isinstance(m, np.ndarray) and m.dtype == object) else m
    red = _Reducer(m)
    D = red.D
    rows, cols = D.shape
    for t in range(min(rows, cols)):
        while True:
            piv = _pivot(D[t:, t:])
            if piv is None:
                return SnfResult(red.P, D, red.Q, red.P_inv, red.Q_inv)
            red.swap_rows(t, t + piv[0])
            red.swap_cols(t, t + piv[1])
            d = D[t, t]
            clean = True
            for i in range(t + 1, rows):
                if D[i, t] != 0:
                    red.add_row(i, t, -(D[i, t] // d))
                    clean = clean and D[i, t] == 0
            for j in range(t + 1, cols):
                if D[t, j] != 0:
                    red.add_col(j, t, -(D[t, j] // d))
                    clean = clean and D[t, j] == 0
            if not clean:
                continue
            bad = np.nonzero(D[t + 1:, t + 1:] % d != 0)[0] if d not in (1, -1) else ()
            if len(bad):
                # pull a non-divisible row into row t; the next pass shrinks the pivot
                red.add_row(t, t + 1 + int(bad[0]), 1)
                continue
            break
        if D[t, t] < 0:
            red.negate_row(t)
    return SnfResult(red.P, D, red.Q, red.P_inv, red.Q_inv)


def _bareiss(m: np.ndarray) -> tuple[int, int]:
    """Fraction-free elimination; returns (rank, signed last pivot)."""
    a = [list(map(int, r)) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    prev = 1
    sign = 1
    for c in range(cols):
        if rank == rows:
            break
        piv = next((i for i in range(rank, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            a[rank], a[piv] = a[piv], a[rank]
            sign = -sign
        for i in range(rank + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[i][j] * a[rank][c] - a[i][c] * a[rank][j]) // prev
            a[i][c] = 0
        prev = a[rank][c]
        rank += 1
    return rank, sign * prev


def rank(m) -> int:
    """Rank over the rationals, by fraction-free Gaussian elimination."""
    m = as_int_matrix(m)
    if m.size == 0:
        return 0
    return _bareiss(m)[0]


def det(m) -> int:
    m = as_int_matrix(m)
    n, k = m.shape
    if n != k:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    r, last = _bareiss(m)
    return last if r == n else 0


def unimodular_inverse(m) -> np.ndarray:
    m = as_int_matrix(m)
    n, k = m.shape
    if n != k:
        raise NotUnimodular(f"matrix of shape {m.shape} is not square")
    if abs(det(m)) != 1:
        raise NotUnimodular("determinant is not +-1")
    res = snf(m)
    # m = P I Q  =>  m^-1 = Q^-1 P^-1
    return matmul(res.Q_inv, res.P_inv)


def gcd_of_entries(m) -> int:
    g = 0
    for val in np.asarray(m, dtype=object).flat:
        g = gcd(g, int(val))
    return g


def is_smith_form(d) -> bool:
    d = np.asarray(d, dtype=object)
    rows, cols = d.shape
    for i in range(rows):
        for j in range(cols):
            if i != j and d[i, j] != 0:
                return False
    diag = [int(d[i, i]) for i in range(min(rows, cols))]
    if any(x < 0 for x in diag):
        return False
    nz = [x for x in diag if x]
    if diag[: len(nz)] != nz:
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:]))
