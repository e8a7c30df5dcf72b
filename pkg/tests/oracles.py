"""Independent oracles used to cross-check the package implementations.

Each oracle takes a deliberately different route from the code under test:
eigenvalues via LDL^T inertia counts + bisection (vs. the in-package Jacobi
iteration), zero-forcing closure via naive rescanning (vs. the worklist),
and Kalman rank via SVD on the raw, unnormalized matrix (vs. pivoted QR on
block-normalized powers).
"""
from __future__ import annotations

import numpy as np
import scipy.linalg

from zfnets.graph import Graph


def _inertia_negatives(d: np.ndarray, tiny: float) -> int | None:
    """Count negative eigenvalues of an LDL^T block-diagonal factor.

    Returns None when a block is numerically singular (the shift hit an
    eigenvalue) so the caller can nudge and retry.
    """
    n = d.shape[0]
    neg = 0
    i = 0
    while i < n:
        if i + 1 < n and d[i, i + 1] != 0.0:
            dii, djj, dij = d[i, i], d[i + 1, i + 1], d[i, i + 1]
            det = dii * djj - dij * dij
            trace = dii + djj
            if abs(det) <= tiny * tiny:
                return None
            if det < 0.0:
                neg += 1
            elif trace < 0.0:
                neg += 2
            i += 2
        else:
            if abs(d[i, i]) <= tiny:
                return None
            if d[i, i] < 0.0:
                neg += 1
            i += 1
    return neg


def bisection_eigenvalues(a: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """All eigenvalues of a symmetric matrix by inertia bisection, ascending."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if n == 0:
        return np.zeros(0)
    radii = np.sum(np.abs(a), axis=1) - np.abs(np.diag(a))
    lo = float(np.min(np.diag(a) - radii)) - 1.0
    hi = float(np.max(np.diag(a) + radii)) + 1.0
    scale = max(abs(lo), abs(hi), 1.0)
    tiny = 1e-14 * scale

    def count_below(x: float) -> int:
        shift = 0.0
        for _ in range(40):
            _, d, _ = scipy.linalg.ldl(a - (x + shift) * np.eye(n))
            neg = _inertia_negatives(d, tiny)
            if neg is not None:
                return neg
            shift += 3.7e-12 * scale  # retreat off the exact eigenvalue
        raise RuntimeError(f"inertia count kept hitting singular shifts at {x}")

    out = np.empty(n)
    for k in range(n):
        a_lo, a_hi = lo, hi
        while a_hi - a_lo > tol * scale:
            mid = 0.5 * (a_lo + a_hi)
            if count_below(mid) >= k + 1:
                a_hi = mid
            else:
                a_lo = mid
        out[k] = 0.5 * (a_lo + a_hi)
    return out


def closure_bruteforce(g: Graph, black: set[int]) -> frozenset[int]:
    """Zero-forcing closure by repeatedly rescanning every black node."""
    black = set(black)
    changed = True
    while changed:
        changed = False
        for v in sorted(black):
            white = [u for u in g.neighbors(v) if u not in black]
            if len(white) == 1:
                black.add(white[0])
                changed = True
    return frozenset(black)


def kalman_rank_svd(m: np.ndarray, b: np.ndarray) -> int:
    """Rank of [B, MB, ..., M^(n-1)B] straight from numpy's SVD-based rank."""
    n = m.shape[0]
    blocks = [b]
    for _ in range(n - 1):
        blocks.append(m @ blocks[-1])
    return int(np.linalg.matrix_rank(np.hstack(blocks)))
