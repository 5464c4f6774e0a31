"""Dense two-phase simplex for small standard-form programs.

Solves ``min c.y  s.t.  M y = b, y >= 0`` on a full tableau with Bland's
rule, which cannot cycle.  Sizes here are a few dozen rows and a few
thousand columns, so a dense tableau is simpler than any factorisation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class LPInfeasible(RuntimeError):
    pass


class LPUnbounded(RuntimeError):
    pass


@dataclass
class SimplexResult:
    y: np.ndarray
    value: float
    duals: np.ndarray  # multipliers of the equality rows
    basis: np.ndarray
    iterations: int


def _pivot(T, r, k):
    T[r] /= T[r, k]
    col = T[:, k].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r])


def _rebuild(T, basis, A, b, cost):
    """Recompute the tableau from the basis to shed accumulated roundoff."""
    m = basis.size
    B = A[:m][:, basis]
    body = np.linalg.solve(B, np.hstack([A[:m], b[:m, None]]))
    T[:m] = body
    T[-1, :-1] = cost - cost[basis] @ body[:, :-1]
    T[-1, -1] = -cost[basis] @ body[:, -1]


def _run(T, basis, ncols, tol, max_iter, A, b, cost, refresh=50):
    """Minimise the objective held in the last row; returns iterations."""
    it = 0
    m = T.shape[0] - 1
    # reduced costs carry roundoff of the whole elimination; entering needs
    # a clearly negative one, or degenerate pivots go on forever
    red_tol = 1e3 * tol * (1.0 + np.abs(cost).max())
    while it < max_iter:
        if it and it % refresh == 0:
            _rebuild(T, basis, A, b, cost)
        red = T[-1, :ncols]
        cand = np.flatnonzero(red < -red_tol)
        if cand.size == 0:
            return it
        k = int(cand[0])  # Bland: smallest entering index
        col = T[:m, k]
        pos = col > tol
        if not np.any(pos):
            raise LPUnbounded("objective unbounded below")
        ratios = np.full(m, np.inf)
        ratios[pos] = T[:m, -1][pos] / col[pos]
        best = ratios.min()
        ties = np.flatnonzero(ratios <= best + tol * (1.0 + abs(best)))
        r = int(ties[np.argmin(basis[ties])])  # Bland: smallest leaving index
        _pivot(T, r, k)
        basis[r] = k
        it += 1
    raise RuntimeError("simplex iteration limit reached")


def simplex(c, M, b, *, tol: float = 1e-11, max_iter: int = 20000) -> SimplexResult:
    c = np.asarray(c, dtype=float)
    M = np.array(M, dtype=float)
    b = np.array(b, dtype=float)
    m, n = M.shape
    flip = b < 0
    M[flip] *= -1.0
    b[flip] *= -1.0
    # phase 1 on [M | I | b] with artificial basis
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = M
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = b
    T[-1, :n] = -M.sum(axis=0)
    T[-1, -1] = -b.sum()
    basis = np.arange(n, n + m)
    A1 = T[:m, :-1].copy()
    cost1 = np.concatenate([np.zeros(n), np.ones(m)])
    it = _run(T, basis, n + m, tol, max_iter, A1, b, cost1)
    if -T[-1, -1] > tol * (1.0 + np.abs(b).sum()):
        raise LPInfeasible("no feasible point")
    # drive remaining artificials out of the basis where possible
    for r in range(m):
        if basis[r] >= n:
            nz = np.flatnonzero(np.abs(T[r, :n]) > tol)
            if nz.size:
                _pivot(T, r, int(nz[0]))
                basis[r] = int(nz[0])
    keep = basis < n  # rows still carrying an artificial are redundant
    T = np.vstack([T[:m][keep], np.zeros((1, T.shape[1]))])
    basis = basis[keep]
    T = np.delete(T, np.s_[n : n + m], axis=1)
    # phase 2
    T[-1, :n] = c
    T[-1, -1] = 0.0
    for r, k in enumerate(basis):
        T[-1] -= c[k] * T[r]
    it += _run(T, basis, n, tol, max_iter, M[keep], b[keep], c)
    y = np.zeros(n)
    y[basis] = T[:-1, -1]
    # multipliers from the optimal basis: B^T u = c_B
    B = M[:, basis] if keep.all() else M[keep][:, basis]
    duals_k = np.linalg.solve(B.T, c[basis])
    duals = np.zeros(m)
    duals[np.flatnonzero(keep)] = duals_k
    duals[flip] *= -1.0
    return SimplexResult(y, float(c @ y), duals, basis, it)
