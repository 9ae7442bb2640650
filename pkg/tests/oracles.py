"""Independent brute-force oracles.

Everything here deliberately avoids the library's own kernels: contractions
are plain Python loops, matrix eigenvalues come from determinant
interpolation, the complementarity oracle is a dense grid scan.  These are
the reference implementations the fast paths are checked against.
"""

import itertools

import numpy as np


def brute_contract_m1(data: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Loop-based (m-1)-fold contraction."""
    m = data.ndim
    n = data.shape[0]
    out = np.zeros(n)
    for idx in itertools.product(range(n), repeat=m):
        prod = data[idx]
        for k in idx[1:]:
            prod *= x[k]
        out[idx[0]] += prod
    return out


def brute_contract_full(data: np.ndarray, x: np.ndarray) -> float:
    v = brute_contract_m1(data, x)
    return float(sum(x[i] * v[i] for i in range(len(x))))


def principal_minors_all_positive(M: np.ndarray, tol: float = 0.0) -> bool:
    """P-matrix test by enumerating every principal submatrix determinant."""
    n = M.shape[0]
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            sub = M[np.ix_(subset, subset)]
            if np.linalg.det(sub) <= tol:
                return False
    return True


def min_principal_minor(M: np.ndarray) -> float:
    n = M.shape[0]
    best = np.inf
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            best = min(best, float(np.linalg.det(M[np.ix_(subset, subset)])))
    return best


def char_poly_coefficients(M: np.ndarray) -> np.ndarray:
    """Coefficients of det(M - t I) by determinant evaluation at n+1 nodes
    and an exact Vandermonde solve (no eigenvalue routine involved)."""
    n = M.shape[0]
    nodes = np.arange(n + 1, dtype=float)
    vals = np.array([np.linalg.det(M - t * np.eye(n)) for t in nodes])
    V = np.vander(nodes, n + 1, increasing=False)
    return np.linalg.solve(V, vals)


def char_poly_real_roots(M: np.ndarray, imag_tol: float = 1e-8) -> np.ndarray:
    roots = np.roots(char_poly_coefficients(M))
    real = roots[np.abs(roots.imag) <= imag_tol * (1.0 + np.abs(roots))].real
    return np.sort(real)


def psd_by_char_poly(M: np.ndarray, tol: float = 1e-9) -> bool:
    """Symmetric PSD test: every characteristic root is >= -tol."""
    sym = 0.5 * (M + M.T)
    roots = np.roots(char_poly_coefficients(sym))
    return bool(np.all(roots.real >= -tol))


def power_bracket_longrun(
    data: np.ndarray, shift: float = 1e-12, max_iter: int = 1_000_000, tol: float = 1e-9
):
    """Independent long-run bracketing power iteration at a tiny shift.

    Returns (lo, hi) for the shifted tensor; the unshifted radius lies in
    [lo - shift * n^(m-1), hi].
    """
    m = data.ndim
    n = data.shape[0]
    shifted = data + shift
    x = np.ones(n)
    lo = hi = 0.0
    for _ in range(max_iter):
        y = shifted
        for _ in range(m - 1):
            y = y.dot(x)
        ratios = y / x ** (m - 1)
        lo, hi = float(ratios.min()), float(ratios.max())
        if hi - lo <= tol * max(1.0, hi):
            break
        x = y ** (1.0 / (m - 1))
        x /= x.max()
    return lo, hi


def tcp_grid_argmin(data: np.ndarray, q: np.ndarray, lo=0.0, hi=2.0, step=1e-3):
    """Dense grid scan (n = 2 only) minimizing the natural residual
    ||min(x, A x^{m-1} + q)||_inf over [lo, hi]^2.  Chunked to bound memory."""
    assert data.shape[0] == 2
    ticks = np.arange(lo, hi + step / 2, step)
    X0, X1 = np.meshgrid(ticks, ticks, indexing="ij")
    X = np.stack([X0.ravel(), X1.ravel()], axis=1)
    m = data.ndim
    spec = (
        "abcdef"[:m]
        + ","
        + ",".join("z" + c for c in "abcdef"[1:m])
        + "->za"
    )
    best_x, best_res = None, np.inf
    for s in range(0, X.shape[0], 500_000):
        rows = X[s : s + 500_000]
        F = np.einsum(spec, data, *([rows] * (m - 1)), optimize=True) + q
        res = np.max(np.abs(np.minimum(rows, F)), axis=1)
        j = int(np.argmin(res))
        if res[j] < best_res:
            best_res, best_x = float(res[j]), rows[j]
    return best_x, best_res


def simplex_min_bruteforce(data: np.ndarray, depth: int) -> float:
    """Minimum of the degree-m form over the rational simplex grid, with the
    form evaluated by the loop-based contraction."""
    n = data.shape[0]
    best = np.inf
    for comp in _compositions(depth, n):
        x = np.array(comp, dtype=float) / depth
        best = min(best, brute_contract_full(data, x))
    return float(best)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head, *rest)
