"""H-eigenpair computation and verification.

Two tools live here:

* a bracketing power iteration for the spectral radius of an entrywise
  nonnegative tensor (the classical min/max-ratio iteration, made globally
  convergent by adding a small all-ones perturbation so the iterate stays
  strictly positive), and

* a residual-minimization search for general H-eigenpairs
  A x^{m-1} = lambda * x^{[m-1]}.  This is a heuristic multistart local
  search: it reports the pairs it finds and never claims completeness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .budget import SearchBudget
from .core import (
    Tensor,
    as_vector,
    canonicalize_direction,
    contract_m1,
    contract_m1_jacobian,
    hadamard_power,
)
from .errors import DegenerateInput, NotNonnegative

DEDUP_RADIUS = 1e-6


@dataclass
class EigenPair:
    """Candidate H-eigenpair: value, sup-norm-1 vector, sup-norm residual."""

    value: float
    vector: np.ndarray
    residual: float

    def to_json_dict(self) -> dict:
        return {
            "lambda": float(self.value),
            "x": [float(v) for v in self.vector],
            "residual": float(self.residual),
        }


@dataclass
class SpectralRadiusResult:
    """Outcome of the nonnegative-tensor spectral radius iteration.

    rho is reported for the unshifted tensor: the bracket midpoint of the
    perturbed iteration minus the perturbation bound shift * n^(m-1);
    uncertainty folds the final bracket width together with that bound.
    """

    rho: float
    perron_vector: np.ndarray
    iterations: int
    converged: bool
    shift_epsilon: float
    uncertainty: float
    bracket: tuple
    bracket_history: list = field(default_factory=list, repr=False)

    def to_json_dict(self) -> dict:
        return {
            "rho": float(self.rho),
            "perron_vector": [float(v) for v in self.perron_vector],
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
            "shift_epsilon": float(self.shift_epsilon),
            "uncertainty": float(self.uncertainty),
            "bracket": [float(self.bracket[0]), float(self.bracket[1])],
        }


def nqz_spectral_radius(
    B: Tensor,
    tol: float = 1e-11,
    max_iter: int = 20000,
    shift_epsilon: float = 1e-8,
) -> SpectralRadiusResult:
    """Spectral radius of a nonnegative tensor by bracketing power iteration.

    Iterates x <- (B' x^{m-1})^{[1/(m-1)]}, normalized, for the perturbed
    tensor B' = B + eps * J (J all ones).  The ratios
    (B'x^{m-1})_i / x_i^{m-1} give a monotone [min, max] bracket around
    rho(B').  The perturbation is scaled relative to the largest entry of B
    (eps = shift_epsilon * max|B|) so the result commutes exactly with
    positive rescaling of B.
    """
    if np.any(B.data < 0.0):
        raise NotNonnegative("spectral radius iteration requires a nonnegative tensor")
    m, n = B.order, B.dim
    max_entry = float(np.max(B.data))
    if max_entry == 0.0:
        return SpectralRadiusResult(
            rho=0.0,
            perron_vector=np.ones(n),
            iterations=0,
            converged=True,
            shift_epsilon=0.0,
            uncertainty=0.0,
            bracket=(0.0, 0.0),
        )

    eps = shift_epsilon * max_entry
    shifted = B.data + eps  # + eps * (all-ones tensor)
    x = np.ones(n)
    lo = hi = 0.0
    history = []
    it = 0
    converged = False
    while it < max_iter:
        it += 1
        y = shifted
        for _ in range(m - 1):
            y = y.dot(x)
        ratios = y / x ** (m - 1)
        lo, hi = float(np.min(ratios)), float(np.max(ratios))
        history.append((lo, hi))
        if hi - lo <= tol * max(1.0, hi):
            converged = True
            break
        x = y ** (1.0 / (m - 1))
        x = x / np.max(x)

    correction = eps * n ** (m - 1)
    rho = max(0.0, 0.5 * (lo + hi) - correction)
    return SpectralRadiusResult(
        rho=rho,
        perron_vector=x / np.max(x),
        iterations=it,
        converged=converged,
        shift_epsilon=eps,
        uncertainty=0.5 * (hi - lo) + correction,
        bracket=(lo, hi),
        bracket_history=history,
    )


# ---------------------------------------------------------------------------
# general H-eigenpairs by residual minimization


def eig_residual(A: Tensor, value: float, x) -> float:
    """Sup-norm of A x^{m-1} - value * x^{[m-1]}."""
    v = as_vector(x, dim=A.dim)
    return float(
        np.max(np.abs(contract_m1(A, v) - value * hadamard_power(v, A.order - 1)))
    )


def _least_squares_value(ax: np.ndarray, xm: np.ndarray) -> float:
    denom = float(np.dot(xm, xm))
    if denom == 0.0:
        return 0.0
    return float(np.dot(ax, xm)) / denom


def _residual_objective(A: Tensor, z: np.ndarray):
    """Squared residual at z/||z||_2, with its gradient in z.

    The eigenvalue is eliminated by least squares, so its derivative
    drops out of the gradient (envelope argument).
    """
    m = A.order
    nz = float(np.linalg.norm(z))
    if nz == 0.0:
        return np.inf, np.zeros_like(z)
    x = z / nz
    ax = contract_m1(A, x)
    xm = x ** (m - 1)
    lam = _least_squares_value(ax, xm)
    g = ax - lam * xm
    r = float(np.dot(g, g))
    grad_x = 2.0 * contract_m1_jacobian(A, x).T.dot(g)
    grad_x -= 2.0 * lam * (m - 1) * x ** (m - 2) * g
    grad_z = (grad_x - np.dot(grad_x, x) * x) / nz
    return r, grad_z


def _newton_polish(A: Tensor, x: np.ndarray, lam: float, max_steps: int = 12):
    """Square-system Newton refinement with the largest component pinned."""
    m, n = A.order, A.dim
    j = int(np.argmax(np.abs(x)))
    best_x, best_lam = x.copy(), lam
    best_res = eig_residual(A, lam, x)
    for _ in range(max_steps):
        ax = contract_m1(A, x)
        xm = x ** (m - 1)
        g = ax - lam * xm
        K = np.zeros((n + 1, n + 1))
        K[:n, :n] = contract_m1_jacobian(A, x) - lam * (m - 1) * np.diag(x ** (m - 2))
        K[:n, n] = -xm
        K[n, j] = 1.0
        rhs = np.zeros(n + 1)
        rhs[:n] = -g
        rhs[n] = 0.0
        try:
            delta = np.linalg.solve(K, rhs)
        except np.linalg.LinAlgError:
            break
        x = x + delta[:n]
        lam = lam + float(delta[n])
        res = eig_residual(A, lam, x)
        if res < best_res:
            best_x, best_lam, best_res = x.copy(), lam, res
        if res <= 1e-15 * max(1.0, abs(lam)):
            break
    return best_x, best_lam, best_res


def find_h_eigenpairs(A: Tensor, budget: SearchBudget | None = None) -> list:
    """Multistart search for H-eigenpairs with residual <= budget.tol.

    Starts are the coordinate directions, the uniform vector, and
    budget.starts seeded random points; start k draws from sub-seed
    seed ^ k and results merge in start order, so the output is
    deterministic.  An empty list means "none found", not "none exist".
    """
    if budget is None:
        budget = SearchBudget()
    m, n = A.order, A.dim

    starts = [np.eye(n)[i] for i in range(n)]
    starts.append(np.ones(n) / np.sqrt(n))
    for k in range(budget.starts):
        rng = budget.start_rng(k)
        z = rng.standard_normal(n)
        if np.linalg.norm(z) < 1e-12:
            z = np.ones(n)
        starts.append(z / np.linalg.norm(z))

    found: list[EigenPair] = []
    for z0 in starts:
        res = scipy.optimize.minimize(
            lambda z: _residual_objective(A, z),
            z0,
            jac=True,
            method="L-BFGS-B",
            options={"maxiter": budget.iters, "ftol": 1e-18, "gtol": 1e-14},
        )
        z = res.x
        if float(np.linalg.norm(z)) < 1e-12 or not np.all(np.isfinite(z)):
            continue
        x = z / np.linalg.norm(z)
        lam = _least_squares_value(contract_m1(A, x), x ** (m - 1))
        x, lam, _ = _newton_polish(A, x, lam)
        if float(np.max(np.abs(x))) < 1e-12 or not np.all(np.isfinite(x)):
            continue
        x = canonicalize_direction(x)
        lam = _least_squares_value(contract_m1(A, x), x ** (m - 1))
        residual = eig_residual(A, lam, x)
        if residual > budget.tol:
            continue
        if any(np.max(np.abs(x - p.vector)) <= DEDUP_RADIUS for p in found):
            continue
        found.append(EigenPair(value=lam, vector=x, residual=residual))
    return found


def verify_eigenpair(A: Tensor, pair: EigenPair, tol: float) -> bool:
    """True iff the pair's residual passes a scale-aware check."""
    x = as_vector(pair.vector, dim=A.dim)
    if float(np.max(np.abs(x))) == 0.0:
        raise DegenerateInput("eigenvector must be nonzero")
    ax = contract_m1(A, x)
    lhs = float(np.max(np.abs(ax - pair.value * hadamard_power(x, A.order - 1))))
    return lhs <= tol * max(1.0, float(np.max(np.abs(ax))))
