"""Deterministic search budgets.

Every randomized search in the package derives its randomness from a
SearchBudget: start number k always uses the sub-seed ``seed ^ k`` and
results are merged in start order, so outcomes do not depend on how the
starts are scheduled.
"""

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9
DEFAULT_TAU_REL = 1e-7


@dataclass(frozen=True)
class SearchBudget:
    """Configuration for the randomized certify/refute/solve searches.

    seed        base RNG seed (start k uses seed ^ k)
    starts      number of randomized starts, >= 1
    iters       iteration cap per local search
    grid_depth  subdivision depth for simplex grids
    tol         acceptance / refutation tolerance, > 0
    tau_rel     relative support threshold for the weak sign functional
    """

    seed: int = 0
    starts: int = 16
    iters: int = 200
    grid_depth: int = 20
    tol: float = DEFAULT_TOL
    tau_rel: float = DEFAULT_TAU_REL

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if self.iters < 1:
            raise ValueError("iters must be >= 1")
        if self.grid_depth < 1:
            raise ValueError("grid_depth must be >= 1")
        if not (self.tol > 0.0):
            raise ValueError("tol must be positive")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")

    def subseed(self, k: int) -> int:
        return int(self.seed) ^ int(k)

    def start_rng(self, k: int) -> np.random.Generator:
        """RNG for start number k (deterministic, scheduling independent)."""
        return np.random.default_rng(self.subseed(k))

    def to_json_dict(self) -> dict:
        return {
            "seed": int(self.seed),
            "starts": int(self.starts),
            "iters": int(self.iters),
            "grid_depth": int(self.grid_depth),
            "tol": float(self.tol),
            "tau_rel": float(self.tau_rel),
        }
