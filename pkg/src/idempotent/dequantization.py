"""From the heat-type equation to Hamilton-Jacobi by the substitution S = -h ln u.

The solver integrates ``h u_t = (h^2 / 2m) u_xx + V u`` with explicit Euler
steps.  Under ``S = -h ln u`` this becomes
``S_t + S_x^2 / 2m + V = (h / 2m) S_xx``, and the diffusive term vanishes as
``h -> 0``, leaving the Hamilton-Jacobi equation whose ``V = 0`` solution is
the Hopf-Lax formula.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatch, NonPositiveInput, UnstableParameters

__all__ = [
    "Grid", "HamiltonianSpec", "HeatRun", "ActionField", "CFL_FRACTION",
    "default_grid", "stable_dt", "evolve_heat", "log_transform", "exp_transform",
    "deq_superpose_min", "hopf_lax", "dequantization_experiment",
    "superposition_experiment", "central_window", "random_quadratic",
]

CFL_FRACTION = 0.4


@dataclass(frozen=True)
class Grid:
    origin: float
    step: float
    count: int

    def __post_init__(self):
        if not self.step > 0 or self.count < 1:
            raise ValueError("grid needs step > 0 and at least one point")

    @classmethod
    def interval(cls, lo: float, hi: float, dx: float) -> "Grid":
        count = int(round((hi - lo) / dx)) + 1
        return cls(lo, dx, count)

    @property
    def x(self) -> np.ndarray:
        return self.origin + self.step * np.arange(self.count)


def default_grid(dx: float = 0.01) -> Grid:
    return Grid.interval(-4.0, 4.0, dx)


def central_window(grid: Grid) -> slice:
    """Inner half of the grid (outer quarter dropped on each side)."""
    q = grid.count // 4
    return slice(q, grid.count - q)


@dataclass(frozen=True)
class HamiltonianSpec:
    mass: float = 1.0
    potential: np.ndarray | None = None

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError("mass must be positive")
        if self.potential is not None and not np.all(np.isfinite(self.potential)):
            raise ValueError("potential must be finite")


@dataclass
class HeatRun:
    h: float
    grid: Grid
    t_final: float
    dt: float | None = None
    u: np.ndarray | None = field(default=None, repr=False)


@dataclass(frozen=True)
class ActionField:
    grid: Grid
    S: np.ndarray

    def __post_init__(self):
        if self.S.shape != (self.grid.count,):
            raise GridMismatch(f"S has shape {self.S.shape}, grid has {self.grid.count} points")


def stable_dt(h: float, dx: float, mass: float) -> float:
    return CFL_FRACTION * mass * dx * dx / h


def evolve_heat(u0, spec: HamiltonianSpec, run: HeatRun) -> np.ndarray:
    """Advance ``u0`` to ``run.t_final``.

    The endpoint values stay at their initial values (Dirichlet data taken
    from ``u0``), which keeps the solution map linear in ``u0``.  The
    potential term is applied by the exact factor ``exp(V dt / h)``.
    """
    u = np.array(u0, dtype=float)
    if u.shape != (run.grid.count,):
        raise GridMismatch(f"u0 has shape {u.shape}, grid has {run.grid.count} points")
    if run.grid.count < 3:
        raise GridMismatch("the heat solver needs at least 3 grid points")
    if not np.all(u > 0):
        raise NonPositiveInput("initial data must be strictly positive")
    if not (run.h > 0 and run.t_final > 0):
        raise UnstableParameters("h and t_final must be positive")
    dx, m = run.grid.step, spec.mass
    limit = m * dx * dx / run.h
    dt = run.dt if run.dt is not None else stable_dt(run.h, dx, m)
    if not 0 < dt <= limit:
        raise UnstableParameters(f"dt={dt} violates the stability bound {limit}")
    steps = max(1, math.ceil(run.t_final / dt - 1e-9))
    dt = run.t_final / steps
    r = (run.h / (2 * m)) * dt / (dx * dx)
    growth = None
    if spec.potential is not None and np.any(spec.potential != 0):
        growth = np.exp(np.asarray(spec.potential, dtype=float)[1:-1] * dt / run.h)
    for _ in range(steps):
        lap = u[:-2] - 2 * u[1:-1] + u[2:]
        interior = u[1:-1] + r * lap
        if growth is not None:
            interior = interior * growth
        u[1:-1] = interior
    run.u = u
    return u


def log_transform(u, h: float, grid: Grid | None = None) -> ActionField:
    """``S = -h ln u``."""
    u = np.asarray(u, dtype=float)
    if not np.all(u > 0):
        raise NonPositiveInput("log transform needs strictly positive values")
    grid = grid or Grid(0.0, 1.0, u.shape[0])
    return ActionField(grid, -h * np.log(u))


def exp_transform(S: ActionField, h: float) -> np.ndarray:
    """``u = exp(-S / h)``, the inverse of :func:`log_transform`."""
    return np.exp(-S.S / h)


def deq_superpose_min(S1: ActionField, S2: ActionField, lam1: float, lam2: float,
                      h: float) -> ActionField:
    """``-h ln(exp(-(lam1 + S1)/h) + exp(-(lam2 + S2)/h))``, pointwise."""
    if S1.grid != S2.grid:
        raise GridMismatch("action fields on different grids")
    a = (lam1 + S1.S) / h
    b = (lam2 + S2.S) / h
    return ActionField(S1.grid, -h * np.logaddexp(-a, -b))


def hopf_lax(S0: ActionField, t: float, mass: float) -> ActionField:
    """``S(x, t) = min_y S0(y) + m (x - y)^2 / 2t``, minimised over grid points."""
    if not t > 0:
        raise ValueError("t must be positive")
    x = S0.grid.x
    out = np.empty_like(x)
    chunk = 256
    for lo in range(0, x.size, chunk):
        xc = x[lo:lo + chunk, None]
        out[lo:lo + chunk] = np.min(S0.S[None, :] + mass * (xc - x[None, :]) ** 2 / (2 * t), axis=1)
    return ActionField(S0.grid, out)


def _evolve_action(S0: ActionField, spec: HamiltonianSpec, h: float, t: float) -> ActionField:
    # shifting by min S0 keeps exp(-S/h) away from underflow; linearity makes it exact
    shift = float(np.min(S0.S))
    u0 = np.exp(-(S0.S - shift) / h)
    u = evolve_heat(u0, spec, HeatRun(h, S0.grid, t))
    S = log_transform(u, h, S0.grid)
    return ActionField(S0.grid, S.S + shift)


def dequantization_experiment(S0: ActionField, spec: HamiltonianSpec, hs, t: float):
    """Sup-norm gap between the log-transformed heat solution and Hopf-Lax.

    Returns ``[(h, error), ...]`` with the error measured on the central window.
    """
    if spec.potential is not None and np.any(spec.potential != 0):
        raise ValueError("the Hopf-Lax comparison needs V = 0")
    ref = hopf_lax(S0, t, spec.mass).S
    win = central_window(S0.grid)
    table = []
    for h in hs:
        S = _evolve_action(S0, spec, h, t).S
        table.append((h, float(np.max(np.abs(S[win] - ref[win])))))
    return table


def superposition_experiment(S1: ActionField, S2: ActionField, lam1: float, lam2: float,
                             spec: HamiltonianSpec, h: float, t: float) -> float:
    """Discrepancy between superposing before and after the evolution.

    Path A evolves the combined datum ``lam1 S1 (+)_h lam2 S2``; path B
    evolves each field and combines afterwards.  Both are the same linear
    heat evolution, so they agree up to round-off on the central window.
    """
    combined = deq_superpose_min(S1, S2, lam1, lam2, h)
    path_a = _evolve_action(combined, spec, h, t)
    path_b = deq_superpose_min(_evolve_action(S1, spec, h, t), _evolve_action(S2, spec, h, t),
                               lam1, lam2, h)
    win = central_window(S1.grid)
    return float(np.max(np.abs(path_a.S[win] - path_b.S[win])))


def random_quadratic(grid: Grid, rng) -> ActionField:
    """``a (x - c)^2 + b`` with ``a`` in [0.5, 2], ``c`` in [-1, 1], ``b`` in [0, 1]."""
    a, c, b = rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0), rng.uniform(0.0, 1.0)
    return ActionField(grid, a * (grid.x - c) ** 2 + b)
