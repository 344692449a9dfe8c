"""Brute-force finite-difference eigensolver for the radial equation.

Discretizes (-d2/dr2 + mass_factor*V(r) + centrifugal(r)) R = mass_factor*E*R
with three-point central differences and Dirichlet walls, extracts all
eigenvalues below the continuum threshold by Sturm-count bisection on the
symmetric tridiagonal operator, and sharpens them with two-level Richardson
extrapolation in the step size.  This path shares no algebra with the
closed-form spectrum and serves as its independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.linalg import solve_banded

from .errors import ConfigError, ConvergenceError
from .model import (
    HuaParameters,
    pekeris_coefficients,
    potential_value,
    s_factor,
    singularity_radius,
)

__all__ = [
    "GridConfig",
    "GridSpec",
    "DiscreteHamiltonian",
    "SpectrumResult",
    "build_grid",
    "assemble",
    "radial_operator_potential",
    "pole_exponent",
    "eigenvalues_below",
    "eigenvector",
    "continuum_threshold",
    "solve_bound_states",
    "count_nodes",
]


@dataclass(frozen=True)
class GridConfig:
    """Knobs for grid construction and refinement.

    tail_scale c sets r_max = r_e + c/b_h (c = 30 puts the potential within
    ~1e-12*V0 of its limit); wall_factor sets the Dirichlet wall where the
    potential exceeds wall_factor*V0 near the pole.  Explicit r_min/r_max
    override the automatic choices.
    """

    n_points: int = 4000
    refinements: int = 2
    tail_scale: float = 30.0
    wall_factor: float = 1e6
    r_min: float | None = None
    r_max: float | None = None


@dataclass(frozen=True)
class GridSpec:
    """Uniform radial grid: interior points only, Dirichlet at both ends."""

    r_min: float
    r_max: float
    n_points: int
    refinements: int = 2

    def __post_init__(self) -> None:
        if not (self.r_min < self.r_max):
            raise ConfigError(f"need r_min < r_max, got [{self.r_min}, {self.r_max}]")
        if self.n_points < 3:
            raise ConfigError(f"n_points must be >= 3, got {self.n_points}")
        if self.refinements < 1:
            raise ConfigError(f"refinements must be >= 1, got {self.refinements}")

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.n_points + 1)

    def nodes(self) -> np.ndarray:
        return self.r_min + self.h * np.arange(1, self.n_points + 1)

    def refined(self, level: int) -> "GridSpec":
        """Same interval with the step halved `level` times."""
        n = (self.n_points + 1) * 2**level - 1
        return GridSpec(self.r_min, self.r_max, n, self.refinements)


@dataclass(frozen=True)
class DiscreteHamiltonian:
    """Symmetric tridiagonal operator: diagonal entries and the constant off-diagonal.

    Eigenvalues carry matrix units (mass_factor * energy); `centrifugal` records
    which centrifugal form was assembled.
    """

    diagonal: np.ndarray
    off_diagonal: float
    grid: GridSpec
    centrifugal: str

    @property
    def size(self) -> int:
        return self.diagonal.shape[0]


@dataclass(frozen=True)
class SpectrumResult:
    """Bound eigenvalues (energy units) with convergence metadata."""

    energies: np.ndarray
    error_estimates: np.ndarray
    refinement_energies: list[np.ndarray]
    threshold: float
    mode: str
    grid: GridSpec
    r: np.ndarray | None = None
    vectors: np.ndarray | None = None
    extrapolation_order: float = 2.0


def build_grid(p: HuaParameters, config: GridConfig = GridConfig()) -> GridSpec:
    """Choose the truncated solution domain.

    For q > 0 the left wall sits where the potential has climbed to
    wall_factor*V0 inside the repulsive core, which has the closed form
    r_min = r_e - ln((1+W)/(1+W*q))/b_h with W = sqrt(wall_factor).  For
    q <= 0 there is no pole and r_min = 1e-6*r_e.
    """
    r0 = singularity_radius(p)
    if config.r_min is not None:
        r_min = config.r_min
        if r0 is not None and r_min <= r0:
            raise ConfigError(f"r_min = {r_min} must exceed the pole radius {r0:.12g}")
        if r_min <= 0:
            raise ConfigError(f"r_min must be positive, got {r_min}")
    elif r0 is not None:
        w_amp = math.sqrt(config.wall_factor)
        t_wall = (1.0 + w_amp) / (1.0 + w_amp * p.q)
        # below the validity threshold the pole sits at r0 < 0 and the wall
        # criterion can land outside the radial domain; stay at r > 0
        r_min = max(p.r_e - math.log(t_wall) / p.b_h, 1e-6 * p.r_e)
    else:
        r_min = 1e-6 * p.r_e
    r_max = config.r_max if config.r_max is not None else p.r_e + config.tail_scale / p.b_h
    if not (r_min < p.r_e < r_max):
        raise ConfigError(
            f"window [{r_min:.6g}, {r_max:.6g}] excludes the well minimum r_e = {p.r_e}"
        )
    return GridSpec(r_min, r_max, config.n_points, config.refinements)


def radial_operator_potential(r, p: HuaParameters, l: int, centrifugal_mode: str):
    """mass_factor*V(r) + centrifugal(r), the potential part of the radial operator.

    centrifugal_mode "exact" uses (D+2l-1)(D+2l-3)/(4r^2); "pekeris" uses the
    replacement A_l*(D0 + D1*s + D2*s^2).  Both agree at r = r_e through
    second order by construction.
    """
    w_pot = p.mass_factor * potential_value(r, p)
    cf = (p.D + 2 * l - 1) * (p.D + 2 * l - 3)
    if centrifugal_mode == "exact":
        return w_pot + cf / (4.0 * np.asarray(r, dtype=float) ** 2)
    if centrifugal_mode == "pekeris":
        pek = pekeris_coefficients(p)
        s = s_factor((np.asarray(r, dtype=float) - p.r_e) / p.r_e, p.q, p.alpha)
        a_l = cf / (4.0 * p.r_e**2)
        return w_pot + a_l * (pek.D0 + pek.D1 * s + pek.D2 * s**2)
    raise ConfigError(f"unknown centrifugal mode {centrifugal_mode!r}")


def pole_exponent(p: HuaParameters, l: int, centrifugal_mode: str) -> float | None:
    """Vanishing exponent s of the reduced solution at the pole, or None without one.

    Near r0 the operator potential behaves like C/(r - r0)^2; the regular
    Frobenius solution then vanishes like (r - r0)^s with
    s = (1 + sqrt(1 + 4C))/2.  C is sampled numerically from the assembled
    potential, keeping this estimate independent of the closed-form algebra.
    Returns None when the pole is absent or sits outside the radial domain
    (r0 <= 0, possible only below the validity threshold).
    """
    r0 = singularity_radius(p)
    if r0 is None or r0 <= 0.0:
        return None
    t = 1e-6 * (p.r_e - r0)
    c_sing = t**2 * float(radial_operator_potential(r0 + t, p, l, centrifugal_mode))
    if c_sing < -0.25:
        return None  # attractive singular core: no regular vanishing branch
    return 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * c_sing))


def assemble(
    p: HuaParameters, l: int, grid: GridSpec, centrifugal_mode: str = "pekeris"
) -> DiscreteHamiltonian:
    """Three-point discretization with Dirichlet ends."""
    r = grid.nodes()
    h = grid.h
    diag = 2.0 / h**2 + radial_operator_potential(r, p, l, centrifugal_mode)
    return DiscreteHamiltonian(
        diagonal=diag, off_diagonal=-1.0 / h**2, grid=grid, centrifugal=centrifugal_mode
    )


@njit(cache=True)
def _sturm_count(diag: np.ndarray, off_sq: float, shift: float, pivmin: float) -> int:
    """Number of eigenvalues strictly below `shift` (negative-pivot count of LDL)."""
    count = 0
    d = diag[0] - shift
    if abs(d) < pivmin:
        d = -pivmin
    if d < 0.0:
        count += 1
    for i in range(1, diag.shape[0]):
        d = diag[i] - shift - off_sq / d
        if abs(d) < pivmin:
            d = -pivmin
        if d < 0.0:
            count += 1
    return count


def eigenvalues_below(
    h: DiscreteHamiltonian, bound: float, k_max: int = 64
) -> np.ndarray:
    """All eigenvalues strictly below `bound`, ascending, via Sturm-count bisection.

    Each eigenvalue is bracketed to an absolute width of 1e-12 times the
    scale of the spectral window [Gershgorin lower bound, bound] (not the
    full matrix norm, which grows as 1/h^2 under refinement).  Internally
    rescales when entries are large enough to risk overflow in the pivot
    recurrence.
    """
    if not math.isfinite(bound):
        raise ConfigError("eigenvalue bound must be finite")
    if k_max < 1:
        raise ConfigError("k_max must be >= 1")
    diag = h.diagonal
    off = h.off_diagonal
    norm = float(np.max(np.abs(diag))) + 2.0 * abs(off)
    if norm > 1e100:  # overflow guard: work in rescaled units
        diag = diag / norm
        off = off / norm
        bound = bound / norm
        factor = norm
    else:
        factor = 1.0
    off_sq = off * off
    pivmin = np.finfo(float).tiny * max(1.0, off_sq)
    m = _sturm_count(diag, off_sq, bound, pivmin)
    if m == 0:
        return np.empty(0)
    m = min(m, k_max)
    lower = float(np.min(diag)) - 2.0 * abs(off)
    tol = 1e-12 * max(abs(bound), abs(lower), 1e-30)
    eigs = np.empty(m)
    lo = lower
    for i in range(m):
        a, b = lo, bound
        while b - a > tol:
            mid = 0.5 * (a + b)
            if _sturm_count(diag, off_sq, mid, pivmin) >= i + 1:
                b = mid
            else:
                a = mid
        eigs[i] = 0.5 * (a + b)
        lo = a  # next eigenvalue cannot lie below this bracket
    return eigs * factor


def eigenvector(h: DiscreteHamiltonian, eigenvalue: float, max_iter: int = 50) -> np.ndarray:
    """Inverse iteration with the bracketed eigenvalue as shift.

    Returns the normalized (unit Euclidean norm) eigenvector, sign-fixed so
    the largest-magnitude component is positive.
    """
    n = h.size
    ab = np.zeros((3, n))
    ab[0, 1:] = h.off_diagonal
    ab[2, :-1] = h.off_diagonal
    scale = float(np.max(np.abs(h.diagonal))) + 2.0 * abs(h.off_diagonal)
    shift = eigenvalue
    rng = np.random.default_rng(1811)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    for _ in range(max_iter):
        ab[1, :] = h.diagonal - shift
        try:
            w = solve_banded((1, 1), ab, v)
        except np.linalg.LinAlgError:
            shift += 1e-14 * scale  # nudge off an exactly singular shift
            continue
        w /= np.linalg.norm(w)
        if 1.0 - abs(float(np.dot(w, v))) < 1e-15:
            v = w
            break
        v = w
    imax = int(np.argmax(np.abs(v)))
    if v[imax] < 0:
        v = -v
    return v


def count_nodes(vector: np.ndarray, cutoff: float = 1e-8) -> int:
    """Interior sign changes, ignoring entries below cutoff * max |component|."""
    floor = cutoff * float(np.max(np.abs(vector)))
    significant = vector[np.abs(vector) > floor]
    signs = np.sign(significant)
    return int(np.sum(signs[1:] != signs[:-1]))


def continuum_threshold(p: HuaParameters, l: int, centrifugal_mode: str) -> float:
    """r -> inf limit of the full effective potential, in energy units.

    The exact centrifugal term vanishes at infinity, so that mode's threshold
    is V0; the replacement leaves a constant A_l*D0 behind.
    """
    if centrifugal_mode == "exact":
        return p.V0
    pek = pekeris_coefficients(p)
    a_l = (p.D + 2 * l - 1) * (p.D + 2 * l - 3) / (4.0 * p.r_e**2)
    return p.V0 + a_l * pek.D0 / p.mass_factor


def solve_bound_states(
    p: HuaParameters,
    l: int,
    centrifugal_mode: str = "pekeris",
    config: GridConfig = GridConfig(),
    want_vectors: bool = False,
    k_max: int = 64,
) -> SpectrumResult:
    """Bound spectrum below the continuum threshold, Richardson-extrapolated.

    Solves on `refinements` successively halved grids and extrapolates the
    last two levels with the channel's leading error order: h^2 on regular
    channels, h^(2s-1) when the Dirichlet wall truncates a pole where the
    reduced solution vanishes like (r-r0)^s with s < 3/2 (the wall layer then
    dominates the truncation error).  Reports |E_fine - E_coarse|/(2^p - 1)
    as the per-level error estimate and raises ConvergenceError when the two
    finest levels disagree by more than 1e-4 relative.  Eigenvectors, when
    requested, come from inverse iteration on the finest grid, normalized by
    the trapezoid rule in r.
    """
    base = build_grid(p, config)
    s_pole = pole_exponent(p, l, centrifugal_mode)
    order = 2.0 if s_pole is None else max(0.5, min(2.0, 2.0 * s_pole - 1.0))
    threshold = continuum_threshold(p, l, centrifugal_mode)
    bound_matrix = p.mass_factor * threshold
    per_level: list[np.ndarray] = []
    finest_ham = None
    for level in range(base.refinements):
        grid = base.refined(level)
        ham = assemble(p, l, grid, centrifugal_mode)
        eigs = eigenvalues_below(ham, bound_matrix, k_max=k_max)
        per_level.append(eigs / p.mass_factor)
        finest_ham = ham
    m = min(len(e) for e in per_level)
    per_level_t = [e[:m] for e in per_level]
    if m == 0:
        return SpectrumResult(
            energies=np.empty(0),
            error_estimates=np.empty(0),
            refinement_energies=per_level_t,
            threshold=threshold,
            mode=centrifugal_mode,
            grid=base,
            r=finest_ham.grid.nodes() if finest_ham is not None else None,
            extrapolation_order=order,
        )
    if base.refinements >= 2:
        coarse, fine = per_level_t[-2], per_level_t[-1]
        weight = 2.0**order
        energies = (weight * fine - coarse) / (weight - 1.0)
        err = np.abs(fine - coarse) / (weight - 1.0)
        rel = np.abs(fine - coarse) / np.maximum(np.abs(energies), 1e-300)
        if np.any(rel > 1e-4):
            worst = int(np.argmax(rel))
            raise ConvergenceError(
                f"refinement levels disagree by {rel[worst]:.3g} relative at "
                f"level {worst} (mode {centrifugal_mode}, l = {l}); refine the grid"
            )
    else:
        energies = per_level_t[-1].copy()
        err = np.full(m, np.nan)
    vectors = None
    r_nodes = finest_ham.grid.nodes()
    if want_vectors:
        vecs = []
        fine = per_level_t[-1]
        for i in range(m):
            v = eigenvector(finest_ham, fine[i] * p.mass_factor)
            norm = math.sqrt(np.trapezoid(v**2, r_nodes))
            vecs.append(v / norm)
        vectors = np.column_stack(vecs)
    return SpectrumResult(
        energies=energies,
        error_estimates=err,
        refinement_energies=per_level_t,
        threshold=threshold,
        mode=centrifugal_mode,
        grid=base,
        r=r_nodes,
        vectors=vectors,
        extrapolation_order=order,
    )
