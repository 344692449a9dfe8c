"""Algebraic bound-state spectrum via the superpotential ladder.

The dimensionless radial problem (-d2/dx2 + W(x)) R = E_shift R with
W = -V1*u^2 - V2*u (constant absorbed into E_shift) is solved exactly by the
superpotential

    phi(x) = A * u(x) + B,      u(x) = 1/(1 - q e^(-alpha*x)),

whose Riccati combination phi^2 - phi' reproduces W - E_shift0.  Boundary
conditions (R -> 0 both at the pole and at infinity) force A < 0 and
A + B > 0, which fixes the root branch.  The partner-potential construction
is shape invariant under a -> a - alpha, and accumulating the constant
remainders yields the whole spectrum in closed form.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    AdmissibilityError,
    LadderDegenerateError,
    MarginalLevelWarning,
    NoRealSolutionError,
    SingularityError,
    UnboundLevelError,
    ValidityError,
    ValidityWarning,
)
from .model import (
    EffectiveCoefficients,
    HuaParameters,
    PekerisCoefficients,
    QuantumNumbers,
    centrifugal_factor,
    u_factor,
)

__all__ = [
    "SusyState",
    "SpectrumLevel",
    "superpotential_params",
    "superpotential_value",
    "superpotential_derivative",
    "riccati_residual",
    "ground_state_wavefunction",
    "ground_state_window",
    "partner_potentials",
    "shape_invariance_remainder",
    "shifted_eigenvalue",
    "delta_lambda",
    "energy_level",
    "count_bound_states",
    "verification_grid",
]

# Slack applied when deciding whether a level sits at the binding turning point.
_TURNING_POINT_TOL = 1e-12


@dataclass(frozen=True)
class SusyState:
    """Superpotential parameters for one angular-momentum channel.

    A is the amplitude multiplying u (negative, from the pole-side boundary
    condition), B the constant offset, a0 = A the initial ladder value and
    gs_energy_shifted = -B^2 the shifted ground-state eigenvalue.  admissible
    records whether A + B > 0, i.e. whether the ground state decays at
    infinity.
    """

    alpha: float
    A: float
    B: float
    a0: float
    V1: float
    V2: float
    gs_energy_shifted: float
    admissible: bool

    @property
    def ladder_sum(self) -> float:
        return self.V1 + self.V2


@dataclass(frozen=True)
class SpectrumLevel:
    """One bound level with the closed-form bookkeeping quantities."""

    n_r: int
    l: int
    N_r: float
    lambda_l: float
    delta_l: float
    energy: float
    method: str = "closed-form"


def superpotential_params(eff: EffectiveCoefficients) -> SusyState:
    """Fix A and B from the Riccati matching and the boundary conditions.

    A = -(alpha/2) * (1 + sqrt(1 - 4*V1/alpha^2)) takes the root branch that
    makes A < 0; B = -(A + (V1+V2)/A)/2 then matches the linear term.  Raises
    NoRealSolutionError when the radicand is negative, and warns when
    A + B <= 0 (no admissible ground state in this channel).
    """
    alpha, v1, v2 = eff.alpha, eff.V1, eff.V2
    radicand = 1.0 - 4.0 * v1 / alpha**2
    if radicand < 0.0:
        raise NoRealSolutionError(
            f"superpotential radicand 1 - 4*V1/alpha^2 = {radicand:.6g} < 0; "
            "the amplitude would be complex"
        )
    a = -(alpha / 2.0) * (1.0 + math.sqrt(radicand))
    assert a < 0.0
    b = -0.5 * (a + (v1 + v2) / a)
    admissible = a + b > 0.0
    if not admissible:
        warnings.warn(
            f"A + B = {a + b:.6g} <= 0: ground state not normalizable at infinity",
            ValidityWarning,
            stacklevel=2,
        )
    return SusyState(
        alpha=alpha,
        A=a,
        B=b,
        a0=a,
        V1=v1,
        V2=v2,
        gs_energy_shifted=-(b**2),
        admissible=admissible,
    )


def _check_left_of_pole(x, q: float, alpha: float) -> None:
    if q > 0.0:
        x0 = math.log(q) / alpha
        if np.any(np.asarray(x, dtype=float) <= x0):
            raise SingularityError(
                f"superpotential has a pole at x0 = {x0:.12g}; got a point at or below it"
            )


def superpotential_value(x, s: SusyState, q: float):
    """phi(x) = A/(1 - q e^(-alpha*x)) + B."""
    _check_left_of_pole(x, q, s.alpha)
    return s.A * u_factor(x, q, s.alpha) + s.B


def superpotential_derivative(x, s: SusyState, q: float):
    """phi'(x) = A*alpha*(u - u^2), the exact derivative of the superpotential."""
    _check_left_of_pole(x, q, s.alpha)
    u = u_factor(x, q, s.alpha)
    return s.A * s.alpha * (u - u**2)


def riccati_residual(x, s: SusyState, q: float):
    """phi^2 - phi' - (W - E_shift0) with W = -V1*u^2 - V2*u; zero up to rounding."""
    u = u_factor(x, q, s.alpha)
    phi = s.A * u + s.B
    dphi = s.A * s.alpha * (u - u**2)
    w = -s.V1 * u**2 - s.V2 * u
    return phi**2 - dphi - (w - s.gs_energy_shifted)


def ground_state_wavefunction(x, s: SusyState, q: float):
    """Unnormalized R0(x) = e^(-(A+B)x) * (1 - q e^(-alpha*x))^(-A/alpha).

    Decays at infinity when A + B > 0 and vanishes toward the pole because
    -A/alpha > 0.
    """
    _check_left_of_pole(x, q, s.alpha)
    x_arr = np.asarray(x, dtype=float)
    t = np.exp(-s.alpha * x_arr)
    return np.exp(-(s.A + s.B) * x_arr) * (1.0 - q * t) ** (-s.A / s.alpha)


def _log_ground_state(x: float, s: SusyState, q: float) -> float:
    t = math.exp(-s.alpha * x)
    return -(s.A + s.B) * x - (s.A / s.alpha) * math.log(1.0 - q * t)


def ground_state_window(s: SusyState, q: float, drop: float = 1e-8) -> tuple[float, float]:
    """x-interval outside which R0 has fallen below `drop` times its peak.

    The peak sits where phi = 0, i.e. u = -B/A.  Both endpoints are located by
    bisection on the log amplitude.  Requires an admissible state (A + B > 0).
    """
    if not s.admissible:
        raise AdmissibilityError("A + B <= 0: ground state has no decaying tail")
    u_peak = -s.B / s.A
    # u > 1 requires B > -A = |A|, guaranteed by admissibility together with A < 0
    x_peak = -math.log((1.0 - 1.0 / u_peak) / q) / s.alpha if q > 0 else 0.0
    log_peak = _log_ground_state(x_peak, s, q)
    target = log_peak + math.log(drop)

    def bisect(lo: float, hi: float) -> float:
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if _log_ground_state(mid, s, q) > target:
                hi = mid
            else:
                lo = mid
        return 0.5 * (lo + hi)

    # left endpoint: walk toward the pole (q > 0) or far left (q <= 0)
    if q > 0:
        x0 = math.log(q) / s.alpha
        lo = x0 + (x_peak - x0) * 1e-15
    else:
        lo = x_peak - 1.0
        while _log_ground_state(lo, s, q) > target:
            lo = x_peak - 2.0 * (x_peak - lo)
    x_lo = bisect(lo, x_peak)

    hi = x_peak + 1.0
    while _log_ground_state(hi, s, q) > target:
        hi = x_peak + 2.0 * (hi - x_peak)
    x_hi = bisect(hi, x_peak)
    return x_lo, x_hi


def partner_potentials(x, a: float, ladder_sum: float, alpha: float, q: float):
    """(V+, V-) = (phi_a^2 + phi_a', phi_a^2 - phi_a') for phi_a = a*u + B(a).

    B(a) = -(a + ladder_sum/a)/2 extends the ground-channel offset to an
    arbitrary ladder value a; shape invariance states
    V+(x, a) = V-(x, a - alpha) + R(a - alpha) with an x-independent R.
    """
    if a == 0.0:
        raise LadderDegenerateError("ladder value a = 0: offset B(a) undefined")
    u = u_factor(x, q, alpha)
    b = -0.5 * (a + ladder_sum / a)
    phi = a * u + b
    dphi = a * alpha * (u - u**2)
    return phi**2 + dphi, phi**2 - dphi


def shape_invariance_remainder(
    a_prev: float, a_next: float, V1: float, V2: float
) -> float:
    """R = ((a_prev + (V1+V2)/a_prev)^2 - (a_next + (V1+V2)/a_next)^2) / 4."""
    if a_prev == 0.0 or a_next == 0.0:
        raise LadderDegenerateError("ladder value hit zero; remainder undefined")
    f = V1 + V2
    return 0.25 * ((a_prev + f / a_prev) ** 2 - (a_next + f / a_next) ** 2)


def shifted_eigenvalue(n_r: int, s: SusyState) -> float:
    """E_shift(n_r) = -((a0 - n_r*alpha + (V1+V2)/(a0 - n_r*alpha))^2) / 4.

    Accumulates the shape-invariance remainders in closed (telescoped) form;
    n_r = 0 reproduces -B^2.
    """
    a_n = s.a0 - n_r * s.alpha
    if a_n == 0.0:
        raise LadderDegenerateError(f"ladder value a0 - {n_r}*alpha vanished")
    return -0.25 * (a_n + s.ladder_sum / a_n) ** 2


def delta_lambda(
    p: HuaParameters, l: int, pek: PekerisCoefficients
) -> tuple[float, float]:
    """The pair (delta_l, lambda_l) controlling level positions and binding.

    delta_l = sqrt(1/4 + beta*(1 - 1/q)^2 + gamma_l*D2/q^2)
    lambda_l = beta*(1/q^2 - 1) + gamma_l*(D2/q^2 - D1/q)

    with beta = mass_factor*V0/b_h^2 and
    gamma_l = (D + 2l - 1)(D + 2l - 3)/(4 b_h^2 r_e^2).  A level n_r is bound
    iff (n_r + delta_l + 1/2)^2 <= lambda_l.
    """
    q = p.q
    if q <= 0.0:
        raise ValidityError(
            f"closed-form spectrum requires q > 0 (got q = {q}); "
            "outside the validity window"
        )
    beta = p.mass_factor * p.V0 / p.b_h**2
    gamma_l = centrifugal_factor(p.D, l) / (4.0 * p.b_h**2 * p.r_e**2)
    radicand = 0.25 + beta * (1.0 - 1.0 / q) ** 2 + gamma_l * pek.D2 / q**2
    if radicand < 0.0:
        raise NoRealSolutionError(
            f"delta_l radicand = {radicand:.6g} < 0 for D = {p.D}, l = {l}; "
            "no real level exists (attractive centrifugal regime)"
        )
    delta_l = math.sqrt(radicand)
    lambda_l = beta * (1.0 / q**2 - 1.0) + gamma_l * (pek.D2 / q**2 - pek.D1 / q)
    return delta_l, lambda_l


def _enforce_gate(p: HuaParameters, force: bool) -> None:
    if p.pekeris_valid:
        return
    if force:
        warnings.warn(
            f"q = {p.q:.9g} outside the validity window "
            f"[{p.pekeris_threshold:.9f}, 1); results are demonstrative only",
            ValidityWarning,
            stacklevel=3,
        )
        return
    raise ValidityError(
        f"q = {p.q:.9g} outside the validity window "
        f"[e^(-b_h*r_e), 1) = [{p.pekeris_threshold:.9f}, 1)"
    )


def _max_bound_index(delta_l: float, lambda_l: float) -> int:
    """Largest n_r with (n_r + delta_l + 1/2)^2 <= lambda_l, or -1 if none."""
    if lambda_l <= 0.0:
        return -1
    headroom = math.sqrt(lambda_l) - delta_l - 0.5
    slack = _TURNING_POINT_TOL * (delta_l + 0.5 + math.sqrt(lambda_l))
    return int(math.floor(headroom + slack))


def energy_level(
    qn: QuantumNumbers,
    p: HuaParameters,
    pek: PekerisCoefficients,
    force: bool = False,
) -> SpectrumLevel:
    """Closed-form energy of level (n_r, l).

    E = (V0/2)(1 + 1/q^2)
        - (b_h^2 / (4*mass_factor)) * [N_r^2 + lambda_l^2/N_r^2]
        + ((D+2l-1)(D+2l-3) / (4*mass_factor*r_e^2)) * [D0 + (D2/q - D1)/(2q)]

    with N_r = n_r + delta_l + 1/2.  Raises ValidityError outside the gate
    (downgraded to a warning under force) and UnboundLevelError when
    N_r^2 > lambda_l, i.e. past the binding turning point.
    """
    _enforce_gate(p, force)
    delta_l, lambda_l = delta_lambda(p, qn.l, pek)
    n_max = _max_bound_index(delta_l, lambda_l)
    if qn.n_r > n_max:
        raise UnboundLevelError(
            f"n_r = {qn.n_r} exceeds the largest bound index {n_max} for l = {qn.l} "
            f"(N_r^2 > lambda_l = {lambda_l:.6g})"
        )
    n_r = qn.n_r
    q = p.q
    N_r = n_r + delta_l + 0.5
    if abs(N_r**2 - lambda_l) <= 4.0 * _TURNING_POINT_TOL * lambda_l:
        warnings.warn(
            f"level (n_r={n_r}, l={qn.l}) sits at the binding turning point "
            "(zero binding slope)",
            MarginalLevelWarning,
            stacklevel=2,
        )
    w = p.mass_factor
    cf = centrifugal_factor(p.D, qn.l)
    energy = (
        0.5 * p.V0 * (1.0 + 1.0 / q**2)
        - (p.b_h**2 / (4.0 * w)) * (N_r**2 + lambda_l**2 / N_r**2)
        + (cf / (4.0 * w * p.r_e**2)) * (pek.D0 + (pek.D2 / q - pek.D1) / (2.0 * q))
    )
    return SpectrumLevel(
        n_r=n_r,
        l=qn.l,
        N_r=N_r,
        lambda_l=lambda_l,
        delta_l=delta_l,
        energy=energy,
        method="closed-form",
    )


def count_bound_states(
    l: int, p: HuaParameters, pek: PekerisCoefficients, force: bool = False
) -> int:
    """Number of integers n_r >= 0 with (n_r + delta_l + 1/2)^2 <= lambda_l."""
    _enforce_gate(p, force)
    delta_l, lambda_l = delta_lambda(p, l, pek)
    return max(0, _max_bound_index(delta_l, lambda_l) + 1)


def verification_grid(
    q: float, alpha: float, n: int = 2001, x_max: float = 10.0
) -> np.ndarray:
    """Standard x-grid for pointwise identity checks.

    Runs from the point where u reaches twice its value at the potential
    minimum (u = 2/(1-q), inside the repulsive wall) out to x_max.  Keeping u
    moderate keeps the float rounding of algebraically-zero residuals far
    below the identity tolerances.
    """
    if q > 0.0:
        u_cap = 2.0 / (1.0 - q)
        x_lo = -math.log((1.0 - 1.0 / u_cap) / q) / alpha
    else:
        x_lo = -1.0
    return np.linspace(x_lo, x_max, n)
