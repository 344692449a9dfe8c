"""Deformed exponential (Hua) molecular potential and its effective radial form.

The potential

    V(r) = V0 * [ (1 - e^(-b_h (r - r_e))) / (1 - q e^(-b_h (r - r_e))) ]^2

depends on a depth V0, a range parameter b_h, an equilibrium radius r_e and a
deformation parameter q in (-1, 1).  For q > 0 the denominator vanishes at

    r0 = r_e + ln(q) / b_h

and the potential has a strong repulsive pole there, so the radial problem
lives on (r0, inf).  The centrifugal barrier of the D-dimensional radial
equation is replaced by a combination of the potential's own exponential
building blocks (a Pekeris-type construction), which is a controlled
approximation only for e^(-b_h*r_e) <= q < 1.  This module owns the potential,
that validity gate, the replacement coefficients, and the grouping of the
radial equation into the dimensionless form consumed by the algebraic
spectrum machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import HuaDomainError, SingularityError

__all__ = [
    "HuaParameters",
    "QuantumNumbers",
    "PekerisCoefficients",
    "EffectiveCoefficients",
    "ValidityReport",
    "validate_parameters",
    "singularity_radius",
    "potential_value",
    "pekeris_coefficients",
    "effective_coefficients",
    "effective_potential",
    "centrifugal_factor",
    "s_factor",
    "u_factor",
]


def centrifugal_factor(D: int, l: int) -> int:
    """(D + 2l - 1)(D + 2l - 3), the dimension-and-angular-momentum factor.

    At D = 3 this equals 4 l (l + 1).  It is negative only for D = 2, l = 0.
    """
    return (D + 2 * l - 1) * (D + 2 * l - 3)


@dataclass(frozen=True)
class HuaParameters:
    """Physical setup: potential parameters, kinetic prefactor and dimension.

    mass_factor is the combination 2*mu/hbar^2, so all spectra can be written
    without separate hbar and mu inputs; mass_factor = 1 gives the
    dimensionless convention hbar = 2*mu = 1.
    """

    V0: float
    b_h: float
    r_e: float
    q: float
    mass_factor: float = 1.0
    D: int = 3

    def __post_init__(self) -> None:
        if not (self.V0 >= 0):
            raise HuaDomainError(f"potential depth V0 must be >= 0, got {self.V0}")
        for name in ("b_h", "r_e", "mass_factor"):
            value = getattr(self, name)
            if not (value > 0):
                raise HuaDomainError(f"{name} must be positive, got {value}")
        if self.q == 1.0:
            raise HuaDomainError(
                "q = 1 turns the potential into a step with no bound states; "
                "the deformation parameter must satisfy -1 < q < 1"
            )
        if not (-1.0 < self.q < 1.0):
            raise HuaDomainError(
                f"deformation parameter q must lie in (-1, 1), got {self.q}"
            )
        if int(self.D) != self.D or self.D < 2:
            raise HuaDomainError(f"dimension D must be an integer >= 2, got {self.D}")

    @property
    def alpha(self) -> float:
        """Dimensionless range alpha = b_h * r_e."""
        return self.b_h * self.r_e

    @property
    def pekeris_threshold(self) -> float:
        """Lower q bound e^(-b_h*r_e) of the centrifugal-replacement validity window."""
        return math.exp(-self.b_h * self.r_e)

    @property
    def pekeris_valid(self) -> bool:
        """True iff e^(-b_h*r_e) <= q < 1."""
        return self.pekeris_threshold <= self.q < 1.0

    def centrifugal_strength(self, l: int) -> float:
        """A_l = (D + 2l - 1)(D + 2l - 3) / (4 r_e^2)."""
        return centrifugal_factor(self.D, l) / (4.0 * self.r_e**2)


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial quantum number n_r >= 0 and angular momentum l >= 0."""

    n_r: int
    l: int

    def __post_init__(self) -> None:
        if self.n_r < 0 or int(self.n_r) != self.n_r:
            raise HuaDomainError(f"n_r must be an integer >= 0, got {self.n_r}")
        if self.l < 0 or int(self.l) != self.l:
            raise HuaDomainError(f"l must be an integer >= 0, got {self.l}")


@dataclass(frozen=True)
class PekerisCoefficients:
    """Coefficients of the centrifugal replacement.

    1/r^2 is replaced by (1/r_e^2) * [D0 + D1*s(x) + D2*s(x)^2] with
    s(x) = e^(-alpha*x) / (1 - q e^(-alpha*x)) and x = (r - r_e)/r_e; D0, D1,
    D2 are fixed so the replacement matches (1+x)^(-2) through second order
    at x = 0.
    """

    D0: float
    D1: float
    D2: float


@dataclass(frozen=True)
class EffectiveCoefficients:
    """Dimensionless effective radial potential, grouped in u = 1/(1 - q e^(-alpha*x)).

    W(x) = r_e^2 * [mass_factor*V(r) + A_l*(centrifugal replacement)] collects
    into a quadratic in u:

        W(x) = -V1*u(x)^2 - V2*u(x) + const_shift

    V1 and V2 carry the sign convention under which the superpotential
    parameters read A = -(alpha/2)(1 + sqrt(1 - 4*V1/alpha^2)) and
    B = -(A + (V1+V2)/A)/2, i.e. V1 is minus the u^2 coefficient and V2 is
    minus the u coefficient.  const_shift relates the shifted eigenvalue
    E_shift to the physical energy: E_shift = mass_factor*r_e^2*E - const_shift.
    """

    V1: float
    V2: float
    const_shift: float
    alpha: float
    A_l: float

    @property
    def ladder_sum(self) -> float:
        """V1 + V2, the combination entering the parameter-ladder recursion."""
        return self.V1 + self.V2


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of the validity gate for one parameter set."""

    threshold: float
    q: float
    ok: bool
    singularity_radius: float | None
    reason: str | None = None


def s_factor(x, q: float, alpha: float):
    """s(x) = e^(-alpha*x) / (1 - q e^(-alpha*x))."""
    t = np.exp(-alpha * np.asarray(x, dtype=float))
    return t / (1.0 - q * t)


def u_factor(x, q: float, alpha: float):
    """u(x) = 1 / (1 - q e^(-alpha*x)); diverges at x0 = ln(q)/alpha for q > 0."""
    t = np.exp(-alpha * np.asarray(x, dtype=float))
    return 1.0 / (1.0 - q * t)


def validate_parameters(p: HuaParameters) -> ValidityReport:
    """Check the centrifugal-replacement validity window e^(-b_h*r_e) <= q < 1.

    Returns the threshold and a pass/fail flag; failures carry the offending
    constraint in `reason`.  Values of q outside (-1, 1) never reach here:
    HuaParameters rejects them at construction.
    """
    threshold = p.pekeris_threshold
    r0 = singularity_radius(p)
    if p.q >= threshold:
        return ValidityReport(threshold, p.q, True, r0)
    return ValidityReport(
        threshold,
        p.q,
        False,
        r0,
        reason=(
            f"q = {p.q:.9g} is below the validity threshold "
            f"e^(-b_h*r_e) = {threshold:.9f}; the centrifugal replacement "
            "is uncontrolled there"
        ),
    )


def singularity_radius(p: HuaParameters) -> float | None:
    """Pole radius r0 = r_e + ln(q)/b_h for q > 0; None when q <= 0 (no pole on r > 0)."""
    if p.q <= 0.0:
        return None
    return p.r_e + math.log(p.q) / p.b_h


def potential_value(r, p: HuaParameters):
    """V(r) = V0 * [(1 - e^(-b_h (r-r_e))) / (1 - q e^(-b_h (r-r_e)))]^2.

    Accepts scalars or arrays.  Raises SingularityError when any point lies at
    or left of the pole radius (q > 0), and HuaDomainError for r <= 0 when
    q <= 0.
    """
    r_arr = np.asarray(r, dtype=float)
    r0 = singularity_radius(p)
    if r0 is not None:
        guard = 64.0 * np.finfo(float).eps * max(abs(r0), p.r_e)
        if np.any(r_arr <= r0 + guard):
            raise SingularityError(
                f"potential has a pole at r0 = {r0:.12g}; got a point at or below it"
            )
    elif np.any(r_arr <= 0.0):
        raise HuaDomainError("radial coordinate must be positive")
    t = np.exp(-p.b_h * (r_arr - p.r_e))
    v = p.V0 * ((1.0 - t) / (1.0 - p.q * t)) ** 2
    return float(v) if np.ndim(r) == 0 else v


def pekeris_coefficients(p: HuaParameters) -> PekerisCoefficients:
    """Solve the 3x3 Taylor-matching system for the centrifugal replacement.

    With sigma = s(0) = 1/(1-q), s'(0) = -alpha*sigma^2 and
    s''(0) = alpha^2 (1+q) sigma^3, the conditions f(0) = 1, f'(0) = -2,
    f''(0) = 6 (the expansion of (1+x)^(-2) at x = 0) fix D0, D1, D2.
    """
    q, alpha = p.q, p.alpha
    s0 = 1.0 / (1.0 - q)
    s0p = -alpha * s0**2
    s0pp = alpha**2 * (1.0 + q) * s0**3
    m = np.array(
        [
            [1.0, s0, s0**2],
            [0.0, s0p, 2.0 * s0 * s0p],
            [0.0, s0pp, 2.0 * (s0p**2 + s0 * s0pp)],
        ]
    )
    rhs = np.array([1.0, -2.0, 6.0])
    d0, d1, d2 = np.linalg.solve(m, rhs)
    return PekerisCoefficients(D0=d0, D1=d1, D2=d2)


def effective_coefficients(
    p: HuaParameters, l: int, pek: PekerisCoefficients
) -> EffectiveCoefficients:
    """Group the dimensionless radial potential as a quadratic in u.

    Uses the identities s = (u-1)/q and (1 - e^(-alpha*x))/(1 - q e^(-alpha*x))
    = ((q-1)u + 1)/q to rewrite

        r_e^2 * [mass_factor*V(r) + A_l*(D0 + D1*s + D2*s^2)]

    as -V1*u^2 - V2*u + const_shift (see EffectiveCoefficients for the sign
    convention).  Requires q > 0: the grouping divides by q.
    """
    if p.q <= 0.0:
        raise HuaDomainError(
            "grouping the effective potential in u requires q > 0 "
            f"(got q = {p.q}); only the validity window supports the closed form"
        )
    q, alpha = p.q, p.alpha
    a_l = centrifugal_factor(p.D, l) / 4.0  # r_e^2 * A_l, dimensionless
    depth = p.mass_factor * p.r_e**2 * p.V0
    c2 = depth * (q - 1.0) ** 2 / q**2 + a_l * pek.D2 / q**2
    c1 = 2.0 * depth * (q - 1.0) / q**2 + a_l * (pek.D1 / q - 2.0 * pek.D2 / q**2)
    c0 = depth / q**2 + a_l * (pek.D0 - pek.D1 / q + pek.D2 / q**2)
    return EffectiveCoefficients(
        V1=-c2,
        V2=-c1,
        const_shift=c0,
        alpha=alpha,
        A_l=a_l / p.r_e**2,
    )


def effective_potential(x, p: HuaParameters, eff: EffectiveCoefficients):
    """Reconstruct W(x) = -V1*u^2 - V2*u + const_shift from the grouped coefficients."""
    u = u_factor(x, p.q, eff.alpha)
    return -eff.V1 * u**2 - eff.V2 * u + eff.const_shift
