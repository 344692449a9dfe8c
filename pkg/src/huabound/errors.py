"""Exception and warning types shared across the package."""


class HuaError(Exception):
    """Base class for all package errors."""


class HuaDomainError(HuaError, ValueError):
    """Parameter outside the domain where the potential is defined."""


class ValidityError(HuaError):
    """Parameters fail the centrifugal-replacement validity gate e^(-b_h*r_e) <= q < 1."""


class SingularityError(HuaError, ValueError):
    """Evaluation at or left of the potential's pole radius."""


class NoRealSolutionError(HuaError, ArithmeticError):
    """A radicand went negative; no real solution exists for these parameters."""


class LadderDegenerateError(HuaError, ZeroDivisionError):
    """A parameter-ladder value hit zero; the algebraic recursion is undefined."""


class UnboundLevelError(HuaError):
    """Requested level lies above the binding turning point."""


class AdmissibilityError(HuaError):
    """Ground state violates a boundary condition and is not normalizable."""


class ConvergenceError(HuaError):
    """Grid-refinement estimates disagree beyond the accepted tolerance."""


class ConfigError(HuaError):
    """Malformed run configuration."""


class ValidityWarning(UserWarning):
    """Computation forced outside the validity regime; numbers are demonstrative only."""


class MarginalLevelWarning(UserWarning):
    """Level sits exactly at the binding turning point (zero binding slope)."""
