"""Shared parameter/result types and the exception hierarchy."""

from __future__ import annotations

from dataclasses import dataclass


class EvenPowersError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(EvenPowersError, ValueError):
    """An argument lies outside the domain of the function."""


class UnsupportedOrderError(EvenPowersError, ValueError):
    """No closed form is available for the requested order."""


class DivergenceError(EvenPowersError, ValueError):
    """The series only converges for k < 2m."""


class CountOverflowError(EvenPowersError, OverflowError):
    """Representation counts do not fit the requested integer type."""


class TruncationError(EvenPowersError, ArithmeticError):
    """Tolerance was not reached within ``max_terms``.

    The best partial result is kept on ``partial``.
    """

    def __init__(self, message: str, partial: "CertifiedValue"):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class PowerParams:
    """The triple (m, k, a): power 2m, k summands, shift a."""

    m: int
    k: int
    a: float = 1.0

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise DomainError(f"m must be a positive integer, got {self.m!r}")
        if int(self.k) != self.k or self.k < 1:
            raise DomainError(f"k must be a positive integer, got {self.k!r}")
        if not self.a > 0:
            raise DomainError(f"a must be positive, got {self.a!r}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "a", float(self.a))

    @property
    def power(self) -> int:
        return 2 * self.m

    @property
    def convergent(self) -> bool:
        """True when the Dirichlet series converges, i.e. k < 2m."""
        return self.k < 2 * self.m

    def with_a(self, a: float) -> "PowerParams":
        return PowerParams(self.m, self.k, a)

    def require_convergent(self):
        if not self.convergent:
            raise DivergenceError(
                f"series requires k < 2m, got m={self.m}, k={self.k}"
            )


@dataclass(frozen=True)
class EvalOptions:
    """Tolerances and limits shared by the numeric routines.

    ``quad_points`` caps the number of quadrature nodes per integration
    piece.
    """

    abs_tol: float = 1e-10
    max_terms: int = 10_000_000
    quad_points: int = 4096

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be positive")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise DomainError("max_terms must be a positive integer")
        if int(self.quad_points) != self.quad_points or self.quad_points < 2:
            raise DomainError("quad_points must be an integer >= 2")

    def replace(self, **changes) -> "EvalOptions":
        fields = dict(abs_tol=self.abs_tol, max_terms=self.max_terms,
                      quad_points=self.quad_points)
        fields.update(changes)
        return EvalOptions(**fields)


@dataclass(frozen=True)
class CertifiedValue:
    """A truncated-series value and a bound on its distance to the limit.

    ``rigorous`` is False for quadrature results, whose ``error_bound`` is
    an empirical refinement estimate.
    """

    value: float
    error_bound: float
    terms_used: int
    rigorous: bool = True
    converged: bool = True
