"""The rule-deviation quantity and its kernel integral representation.

For 0 < a < b and real weights lambda_, mu_, define

    I_f = (lambda_ - mu_) * f(2ab/(a+b))
          + (1 - lambda_) * f(a) + mu_ * f(b)
          - (ab/(b-a)) * integral_a^b f(u)/u**2 du.

I_f measures how far a three-node rule (endpoints plus the harmonic mean)
deviates from the harmonic-weighted integral average.  Integration by parts
(substitute u = ab/A_t with A_t = t*b + (1-t)*a) turns it into

    I_f = ab(b-a) * [ integral_0^{1/2} (mu_ - t)/A_t**2 * f'(ab/A_t) dt
                    + integral_{1/2}^1 (lambda_ - t)/A_t**2 * f'(ab/A_t) dt ],

valid for ALL real lambda_, mu_ whenever f' is integrable.  This module
evaluates both sides by quadrature and checks the identity.

A widely circulated variant of the display writes the midpoint node as
f((a+b)/2) and doubles the integral prefactor to 2ab/(b-a).  That variant
does not satisfy the identity (the kernel representation and the three
weight presets trapezoid/midpoint/simpson all agree on the form above);
``rule_deviation_as_printed`` keeps it evaluable solely so the errata
report can lock the discrepancy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .convexity import FunctionSpec
from .errors import AccuracyError, DomainError, ParameterError
from .quadrature import DEFAULT_SETTINGS, QuadSettings, integrate

# Identity checks compare two 1e-10 quadratures, so 1e-8 leaves margin.
IDENTITY_TOL = 1e-8


@dataclass(frozen=True)
class Instance:
    """One fully specified problem instance.

    lambda_ and mu_ are unrestricted reals here because the kernel identity
    holds for all of them; the bound evaluators separately enforce the band
    0 <= mu_ <= 1/2 <= lambda_ <= 1 they require.
    """

    a: float
    b: float
    s: float
    m: float
    q: float
    lambda_: float
    mu_: float
    f: FunctionSpec

    def __post_init__(self) -> None:
        for name in ("a", "b", "s", "m", "q", "lambda_", "mu_"):
            val = getattr(self, name)
            if not (isinstance(val, (int, float)) and math.isfinite(val)):
                raise ParameterError(f"{name} must be a finite real, got {val!r}")
        if not (0.0 < self.a < self.b):
            raise ParameterError(f"need 0 < a < b, got a={self.a!r}, b={self.b!r}")
        if not (0.0 < self.s <= 1.0):
            raise ParameterError(f"s must lie in (0, 1], got {self.s!r}")
        if not (0.0 < self.m <= 1.0):
            raise ParameterError(f"m must lie in (0, 1], got {self.m!r}")
        if self.q < 1.0:
            raise ParameterError(f"q must be >= 1, got {self.q!r}")
        if not self.a > self.f.domain_lo:
            raise DomainError(
                f"[a, b/m] must sit inside the function domain: a={self.a!r} "
                f"but domain_lo={self.f.domain_lo!r}"
            )

    @property
    def harmonic_mean(self) -> float:
        return 2.0 * self.a * self.b / (self.a + self.b)


@dataclass(frozen=True)
class IdentityCheck:
    """Comparison of the node form against the kernel representation."""

    lhs: float
    rhs: float
    abs_diff: float
    tol: float
    passed: bool


def _integral_avg_term(inst: Instance, settings: QuadSettings) -> float:
    """(ab/(b-a)) * integral_a^b f(u)/u**2 du."""
    f = inst.f

    def integrand(u: float) -> float:
        return f.value(u) / (u * u)

    res = integrate(integrand, inst.a, inst.b, settings)
    if not res.converged:
        raise AccuracyError(
            "rule_deviation integral did not converge",
            estimate=res.value,
            err_estimate=res.err_estimate,
        )
    return inst.a * inst.b / (inst.b - inst.a) * res.value


def rule_deviation(inst: Instance, settings: QuadSettings | None = None) -> float:
    """The corrected node form of I_f (harmonic-mean midpoint node)."""
    settings = settings if settings is not None else DEFAULT_SETTINGS
    f = inst.f
    nodes = (
        (inst.lambda_ - inst.mu_) * f.value(inst.harmonic_mean)
        + (1.0 - inst.lambda_) * f.value(inst.a)
        + inst.mu_ * f.value(inst.b)
    )
    return nodes - _integral_avg_term(inst, settings)


def rule_deviation_as_printed(
    inst: Instance, settings: QuadSettings | None = None
) -> float:
    """The defective variant: arithmetic-mean node, doubled prefactor.

    Kept only for the errata lock; it does not satisfy the kernel identity.
    """
    settings = settings if settings is not None else DEFAULT_SETTINGS
    f = inst.f
    nodes = (
        (inst.lambda_ - inst.mu_) * f.value(0.5 * (inst.a + inst.b))
        + (1.0 - inst.lambda_) * f.value(inst.a)
        + inst.mu_ * f.value(inst.b)
    )
    return nodes - 2.0 * _integral_avg_term(inst, settings)


def kernel_representation(
    inst: Instance, settings: QuadSettings | None = None
) -> float:
    """ab(b-a) times the two weighted kernel integrals of f'(ab/A_t)."""
    settings = settings if settings is not None else DEFAULT_SETTINGS
    a, b = inst.a, inst.b
    ab = a * b
    f = inst.f

    def piece(weight_anchor: float):
        def integrand(t: float) -> float:
            A = t * b + (1.0 - t) * a
            return (weight_anchor - t) / (A * A) * f.deriv(ab / A)

        return integrand

    lower = integrate(piece(inst.mu_), 0.0, 0.5, settings)
    upper = integrate(piece(inst.lambda_), 0.5, 1.0, settings)
    if not (lower.converged and upper.converged):
        raise AccuracyError(
            "kernel_representation integrals did not converge",
            lower=lower.value,
            upper=upper.value,
        )
    return ab * (b - a) * (lower.value + upper.value)


def check_identity(
    inst: Instance,
    settings: QuadSettings | None = None,
    tol: float = IDENTITY_TOL,
) -> IdentityCheck:
    """Compare the node form against the kernel representation."""
    if not (math.isfinite(tol) and tol > 0.0):
        raise ParameterError(f"tol must be positive and finite, got {tol!r}")
    lhs = rule_deviation(inst, settings)
    rhs = kernel_representation(inst, settings)
    abs_diff = abs(lhs - rhs)
    return IdentityCheck(lhs=lhs, rhs=rhs, abs_diff=abs_diff, tol=tol, passed=abs_diff <= tol)
