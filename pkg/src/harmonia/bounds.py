"""Coefficient tables and inequality verdicts for the weighted bounds.

Both theorem right-hand sides are built from twelve coefficients.  With
A_t = t*b + (1-t)*a and parameters s, q (and p = q/(q-1) where q > 1):

    B1  = int_0^{1/2} |mu - t| dt              B4  = int_{1/2}^1 |lam - t| dt
    B2  = int_0^{1/2} |mu - t| t^s    / A^2q   B5  = int_{1/2}^1 |lam - t| t^s    / A^2q
    B3  = int_0^{1/2} |mu - t| (1-t)^s/ A^2q   B6  = int_{1/2}^1 |lam - t| (1-t)^s/ A^2q
    B7  = int_0^{1/2} |mu - t|^p dt            B10 = int_{1/2}^1 |lam - t|^p dt
    B8  = int_0^{1/2} t^s     / A^2q           B11 = int_{1/2}^1 t^s     / A^2q
    B9  = int_0^{1/2} (1-t)^s / A^2q           B12 = int_{1/2}^1 (1-t)^s / A^2q

Every coefficient has two evaluation paths: a defining-integral oracle
(adaptive quadrature of the integral above, split at the weight kink) and
the closed forms printed in the source tables (Beta and Gauss 2F1
expressions, piecewise in mu or lam).  Several printed cases are misprinted;
``crosscheck_B`` compares the paths and flags disagreements as errata
instead of silently patching, ``EXPECTED_COEFFICIENT_ERRATA`` freezes the
adjudicated flag set, and ``corrected_B`` carries the hand-derived corrected
forms (each one oracle-backed by tests).  The oracle path is authoritative
everywhere downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .convexity import GridSpec, abs_deriv_pow, check_harmonic_sm
from .errors import AccuracyError, ParameterError, PreconditionError
from .identity import Instance, rule_deviation
from .quadrature import DEFAULT_SETTINGS, QuadSettings, integrate_de
from .specfun import beta, hyp2f1

CROSSCHECK_TOL = 1e-6
MARGIN_TOL = 1e-9

# (lambda_, mu_) triples of the three named specializations.
PRESETS: dict[str, tuple[float, float]] = {
    "trapezoid": (0.5, 0.5),
    "midpoint": (1.0, 0.0),
    "simpson": (5.0 / 6.0, 1.0 / 6.0),
}

_WEIGHTS = ("abs_mu_minus_t", "abs_lambda_minus_t", "abs_weight_pow_p", "none")
_FACTORS = ("t_pow_s", "one_minus_t_pow_s", "none")
_SIDES = ("left", "right")


@dataclass(frozen=True)
class KernelKind:
    """One proof-integral shape: weight * factor [/ A^2q] over one half."""

    weight: str
    factor: str
    side: str

    def __post_init__(self) -> None:
        if self.weight not in _WEIGHTS:
            raise ParameterError(f"unknown weight {self.weight!r}")
        if self.factor not in _FACTORS:
            raise ParameterError(f"unknown factor {self.factor!r}")
        if self.side not in _SIDES:
            raise ParameterError(f"unknown side {self.side!r}")

    @property
    def include_A(self) -> bool:
        # Exactly the integrals with a convexity factor carry the A^2q
        # denominator; the pure weight moments (B1, B4, B7, B10) do not.
        return self.factor != "none"


KIND_FOR_INDEX: dict[int, KernelKind] = {
    1: KernelKind("abs_mu_minus_t", "none", "left"),
    2: KernelKind("abs_mu_minus_t", "t_pow_s", "left"),
    3: KernelKind("abs_mu_minus_t", "one_minus_t_pow_s", "left"),
    4: KernelKind("abs_lambda_minus_t", "none", "right"),
    5: KernelKind("abs_lambda_minus_t", "t_pow_s", "right"),
    6: KernelKind("abs_lambda_minus_t", "one_minus_t_pow_s", "right"),
    7: KernelKind("abs_weight_pow_p", "none", "left"),
    8: KernelKind("none", "t_pow_s", "left"),
    9: KernelKind("none", "one_minus_t_pow_s", "left"),
    10: KernelKind("abs_weight_pow_p", "none", "right"),
    11: KernelKind("none", "t_pow_s", "right"),
    12: KernelKind("none", "one_minus_t_pow_s", "right"),
}

# Adjudicated disagreement set: (index, case) pairs whose printed closed
# form fails its defining-integral oracle.  Frozen from the adjudication
# run; crosscheck_B must reproduce exactly this set on random draws.
EXPECTED_COEFFICIENT_ERRATA: frozenset[tuple[int, str]] = frozenset(
    {
        (2, "interior"),
        (3, "mu=0"),
        (3, "interior"),
        (3, "mu=1/2"),
        (5, "lambda=1"),
        (5, "interior"),
        (6, "interior"),
        (6, "lambda=1/2"),
        (8, "all"),
        (9, "all"),
        (12, "all"),
    }
)


def _require_band(inst: Instance) -> None:
    if not (0.0 <= inst.mu_ <= 0.5 <= inst.lambda_ <= 1.0):
        raise ParameterError(
            f"bounds require 0 <= mu_ <= 1/2 <= lambda_ <= 1, got "
            f"mu_={inst.mu_!r}, lambda_={inst.lambda_!r}"
        )


def kernel_oracle(
    kind: KernelKind,
    inst: Instance,
    p_or_q: float | None = None,
    settings: QuadSettings | None = None,
) -> float:
    """Direct quadrature of one proof integral.

    ``p_or_q`` supplies the exponent p for the abs_weight_pow_p weight
    (required there, > 1); the A^2q power always uses inst.q.  The
    interval is split at the weight's kink, and each panel is integrated
    with the double-exponential rule: t^s and (1-t)^s have algebraic
    endpoint singularities for fractional s, which defeat polynomial
    error estimates but are exactly what tanh-sinh handles.
    """
    _require_band(inst)
    settings = settings if settings is not None else DEFAULT_SETTINGS
    a, b, s, q = inst.a, inst.b, inst.s, inst.q
    if kind.side == "left":
        lo, hi = 0.0, 0.5
        anchor = inst.mu_
    else:
        lo, hi = 0.5, 1.0
        anchor = inst.lambda_

    p = None
    if kind.weight == "abs_weight_pow_p":
        if p_or_q is None or not (math.isfinite(p_or_q) and p_or_q > 1.0):
            raise ParameterError(
                f"abs_weight_pow_p requires exponent p > 1, got {p_or_q!r}"
            )
        p = p_or_q

    def integrand(t: float) -> float:
        if kind.weight == "abs_mu_minus_t":
            val = abs(inst.mu_ - t)
        elif kind.weight == "abs_lambda_minus_t":
            val = abs(inst.lambda_ - t)
        elif kind.weight == "abs_weight_pow_p":
            val = abs(anchor - t) ** p
        else:
            val = 1.0
        if kind.factor == "t_pow_s":
            val *= t**s
        elif kind.factor == "one_minus_t_pow_s":
            val *= (1.0 - t) ** s
        if kind.include_A:
            A = t * b + (1.0 - t) * a
            val /= A ** (2.0 * q)
        return val

    panels = [(lo, hi)] if not lo < anchor < hi else [(lo, anchor), (anchor, hi)]
    total = 0.0
    for panel_lo, panel_hi in panels:
        res = integrate_de(integrand, panel_lo, panel_hi, settings)
        if not res.converged:
            raise AccuracyError(
                "kernel_oracle quadrature did not converge",
                estimate=res.value,
                err_estimate=res.err_estimate,
            )
        total += res.value
    return total


def b1_b4(mu_: float, lambda_: float) -> tuple[float, float]:
    """Closed weight moments: B1(mu) and B4(lam), both >= 1/16."""
    if not (0.0 <= mu_ <= 0.5 <= lambda_ <= 1.0):
        raise ParameterError(
            f"need 0 <= mu_ <= 1/2 <= lambda_ <= 1, got {mu_!r}, {lambda_!r}"
        )
    b1 = mu_ * mu_ - mu_ / 2.0 + 0.125
    b4 = lambda_ * lambda_ - 1.5 * lambda_ + 0.625
    return b1, b4


def b7_b10(mu_: float, lambda_: float, p: float) -> tuple[float, float]:
    """Closed p-th weight moments: B7(mu) and B10(lam) for p > 1."""
    if not (0.0 <= mu_ <= 0.5 <= lambda_ <= 1.0):
        raise ParameterError(
            f"need 0 <= mu_ <= 1/2 <= lambda_ <= 1, got {mu_!r}, {lambda_!r}"
        )
    if not (math.isfinite(p) and p > 1.0):
        raise ParameterError(f"p must be > 1, got {p!r}")
    b7 = (mu_ ** (p + 1.0) + (0.5 - mu_) ** (p + 1.0)) / (p + 1.0)
    b10 = ((lambda_ - 0.5) ** (p + 1.0) + (1.0 - lambda_) ** (p + 1.0)) / (p + 1.0)
    return b7, b10


def case_label(index: int, inst: Instance) -> str:
    """Piecewise-case selector; selection is by exact float equality."""
    if index in (2, 3):
        if inst.mu_ == 0.0:
            return "mu=0"
        if inst.mu_ == 0.5:
            return "mu=1/2"
        return "interior"
    if index in (5, 6):
        if inst.lambda_ == 0.5:
            return "lambda=1/2"
        if inst.lambda_ == 1.0:
            return "lambda=1"
        return "interior"
    if index in (1, 4, 7, 8, 9, 10, 11, 12):
        return "all"
    raise ParameterError(f"coefficient index must be 1..12, got {index!r}")


@dataclass(frozen=True)
class _Args:
    """Shared subexpressions of the closed forms for one instance."""

    a: float
    b: float
    s: float
    q: float
    z: float  # 1 - 2a/(a+b)
    zeta: float  # 1 - a/b
    w: float  # 1 - (a+b)/(2b)
    apb2q: float  # (a+b)^2q
    b2q: float  # b^2q


def _args(inst: Instance) -> _Args:
    a, b, s, q = inst.a, inst.b, inst.s, inst.q
    return _Args(
        a=a,
        b=b,
        s=s,
        q=q,
        z=1.0 - 2.0 * a / (a + b),
        zeta=1.0 - a / b,
        w=1.0 - (a + b) / (2.0 * b),
        apb2q=(a + b) ** (2.0 * q),
        b2q=b ** (2.0 * q),
    )


def closed_B(index: int, inst: Instance) -> float:
    """The printed closed form for one 2F1-based coefficient.

    Statement-version transcription (where statement and proof tables
    disagree, the statement is used); misprinted cases return the
    misprinted value on purpose, and crosscheck_B adjudicates them
    against the oracle.
    """
    _require_band(inst)
    if index not in (2, 3, 5, 6, 8, 9, 11, 12):
        raise ParameterError(
            f"closed_B covers 2F1-based indices 2,3,5,6,8,9,11,12, got {index!r}"
        )
    g = _args(inst)
    a, b, s, q = g.a, g.b, g.s, g.q
    F = hyp2f1
    mu, lam = inst.mu_, inst.lambda_
    case = case_label(index, inst)

    if index == 2:
        if case == "mu=0":
            return 2.0 ** (2 * q - s - 2) * beta(1.0, s + 2) / g.apb2q * F(2 * q, 1.0, s + 3, g.z)
        if case == "mu=1/2":
            return 2.0 ** (2 * q - s - 2) * beta(2.0, s + 1) / g.apb2q * F(2 * q, 2.0, s + 3, g.z)
        A_mu = mu * b + (1.0 - mu) * a
        return (
            2.0 * mu ** (s + 2) * beta(2.0, s + 1) / A_mu ** (2 * q)
            * F(2 * q, 2.0, s + 3, 1.0 - a / A_mu)
            - mu * 2.0 ** (2 * q - s - 2) * beta(1.0, s + 1) / g.apb2q
            * F(2 * q, 1.0, s + 2, g.z)
            + 2.0 ** (2 * q - s - 2) * beta(1.0, s + 2) / g.apb2q
            * F(2 * q, 1.0, s + 3, g.z)
        )

    if index == 3:
        if case == "mu=0":
            return (
                beta(s + 1, s + 3) / g.b2q * F(2 * q, s + 1, s + 3, g.zeta)
                - beta(s + 1, 1.0) / (2.0 ** (s + 2) * g.b2q) * F(2 * q, s + 1, s + 2, g.w)
                - beta(s + 1, 2.0) / (2.0 ** (s + 2) * g.b2q) * F(2 * q, s + 1, s + 3, g.w)
            )
        if case == "mu=1/2":
            # The printed display drops the operator before its last term;
            # it is read as '+' (the adjudication flags the case either way).
            return (
                beta(s + 1, 1.0) / (2.0 * g.b2q) * F(2 * q, s + 2, s + 3, g.zeta)
                - beta(s + 1, 2.0) / (2.0 * g.b2q) * F(2 * q, s + 2, s + 3, g.zeta)
                + beta(s + 1, 2.0) / (2.0 ** (s + 2) * g.b2q) * F(2 * q, s + 2, s + 3, g.w)
            )
        return (
            mu * beta(s + 1, 1.0) / g.b2q * F(2 * q, s + 1, s + 2, g.zeta)
            - beta(s + 1, 2.0) / g.b2q * F(2 * q, s + 1, s + 3, g.zeta)
            + 2.0 * (1.0 - mu) ** (s + 2) * beta(s + 1, 2.0) / g.b2q
            * F(2 * q, s + 1, s + 3, (1.0 - mu) * g.zeta)
            + (mu - 1.0) * beta(s + 1, 1.0) / (2.0 ** (s + 2) * g.b2q)
            * F(2 * q, s + 1, s + 2, g.w)
            + beta(s + 1, 2.0) / (2.0 ** (s + 2) * g.b2q) * F(2 * q, s + 1, s + 3, g.w)
        )

    if index == 5:
        if case == "lambda=1":
            return (
                beta(1.0, s + 2) / g.b2q * F(2 * q, 1.0, s + 3, g.zeta)
                - 2.0 ** (2 * q - s - 2) * beta(1.0, s + 2) / g.apb2q
                * F(2 * q, 1.0, s + 3, g.z)
            )
        if case == "lambda=1/2":
            return (
                beta(1.0, s + 2) / (2.0 * g.b2q) * F(2 * q, 1.0, s + 3, g.zeta)
                + 2.0 ** (2 * q - s - 2) * beta(2.0, s + 1) / g.apb2q
                * F(2 * q, 2.0, s + 3, g.z)
                - beta(2.0, s + 1) / (2.0 * g.b2q) * F(2 * q, 2.0, s + 3, g.zeta)
            )
        A_lam = lam * b + (1.0 - lam) * a
        return (
            2.0 * lam ** (s + 2) * beta(2.0, s + 1) / A_lam ** (2 * q)
            * F(2 * q, 2.0, s + 3, 1.0 - a / A_lam)
            - lam * 2.0 ** (2 * q - s - 2) * beta(1.0, s + 1) / g.apb2q
            * F(2 * q, 1.0, s + 2, g.z)
            + 2.0 ** (2 * q - s - 2) * beta(1.0, s + 2) / g.apb2q
            * F(2 * q, 1.0, s + 3, g.z)
            + beta(1.0, s + 2) / g.b2q * F(2 * q, 1.0, s + 3, g.zeta)
            - lam * beta(1.0, s + 1) / g.b2q * F(2 * q, 1.0, s + 2, g.zeta)
        )

    if index == 6:
        if case == "lambda=1":
            return (
                beta(s + 1, 1.0) / (2.0 ** (s + 2) * g.b2q) * F(2 * q, s + 1, s + 2, g.w)
                - beta(s + 1, 2.0) / (2.0 ** (s + 2) * g.b2q) * F(2 * q, s + 1, s + 3, g.w)
            )
        if case == "lambda=1/2":
            return beta(s + 1, 2.0) / (2.0 ** (s + 2) * g.b2q) * F(2 * q, s + 2, s + 3, g.w)
        return (
            2.0 * lam * beta(s + 1, 1.0) / g.b2q * F(2 * q, s + 1, s + 2, g.zeta)
            + (lam - 1.0) * beta(1.0, s + 1) / (2.0 ** (s + 1) * g.b2q)
            * F(2 * q, 1.0, s + 2, g.w)
            + 2.0 * (1.0 - lam) ** (s + 2) * beta(s + 1, 2.0) / g.b2q
            * F(2 * q, s + 1, s + 3, (1.0 - lam) * g.zeta)
            + beta(2.0, s + 1) / (2.0 ** (s + 1) * g.b2q) * F(2 * q, 2.0, s + 3, g.w)
        )

    if index == 8:
        return 2.0 ** (2 * q - s - 2) * beta(1.0, s + 1) / g.apb2q * F(2 * q, 1.0, s + 2, g.z)
    if index == 9:
        return (
            beta(s + 1, 1.0) / g.b2q * F(2 * q, s + 1, s + 2, g.zeta)
            - beta(s + 1, 2.0) / (2.0 ** (s + 1) * g.b2q) * F(2 * q, s + 1, s + 2, g.w)
        )
    if index == 11:
        return (
            beta(1.0, s + 1) / g.b2q * F(2 * q, 1.0, s + 2, g.zeta)
            - 2.0 ** (2 * q - s - 1) * beta(1.0, s + 1) / g.apb2q * F(2 * q, 1.0, s + 2, g.z)
        )
    # index 12
    return beta(s + 1, 2.0) / (2.0 ** (s + 1) * g.b2q) * F(2 * q, s + 1, s + 3, g.w)


def corrected_B(index: int, inst: Instance) -> float:
    """Hand-derived corrected closed form for one coefficient case.

    For cases whose printed form already passes the oracle this returns the
    printed value; for flagged cases it returns the corrected conjecture.
    Every branch is locked to the defining-integral oracle by tests.
    """
    _require_band(inst)
    if index not in (2, 3, 5, 6, 8, 9, 11, 12):
        raise ParameterError(
            f"corrected_B covers 2F1-based indices 2,3,5,6,8,9,11,12, got {index!r}"
        )
    g = _args(inst)
    a, b, s, q = g.a, g.b, g.s, g.q
    F = hyp2f1
    mu, lam = inst.mu_, inst.lambda_
    case = case_label(index, inst)

    if index == 2 and case == "interior":
        A_mu = mu * b + (1.0 - mu) * a
        return (
            2.0 * mu ** (s + 2) * beta(2.0, s + 1) / A_mu ** (2 * q)
            * F(2 * q, 2.0, s + 3, 1.0 - a / A_mu)
            - mu * 2.0 ** (2 * q - s - 1) * beta(1.0, s + 1) / g.apb2q
            * F(2 * q, 1.0, s + 2, g.z)
            + 2.0 ** (2 * q - s - 2) * beta(1.0, s + 2) / g.apb2q
            * F(2 * q, 1.0, s + 3, g.z)
        )
    if index == 3:
        if case == "mu=0":
            return (
                beta(s + 1, 2.0) / g.b2q * F(2 * q, s + 1, s + 3, g.zeta)
                - beta(s + 1, 1.0) / (2.0 ** (s + 1) * g.b2q) * F(2 * q, s + 1, s + 2, g.w)
                + beta(s + 2, 1.0) / (2.0 ** (s + 2) * g.b2q) * F(2 * q, s + 2, s + 3, g.w)
            )
        if case == "mu=1/2":
            return (
                beta(s + 2, 1.0) / g.b2q * F(2 * q, s + 2, s + 3, g.zeta)
                - 0.5 * beta(s + 1, 1.0) / g.b2q * F(2 * q, s + 1, s + 2, g.zeta)
                - beta(s + 2, 1.0) / (2.0 ** (s + 2) * g.b2q) * F(2 * q, s + 2, s + 3, g.w)
                + beta(s + 1, 1.0) / (2.0 ** (s + 2) * g.b2q) * F(2 * q, s + 1, s + 2, g.w)
            )
        return (
            mu * beta(s + 1, 1.0) / g.b2q * F(2 * q, s + 1, s + 2, g.zeta)
            - beta(s + 1, 2.0) / g.b2q * F(2 * q, s + 1, s + 3, g.zeta)
            + 2.0 * (1.0 - mu) ** (s + 2) * beta(s + 1, 2.0) / g.b2q
            * F(2 * q, s + 1, s + 3, (1.0 - mu) * g.zeta)
            + (mu - 1.0) * beta(s + 1, 1.0) / (2.0 ** (s + 1) * g.b2q)
            * F(2 * q, s + 1, s + 2, g.w)
            + beta(s + 2, 1.0) / (2.0 ** (s + 2) * g.b2q) * F(2 * q, s + 2, s + 3, g.w)
        )
    if index == 5:
        if case == "lambda=1":
            return (
                beta(2.0, s + 1) / g.b2q * F(2 * q, 2.0, s + 3, g.zeta)
                - 2.0 ** (2 * q - s - 1) * beta(1.0, s + 1) / g.apb2q
                * F(2 * q, 1.0, s + 2, g.z)
                + 2.0 ** (2 * q - s - 2) * beta(1.0, s + 2) / g.apb2q
                * F(2 * q, 1.0, s + 3, g.z)
            )
        if case == "interior":
            A_lam = lam * b + (1.0 - lam) * a
            return (
                2.0 * lam ** (s + 2) * beta(2.0, s + 1) / A_lam ** (2 * q)
                * F(2 * q, 2.0, s + 3, 1.0 - a / A_lam)
                - lam * 2.0 ** (2 * q - s - 1) * beta(1.0, s + 1) / g.apb2q
                * F(2 * q, 1.0, s + 2, g.z)
                + 2.0 ** (2 * q - s - 2) * beta(1.0, s + 2) / g.apb2q
                * F(2 * q, 1.0, s + 3, g.z)
                + beta(1.0, s + 2) / g.b2q * F(2 * q, 1.0, s + 3, g.zeta)
                - lam * beta(1.0, s + 1) / g.b2q * F(2 * q, 1.0, s + 2, g.zeta)
            )
    if index == 6:
        if case == "interior":
            return (
                (lam - 1.0) * beta(s + 1, 1.0) / (2.0 ** (s + 1) * g.b2q)
                * F(2 * q, s + 1, s + 2, g.w)
                + beta(s + 2, 1.0) / (2.0 ** (s + 2) * g.b2q) * F(2 * q, s + 2, s + 3, g.w)
                + 2.0 * (1.0 - lam) ** (s + 2) * beta(s + 1, 2.0) / g.b2q
                * F(2 * q, s + 1, s + 3, (1.0 - lam) * g.zeta)
            )
        if case == "lambda=1/2":
            return beta(s + 1, 2.0) / (2.0 ** (s + 2) * g.b2q) * F(2 * q, s + 1, s + 3, g.w)
    if index == 8:
        return 2.0 ** (2 * q - s - 1) * beta(1.0, s + 1) / g.apb2q * F(2 * q, 1.0, s + 2, g.z)
    if index == 9:
        return (
            beta(s + 1, 1.0) / g.b2q * F(2 * q, s + 1, s + 2, g.zeta)
            - beta(s + 1, 1.0) / (2.0 ** (s + 1) * g.b2q) * F(2 * q, s + 1, s + 2, g.w)
        )
    if index == 12:
        return beta(s + 1, 1.0) / (2.0 ** (s + 1) * g.b2q) * F(2 * q, s + 1, s + 2, g.w)
    # Remaining cases pass the oracle as printed.
    return closed_B(index, inst)


@dataclass(frozen=True)
class BoundTerm:
    """One coefficient adjudication: oracle vs printed closed form."""

    index: int
    case: str
    oracle: float
    closed_form: float | None
    rel_diff: float | None
    status: str  # "ok" | "erratum_suspected" | "oracle_only"


def crosscheck_B(
    index: int,
    inst: Instance,
    p: float | None = None,
    settings: QuadSettings | None = None,
    tol: float = CROSSCHECK_TOL,
) -> BoundTerm:
    """Adjudicate one coefficient: defining integral vs printed form.

    The oracle failing is fatal (AccuracyError); the closed form failing to
    evaluate demotes the term to oracle_only rather than killing the run.
    """
    if index not in range(1, 13):
        raise ParameterError(f"coefficient index must be 1..12, got {index!r}")
    _require_band(inst)
    case = case_label(index, inst)
    kind = KIND_FOR_INDEX[index]
    if kind.weight == "abs_weight_pow_p":
        if p is None or not (math.isfinite(p) and p > 1.0):
            raise ParameterError(f"index {index} needs exponent p > 1, got {p!r}")
        oracle = kernel_oracle(kind, inst, p_or_q=p, settings=settings)
    else:
        oracle = kernel_oracle(kind, inst, settings=settings)

    closed: float | None
    try:
        if index == 1:
            closed = b1_b4(inst.mu_, inst.lambda_)[0]
        elif index == 4:
            closed = b1_b4(inst.mu_, inst.lambda_)[1]
        elif index == 7:
            closed = b7_b10(inst.mu_, inst.lambda_, p)[0]
        elif index == 10:
            closed = b7_b10(inst.mu_, inst.lambda_, p)[1]
        else:
            closed = closed_B(index, inst)
    except (AccuracyError, ParameterError):
        closed = None

    if closed is None:
        return BoundTerm(
            index=index, case=case, oracle=oracle, closed_form=None,
            rel_diff=None, status="oracle_only",
        )
    rel = abs(closed - oracle) / max(abs(oracle), 1e-300)
    status = "ok" if rel <= tol else "erratum_suspected"
    return BoundTerm(
        index=index, case=case, oracle=oracle, closed_form=closed,
        rel_diff=rel, status=status,
    )


def _deriv_weights(inst: Instance, fa_q: float | None, fbm_q: float | None) -> tuple[float, float]:
    if fa_q is None:
        fa_q = abs(inst.f.deriv(inst.a)) ** inst.q
    if fbm_q is None:
        fbm_q = abs(inst.f.deriv(inst.b / inst.m)) ** inst.q
    for name, val in (("fa_q", fa_q), ("fbm_q", fbm_q)):
        if not (isinstance(val, (int, float)) and math.isfinite(val) and val >= 0.0):
            raise ParameterError(f"{name} must be a finite nonnegative real, got {val!r}")
    return fa_q, fbm_q


def _bracket(value: float, path: str) -> float:
    if value < 0.0:
        # Only a misprinted closed form can go negative; the oracle path
        # integrates nonnegative integrands.
        raise AccuracyError(
            f"negative bracket on the {path} path (misprinted coefficient)",
            bracket=value,
        )
    return value


def _coeff(index: int, inst: Instance, path: str, settings: QuadSettings | None) -> float:
    if path == "oracle":
        return kernel_oracle(KIND_FOR_INDEX[index], inst, settings=settings)
    return closed_B(index, inst)


def theorem1_rhs(
    inst: Instance,
    fa_q: float | None = None,
    fbm_q: float | None = None,
    path: str = "oracle",
    settings: QuadSettings | None = None,
) -> float:
    """Power-mean right-hand side, valid for q >= 1.

    ab(b-a) * { B1^(1-1/q) (fa_q B2 + m fbm_q B3)^(1/q)
              + B4^(1-1/q) (fa_q B5 + m fbm_q B6)^(1/q) },
    with the 1/q exponent applied to both braces.  fa_q and fbm_q default
    to |f'(a)|^q and |f'(b/m)|^q of the instance's own function.
    """
    _require_band(inst)
    if path not in ("oracle", "closed_form"):
        raise ParameterError(f"path must be 'oracle' or 'closed_form', got {path!r}")
    fa_q, fbm_q = _deriv_weights(inst, fa_q, fbm_q)
    q, m = inst.q, inst.m
    b1, b4 = b1_b4(inst.mu_, inst.lambda_)
    t2 = _coeff(2, inst, path, settings)
    t3 = _coeff(3, inst, path, settings)
    t5 = _coeff(5, inst, path, settings)
    t6 = _coeff(6, inst, path, settings)
    left = _bracket(fa_q * t2 + m * fbm_q * t3, path)
    right = _bracket(fa_q * t5 + m * fbm_q * t6, path)
    scale = inst.a * inst.b * (inst.b - inst.a)
    return scale * (
        b1 ** (1.0 - 1.0 / q) * left ** (1.0 / q)
        + b4 ** (1.0 - 1.0 / q) * right ** (1.0 / q)
    )


def theorem2_rhs(
    inst: Instance,
    fa_q: float | None = None,
    fbm_q: float | None = None,
    path: str = "oracle",
    settings: QuadSettings | None = None,
) -> float:
    """Conjugate-exponent right-hand side, valid for q > 1 (p = q/(q-1)).

    ab(b-a) * { B7^(1/p) (fa_q B8 + m fbm_q B9)^(1/q)
              + B10^(1/p) (fa_q B11 + m fbm_q B12)^(1/q) }.
    """
    _require_band(inst)
    if path not in ("oracle", "closed_form"):
        raise ParameterError(f"path must be 'oracle' or 'closed_form', got {path!r}")
    if inst.q <= 1.0:
        raise ParameterError(f"theorem2_rhs requires q > 1, got q={inst.q!r}")
    fa_q, fbm_q = _deriv_weights(inst, fa_q, fbm_q)
    q, m = inst.q, inst.m
    p = q / (q - 1.0)
    # The weight moments are elementary and exact; path only selects how
    # the disputed 2F1-based entries are evaluated.
    b7, b10 = b7_b10(inst.mu_, inst.lambda_, p)
    t8 = _coeff(8, inst, path, settings)
    t9 = _coeff(9, inst, path, settings)
    t11 = _coeff(11, inst, path, settings)
    t12 = _coeff(12, inst, path, settings)
    left = _bracket(fa_q * t8 + m * fbm_q * t9, path)
    right = _bracket(fa_q * t11 + m * fbm_q * t12, path)
    scale = inst.a * inst.b * (inst.b - inst.a)
    return scale * (
        b7 ** (1.0 / p) * left ** (1.0 / q)
        + b10 ** (1.0 / p) * right ** (1.0 / q)
    )


def corollary_rhs(
    kind: str,
    theorem: int,
    inst: Instance,
    fa_q: float | None = None,
    fbm_q: float | None = None,
    path: str = "oracle",
    settings: QuadSettings | None = None,
) -> float:
    """Specialized RHS at a preset triple, prefactor pulled out.

    At each preset B1 = B4 (and B7 = B10), so the weight moment factors
    out of the brace sum exactly as the specialized displays write it;
    the result is algebraically identical to the general RHS.
    """
    if kind not in PRESETS:
        raise ParameterError(f"corollary kind must be one of {sorted(PRESETS)}, got {kind!r}")
    if theorem not in (1, 2):
        raise ParameterError(f"theorem must be 1 or 2, got {theorem!r}")
    lam, mu = PRESETS[kind]
    if inst.lambda_ != lam or inst.mu_ != mu:
        raise ParameterError(
            f"instance triple (lambda_={inst.lambda_!r}, mu_={inst.mu_!r}) does not "
            f"match preset {kind!r} ({lam!r}, {mu!r})"
        )
    _require_band(inst)
    if path not in ("oracle", "closed_form"):
        raise ParameterError(f"path must be 'oracle' or 'closed_form', got {path!r}")
    fa_q, fbm_q = _deriv_weights(inst, fa_q, fbm_q)
    q, m = inst.q, inst.m
    scale = inst.a * inst.b * (inst.b - inst.a)
    if theorem == 1:
        b1, b4 = b1_b4(mu, lam)
        left = _bracket(
            fa_q * _coeff(2, inst, path, settings) + m * fbm_q * _coeff(3, inst, path, settings),
            path,
        )
        right = _bracket(
            fa_q * _coeff(5, inst, path, settings) + m * fbm_q * _coeff(6, inst, path, settings),
            path,
        )
        return scale * b1 ** (1.0 - 1.0 / q) * (left ** (1.0 / q) + right ** (1.0 / q))
    if inst.q <= 1.0:
        raise ParameterError(f"theorem 2 corollaries require q > 1, got q={inst.q!r}")
    p = q / (q - 1.0)
    b7, _ = b7_b10(mu, lam, p)
    left = _bracket(
        fa_q * _coeff(8, inst, path, settings) + m * fbm_q * _coeff(9, inst, path, settings),
        path,
    )
    right = _bracket(
        fa_q * _coeff(11, inst, path, settings) + m * fbm_q * _coeff(12, inst, path, settings),
        path,
    )
    return scale * b7 ** (1.0 / p) * (left ** (1.0 / q) + right ** (1.0 / q))


def simpson_theorem2_prefactor(p: float, as_printed: bool = False) -> float:
    """B7(1/6)^(1/p) for the simpson triple.

    The printed specialization drops the "+1": it shows
    (2^(p+1) / ((p+1) 6^(p+1)))^(1/p) where the defining integral gives
    ((2^(p+1) + 1) / ((p+1) 6^(p+1)))^(1/p).
    """
    if not (math.isfinite(p) and p > 1.0):
        raise ParameterError(f"p must be > 1, got {p!r}")
    num = 2.0 ** (p + 1.0) + (0.0 if as_printed else 1.0)
    return (num / ((p + 1.0) * 6.0 ** (p + 1.0))) ** (1.0 / p)


@dataclass(frozen=True)
class Verdict:
    """Inequality verdict: passed iff margin = rhs - lhs >= -margin_tol."""

    theorem: int
    lhs: float
    rhs: float
    margin: float
    passed: bool
    path: str


def certify_instance(
    inst: Instance,
    grid: GridSpec | None = None,
):
    """Grid-certify that |f'|^q is harmonically (s,m)-convex on [a, b/m]."""
    shape = abs_deriv_pow(inst.f, inst.q)
    if grid is None:
        grid = GridSpec(lo=inst.a, hi=inst.b / inst.m)
    return check_harmonic_sm(shape, inst.s, inst.m, grid)


def check_theorem(
    inst: Instance,
    theorem: int,
    settings: QuadSettings | None = None,
    path: str = "oracle",
    certificate=None,
    margin_tol: float = MARGIN_TOL,
) -> Verdict:
    """Verify |I_f| <= RHS for one instance and one theorem.

    The convexity hypothesis on |f'|^q is enforced first: pass a
    ConvexityReport as ``certificate`` to reuse one computed elsewhere,
    otherwise a default grid certification runs here.  An instance whose
    certificate does not hold raises PreconditionError, never a silent
    verdict.  The oracle path is authoritative; closed_form exists to
    exercise the printed coefficient tables.
    """
    if theorem not in (1, 2):
        raise ParameterError(f"theorem must be 1 or 2, got {theorem!r}")
    _require_band(inst)
    if certificate is None:
        certificate = certify_instance(inst)
    if not certificate.holds:
        raise PreconditionError(
            f"|f'|^q is not harmonically (s,m)-convex on [a, b/m] at grid "
            f"resolution (worst defect {certificate.worst_defect:.3e}); "
            "the inequality hypotheses are not met"
        )
    lhs = abs(rule_deviation(inst, settings))
    if theorem == 1:
        rhs = theorem1_rhs(inst, path=path, settings=settings)
    else:
        rhs = theorem2_rhs(inst, path=path, settings=settings)
    margin = rhs - lhs
    return Verdict(
        theorem=theorem, lhs=lhs, rhs=rhs, margin=margin,
        passed=margin >= -margin_tol, path=path,
    )
