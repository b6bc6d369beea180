"""Convexity classes on positive domains, certified by dense grid sampling.

A function f on an interval of (0, inf) is harmonically (s,m)-convex (second
sense) when

    f(m*x*y / (m*t*y + (1-t)*x)) <= t**s * f(x) + m * (1-t)**s * f(y)

for all x, y in the domain and t in [0, 1], with parameters s, m in (0, 1].
The plain (s,m)-convex variant uses the combination t*x + m*(1-t)*y on the
left instead.  Neither class is decidable from point samples, so this module
reports grid verdicts: the worst signed defect of the defining inequality
over a rectangular (x, y, t) grid, together with the witness triple that
attains it.  A verdict "holds" means the worst defect does not exceed
``DEFECT_TOL``; callers that need a guarantee combine the verdict with an
analytic certificate for the family in question (see ``PROPERTY_CORPUS``).

``FunctionSpec`` is a small closed term language (linear, powers, scaled
power-plus-constant, scaling, sums, pointwise maxima, composition, explicit
sequence limits, and |f'|**q wrappers) with numpy-vectorized evaluators for
f and, where defined, f'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, EvaluationError, ParameterError

DEFECT_TOL = 1e-9
# Monotonicity is decided from adjacent differences of this many samples.
MONO_SAMPLES = 401
MONO_TOL = 1e-12

_KINDS = (
    "linear",
    "power",
    "s_power",
    "scale",
    "sum",
    "max",
    "compose",
    "seq_limit",
    "abs_deriv_pow",
)

_PARAM_NAMES = {
    "linear": (),
    "power": ("c", "p"),
    "s_power": ("b", "s", "c"),
    "scale": ("lam",),
    "sum": (),
    "max": (),
    "compose": (),
    "seq_limit": (),
    "abs_deriv_pow": ("q",),
}


def _require_sm(s: float, m: float) -> None:
    if not (isinstance(s, (int, float)) and 0.0 < s <= 1.0):
        raise ParameterError(f"s must lie in (0, 1], got {s!r}")
    if not (isinstance(m, (int, float)) and 0.0 < m <= 1.0):
        raise ParameterError(f"m must lie in (0, 1], got {m!r}")


@dataclass(frozen=True)
class FunctionSpec:
    """A closed-form function term on (domain_lo, inf).

    ``claimed_s`` / ``claimed_m`` record the class the constructor believes
    the function belongs to; they are advisory metadata that grid checks can
    confirm or refute, never trusted on their own.
    """

    kind: str
    params: tuple[tuple[str, float], ...] = ()
    children: tuple["FunctionSpec", ...] = ()
    domain_lo: float = 0.0
    claimed_s: float | None = None
    claimed_m: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ParameterError(f"unknown FunctionSpec kind {self.kind!r}")
        names = tuple(k for k, _ in self.params)
        if names != _PARAM_NAMES[self.kind]:
            raise ParameterError(
                f"{self.kind} expects params {_PARAM_NAMES[self.kind]}, got {names}"
            )
        for name, val in self.params:
            if not (isinstance(val, (int, float)) and math.isfinite(val)):
                raise ParameterError(f"{self.kind} param {name}={val!r} must be finite")
        arity = {
            "linear": (0, 0),
            "power": (0, 0),
            "s_power": (0, 0),
            "scale": (1, 1),
            "sum": (2, None),
            "max": (2, None),
            "compose": (2, 2),
            "seq_limit": (2, None),
            "abs_deriv_pow": (1, 1),
        }[self.kind]
        n = len(self.children)
        if n < arity[0] or (arity[1] is not None and n > arity[1]):
            raise ParameterError(f"{self.kind} takes {arity} children, got {n}")
        if not (math.isfinite(self.domain_lo) and self.domain_lo >= 0.0):
            raise ParameterError(f"domain_lo must be finite and >= 0, got {self.domain_lo!r}")
        if self.kind == "scale" and self.param("lam") <= 0.0:
            raise ParameterError("scale requires a positive factor")
        if self.kind == "s_power" and self.param("s") <= 0.0:
            raise ParameterError("s_power requires exponent s > 0")
        if self.kind == "abs_deriv_pow" and self.param("q") <= 0.0:
            raise ParameterError("abs_deriv_pow requires q > 0")
        for name, val in (("claimed_s", self.claimed_s), ("claimed_m", self.claimed_m)):
            if val is not None and not (0.0 < val <= 1.0):
                raise ParameterError(f"{name} must lie in (0, 1], got {val!r}")
        # A claimed s_power must have nonnegative coefficients, otherwise
        # the claim is structurally wrong regardless of grid evidence.
        if self.kind == "s_power" and self.claimed_s is not None:
            if self.param("b") < 0.0 or self.param("c") < 0.0:
                raise ParameterError("claimed s_power requires b >= 0 and c >= 0")

    def param(self, name: str) -> float:
        for key, val in self.params:
            if key == name:
                return val
        raise ParameterError(f"{self.kind} has no param {name!r}")

    def _check_domain(self, arr: np.ndarray, what: str) -> None:
        bad = arr[~(arr > self.domain_lo)]
        if bad.size:
            raise DomainError(
                f"{what} of {self.kind} spec requires x > {self.domain_lo}, "
                f"got x={float(bad.min())!r}"
            )

    def value(self, x: float | np.ndarray) -> float | np.ndarray:
        arr = np.asarray(x, dtype=float)
        self._check_domain(arr, "value")
        out = self._value(arr)
        if not np.all(np.isfinite(out)):
            raise EvaluationError(f"{self.kind} spec produced a non-finite value")
        return float(out) if arr.ndim == 0 else out

    def _value(self, x: np.ndarray) -> np.ndarray:
        if self.kind == "linear":
            return x + 0.0
        if self.kind == "power":
            return self.param("c") * x ** self.param("p")
        if self.kind == "s_power":
            return self.param("b") * x ** self.param("s") + self.param("c")
        if self.kind == "scale":
            return self.param("lam") * self.children[0].value(x)
        if self.kind == "sum":
            total = self.children[0].value(x)
            for child in self.children[1:]:
                total = total + child.value(x)
            return np.asarray(total, dtype=float)
        if self.kind == "max":
            vals = [np.asarray(child.value(x), dtype=float) for child in self.children]
            return np.maximum.reduce(vals)
        if self.kind == "compose":
            outer, inner = self.children
            return np.asarray(outer.value(inner.value(x)), dtype=float)
        if self.kind == "seq_limit":
            return np.asarray(self.limit.value(x), dtype=float)
        if self.kind == "abs_deriv_pow":
            return np.abs(self.children[0].deriv(x)) ** self.param("q")
        raise ParameterError(f"unknown kind {self.kind!r}")

    def deriv(self, x: float | np.ndarray) -> float | np.ndarray:
        arr = np.asarray(x, dtype=float)
        self._check_domain(arr, "deriv")
        out = self._deriv(arr)
        if not np.all(np.isfinite(out)):
            raise EvaluationError(f"{self.kind} spec produced a non-finite derivative")
        return float(out) if arr.ndim == 0 else out

    def _deriv(self, x: np.ndarray) -> np.ndarray:
        if self.kind == "linear":
            return np.ones_like(x)
        if self.kind == "power":
            c, p = self.param("c"), self.param("p")
            return c * p * x ** (p - 1.0)
        if self.kind == "s_power":
            b, s = self.param("b"), self.param("s")
            return b * s * x ** (s - 1.0)
        if self.kind == "scale":
            return self.param("lam") * self.children[0].deriv(x)
        if self.kind == "sum":
            total = self.children[0].deriv(x)
            for child in self.children[1:]:
                total = total + child.deriv(x)
            return np.asarray(total, dtype=float)
        if self.kind == "compose":
            outer, inner = self.children
            fx = inner.value(x)
            return np.asarray(outer.deriv(fx) * inner.deriv(x), dtype=float)
        if self.kind == "seq_limit":
            return np.asarray(self.limit.deriv(x), dtype=float)
        raise EvaluationError(f"{self.kind} spec has no derivative evaluator")

    @property
    def members(self) -> tuple["FunctionSpec", ...]:
        if self.kind != "seq_limit":
            raise ParameterError("members is defined only for seq_limit specs")
        return self.children[:-1]

    @property
    def limit(self) -> "FunctionSpec":
        if self.kind != "seq_limit":
            raise ParameterError("limit is defined only for seq_limit specs")
        return self.children[-1]


def linear() -> FunctionSpec:
    """f(x) = x, harmonically (s,m)-convex for every s, m in (0, 1]."""
    return FunctionSpec(kind="linear", claimed_s=1.0, claimed_m=1.0)


def power(c: float, p: float) -> FunctionSpec:
    """f(x) = c * x**p on (0, inf)."""
    claimed = (1.0, 1.0) if (c >= 0.0 and p >= 1.0) else (None, None)
    return FunctionSpec(
        kind="power",
        params=(("c", float(c)), ("p", float(p))),
        claimed_s=claimed[0],
        claimed_m=claimed[1],
    )


def s_power(b: float, s: float, c: float) -> FunctionSpec:
    """f(x) = b * x**s + c on (0, inf); claims class (s, 1) when b, c >= 0."""
    claimed_s = float(s) if (b >= 0.0 and c >= 0.0 and 0.0 < s <= 1.0) else None
    return FunctionSpec(
        kind="s_power",
        params=(("b", float(b)), ("s", float(s)), ("c", float(c))),
        claimed_s=claimed_s,
        claimed_m=1.0 if claimed_s is not None else None,
    )


def abs_deriv_pow(f: FunctionSpec, q: float) -> FunctionSpec:
    """g(x) = |f'(x)|**q, the shape whose convexity class gates the bounds."""
    if not (isinstance(q, (int, float)) and math.isfinite(q) and q > 0.0):
        raise ParameterError(f"abs_deriv_pow requires finite q > 0, got {q!r}")
    return FunctionSpec(
        kind="abs_deriv_pow",
        params=(("q", float(q)),),
        children=(f,),
        domain_lo=f.domain_lo,
    )


def _common_claim(specs: tuple[FunctionSpec, ...]) -> tuple[float | None, float | None]:
    ss = [sp.claimed_s for sp in specs]
    ms = [sp.claimed_m for sp in specs]
    if any(v is None for v in ss) or any(v is None for v in ms):
        return None, None
    if len(set(ms)) != 1:
        # Classes with different m do not combine; t**s is monotone in s so
        # only the s slot admits a min rule.
        return None, None
    return min(ss), ms[0]


def combine(
    op: str,
    inputs: list[FunctionSpec] | tuple[FunctionSpec, ...],
    *,
    lam: float | None = None,
    limit: FunctionSpec | None = None,
) -> FunctionSpec:
    """Build a composite FunctionSpec whose claimed class follows the
    closure rule for ``op``.

    max and sum keep the common m and claim s = min over inputs; scale(lam)
    with lam > 0 keeps the class; compose([g, f]) claims g's s with the
    common m (hypotheses: g nondecreasing and (s,m)-convex on f's range, f
    harmonically m-convex); seq_limit claims the members' common class for
    the supplied pointwise limit.  Claims are advisory: confirm them with
    check_harmonic_sm.
    """
    specs = tuple(inputs)
    if op in ("max", "sum"):
        if len(specs) < 2:
            raise ParameterError(f"{op} needs at least two inputs")
        cs, cm = _common_claim(specs)
        lo = max(sp.domain_lo for sp in specs)
        return FunctionSpec(kind=op, children=specs, domain_lo=lo, claimed_s=cs, claimed_m=cm)
    if op == "scale":
        if len(specs) != 1:
            raise ParameterError("scale takes exactly one input")
        if lam is None or not (isinstance(lam, (int, float)) and math.isfinite(lam)):
            raise ParameterError(f"scale requires a finite factor, got {lam!r}")
        if lam <= 0.0:
            raise ParameterError(f"scale requires a positive factor, got {lam!r}")
        f = specs[0]
        return FunctionSpec(
            kind="scale",
            params=(("lam", float(lam)),),
            children=(f,),
            domain_lo=f.domain_lo,
            claimed_s=f.claimed_s,
            claimed_m=f.claimed_m,
        )
    if op == "compose":
        if len(specs) != 2:
            raise ParameterError("compose takes exactly [outer, inner]")
        outer, inner = specs
        cs = cm = None
        if (
            outer.claimed_s is not None
            and outer.claimed_m is not None
            and inner.claimed_m == outer.claimed_m
        ):
            cs, cm = outer.claimed_s, outer.claimed_m
        return FunctionSpec(
            kind="compose",
            children=specs,
            domain_lo=inner.domain_lo,
            claimed_s=cs,
            claimed_m=cm,
        )
    if op == "seq_limit":
        if limit is None:
            raise ParameterError("seq_limit requires the pointwise limit spec")
        if len(specs) < 1:
            raise ParameterError("seq_limit needs at least one member")
        cs, cm = _common_claim(specs)
        lo = max(max(sp.domain_lo for sp in specs), limit.domain_lo)
        return FunctionSpec(
            kind="seq_limit",
            children=specs + (limit,),
            domain_lo=lo,
            claimed_s=cs,
            claimed_m=cm,
        )
    raise ParameterError(f"unknown combine op {op!r}")


@dataclass(frozen=True)
class GridSpec:
    """Rectangular sample grid for (x, y, t) over [lo, hi] x [lo, hi] x [0, 1]."""

    nx: int = 41
    ny: int = 41
    nt: int = 21
    lo: float = 1.0
    hi: float = 2.0

    def __post_init__(self) -> None:
        for name, n in (("nx", self.nx), ("ny", self.ny), ("nt", self.nt)):
            if not (isinstance(n, int) and n >= 2):
                raise ParameterError(f"{name} must be an int >= 2, got {n!r}")
        if not (
            math.isfinite(self.lo)
            and math.isfinite(self.hi)
            and 0.0 < self.lo < self.hi
        ):
            raise ParameterError(
                f"grid interval needs 0 < lo < hi, got [{self.lo!r}, {self.hi!r}]"
            )

    def refined(self) -> "GridSpec":
        """Twice as many samples on every axis, same interval."""
        return replace(self, nx=2 * self.nx, ny=2 * self.ny, nt=2 * self.nt)


@dataclass(frozen=True)
class ConvexityReport:
    """Grid verdict: holds iff worst_defect <= the tolerance used."""

    holds: bool
    worst_defect: float
    witness: tuple[float, float, float]
    checked: int


def harmonic_sm_defect(
    f: FunctionSpec, x: float, y: float, t: float, s: float, m: float
) -> float:
    """Signed defect of the harmonic (s,m)-convexity inequality at one point.

    Returns f(m*x*y/(m*t*y+(1-t)*x)) - t**s*f(x) - m*(1-t)**s*f(y); the
    inequality holds at (x, y, t) exactly when this is <= 0.
    """
    _require_sm(s, m)
    if not (0.0 <= t <= 1.0):
        raise ParameterError(f"t must lie in [0, 1], got {t!r}")
    if not (x > f.domain_lo and y > f.domain_lo):
        raise DomainError(f"x and y must exceed domain_lo={f.domain_lo}, got {x!r}, {y!r}")
    comb = m * x * y / (m * t * y + (1.0 - t) * x)
    return f.value(comb) - (t**s * f.value(x) + m * (1.0 - t) ** s * f.value(y))


def _grid_defect(
    f: FunctionSpec, s: float, m: float, grid: GridSpec, harmonic: bool
) -> tuple[float, tuple[float, float, float], int]:
    xs = np.linspace(grid.lo, grid.hi, grid.nx)
    ys = np.linspace(grid.lo, grid.hi, grid.ny)
    ts = np.linspace(0.0, 1.0, grid.nt)
    X = xs[:, None, None]
    Y = ys[None, :, None]
    T = ts[None, None, :]
    if harmonic:
        comb = m * X * Y / (m * T * Y + (1.0 - T) * X)
    else:
        comb = T * X + m * (1.0 - T) * Y
    fx = np.asarray(f.value(xs), dtype=float)[:, None, None]
    fy = np.asarray(f.value(ys), dtype=float)[None, :, None]
    defect = np.asarray(f.value(comb), dtype=float) - (T**s * fx + m * (1.0 - T) ** s * fy)
    if not np.all(np.isfinite(defect)):
        raise EvaluationError("grid defect evaluation produced non-finite values")
    # C-order argmax returns the first maximizer, which is the
    # lexicographically smallest (x, y, t) witness.
    flat_idx = int(np.argmax(defect))
    ix, iy, it = np.unravel_index(flat_idx, defect.shape)
    worst = float(defect[ix, iy, it])
    witness = (float(xs[ix]), float(ys[iy]), float(ts[it]))
    return worst, witness, defect.size


def check_harmonic_sm(
    f: FunctionSpec,
    s: float,
    m: float,
    grid: GridSpec,
    defect_tol: float = DEFECT_TOL,
) -> ConvexityReport:
    """Grid verdict for harmonic (s,m)-convexity over grid's interval."""
    _require_sm(s, m)
    if not grid.lo > f.domain_lo:
        raise DomainError(
            f"grid interval [{grid.lo}, {grid.hi}] must sit above domain_lo={f.domain_lo}"
        )
    worst, witness, checked = _grid_defect(f, s, m, grid, harmonic=True)
    return ConvexityReport(
        holds=worst <= defect_tol, worst_defect=worst, witness=witness, checked=checked
    )


def check_plain_sm(
    f: FunctionSpec,
    s: float,
    m: float,
    grid: GridSpec,
    defect_tol: float = DEFECT_TOL,
) -> ConvexityReport:
    """Grid verdict for plain (s,m)-convexity (combination t*x + m*(1-t)*y)."""
    _require_sm(s, m)
    if not grid.lo > f.domain_lo:
        raise DomainError(
            f"grid interval [{grid.lo}, {grid.hi}] must sit above domain_lo={f.domain_lo}"
        )
    worst, witness, checked = _grid_defect(f, s, m, grid, harmonic=False)
    return ConvexityReport(
        holds=worst <= defect_tol, worst_defect=worst, witness=witness, checked=checked
    )


@dataclass(frozen=True)
class Classification:
    monotone: str  # "nondecreasing" | "nonincreasing" | "neither"
    sm_convex: bool
    harmonic_sm_convex: bool


def classify(
    f: FunctionSpec,
    s: float,
    m: float,
    grid: GridSpec,
    defect_tol: float = DEFECT_TOL,
) -> Classification:
    """Monotonicity plus plain and harmonic (s,m)-convexity grid verdicts.

    The two verdicts feed the implication pair: nondecreasing plain-convex
    functions are harmonically convex of the same class, and nonincreasing
    harmonically convex functions are plain convex of the same class.
    Constant functions report "nondecreasing".
    """
    _require_sm(s, m)
    xs = np.linspace(grid.lo, grid.hi, MONO_SAMPLES)
    vals = np.asarray(f.value(xs), dtype=float)
    diffs = np.diff(vals)
    nondecr = bool(np.all(diffs >= -MONO_TOL))
    nonincr = bool(np.all(diffs <= MONO_TOL))
    if nondecr:
        monotone = "nondecreasing"
    elif nonincr:
        monotone = "nonincreasing"
    else:
        monotone = "neither"
    plain = check_plain_sm(f, s, m, grid, defect_tol)
    harmonic = check_harmonic_sm(f, s, m, grid, defect_tol)
    return Classification(
        monotone=monotone,
        sm_convex=plain.holds,
        harmonic_sm_convex=harmonic.holds,
    )


@dataclass(frozen=True)
class ReflectionWitness:
    t: float
    lhs: float
    rhs: float
    holds: bool


def reflection_witness(
    f: FunctionSpec,
    a: float,
    b: float,
    s: float,
    m: float,
    x: float,
    defect_tol: float = DEFECT_TOL,
) -> ReflectionWitness:
    """One-point reflection inequality for a harmonically (s,m)-convex f.

    Writes x = t*a + (1-t)*b with t = (b-x)/(b-a) and compares
    f(a*b/(a+b-x)) against t**s*(f(a)+f(b)) + m*(1-t)**s*(f(a/m)+f(b/m))
    - f(a*b/x).  The caller certifies the convexity hypothesis.
    """
    _require_sm(s, m)
    if not (0.0 < a < b):
        raise ParameterError(f"need 0 < a < b, got a={a!r}, b={b!r}")
    if not (a <= x <= b):
        raise ParameterError(f"x must lie in [{a}, {b}], got {x!r}")
    t = (b - x) / (b - a)
    lhs = f.value(a * b / (a + b - x))
    rhs = (
        t**s * (f.value(a) + f.value(b))
        + m * (1.0 - t) ** s * (f.value(a / m) + f.value(b / m))
        - f.value(a * b / x)
    )
    return ReflectionWitness(t=t, lhs=lhs, rhs=rhs, holds=lhs <= rhs + defect_tol)


@dataclass(frozen=True)
class CorpusEntry:
    """A function family with its analytically certified class region.

    ``universal`` families are harmonically (s,m)-convex for every
    s, m in (0, 1].  Otherwise the certificate covers m = 1 with
    s <= ``m1_max_s`` only.
    """

    name: str
    spec: FunctionSpec
    lo: float
    hi: float
    universal: bool
    m1_max_s: float

    def certifies(self, s: float, m: float) -> bool:
        _require_sm(s, m)
        if self.universal:
            return True
        return m == 1.0 and s <= self.m1_max_s + 1e-12


def _corpus() -> tuple[CorpusEntry, ...]:
    # x**r with r >= 1 and nonnegative scale is in every (s, m) class: the
    # harmonic mean is below the arithmetic mean, Jensen handles r >= 1, and
    # t <= t**s lifts the weights.  For m = 1 the weaker x**r with r in
    # (0, 1) certifies s <= r via subadditivity of u -> u**r, reciprocal
    # powers x**-r map to the same rule through u = 1/x, and nonnegative
    # constants need t**s + (1-t)**s >= 1.
    sqrt_spec = s_power(1.0, 0.5, 0.0)
    square = power(1.0, 2.0)
    return (
        CorpusEntry("identity", linear(), 0.5, 3.0, True, 1.0),
        CorpusEntry("square", square, 0.5, 3.0, True, 1.0),
        CorpusEntry("cube_scaled", power(2.0, 3.0), 0.5, 3.0, True, 1.0),
        CorpusEntry("p15", power(0.5, 1.5), 0.5, 3.0, True, 1.0),
        CorpusEntry("quartic", power(1.0, 4.0), 0.5, 2.5, True, 1.0),
        CorpusEntry("sqrt", sqrt_spec, 0.5, 3.0, False, 0.5),
        CorpusEntry("sqrt_shift", s_power(2.0, 0.5, 1.0), 0.5, 3.0, False, 0.5),
        CorpusEntry("const", s_power(0.0, 1.0, 1.0), 0.5, 3.0, False, 1.0),
        CorpusEntry("recip", power(1.0, -1.0), 0.5, 3.0, False, 1.0),
        CorpusEntry("inv_sqrt", power(1.0, -0.5), 0.5, 3.0, False, 0.5),
        CorpusEntry("sum_min_s", combine("sum", [sqrt_spec, linear()]), 0.5, 3.0, False, 0.5),
        CorpusEntry("max_pair", combine("max", [linear(), square]), 0.5, 3.0, True, 1.0),
        CorpusEntry("scaled_square", combine("scale", [square], lam=2.5), 0.5, 3.0, True, 1.0),
    )


PROPERTY_CORPUS: tuple[CorpusEntry, ...] = _corpus()

# (s, m) pairs exercised by the closure and implication suites.
SM_PAIRS: tuple[tuple[float, float], ...] = (
    (1.0, 1.0),
    (0.5, 1.0),
    (0.5, 0.5),
    (1.0, 0.5),
    (0.75, 0.3),
    (0.3, 0.75),
)


def parse_function_spec(text: str) -> FunctionSpec:
    """Parse the CLI spec grammar.

    Forms: ``linear``, ``power:c=<r>,p=<r>``, ``spower:b=<r>,s=<r>,c=<r>``,
    ``scale:<r>:<spec>``, ``sum:<spec>+<spec>``, ``max:<spec>|<spec>``.
    """
    text = text.strip()
    if not text:
        raise ParameterError("empty function spec")
    if text == "linear":
        return linear()
    if text.startswith("power:"):
        kv = _parse_params(text[len("power:"):], ("c", "p"), text)
        return power(kv["c"], kv["p"])
    if text.startswith("spower:"):
        kv = _parse_params(text[len("spower:"):], ("b", "s", "c"), text)
        if kv["s"] <= 0.0:
            raise ParameterError(f"spower needs s > 0 in {text!r}")
        return s_power(kv["b"], kv["s"], kv["c"])
    if text.startswith("scale:"):
        rest = text[len("scale:"):]
        head, sep, inner = rest.partition(":")
        if not sep:
            raise ParameterError(f"scale spec needs scale:<r>:<spec>, got {text!r}")
        lam = _parse_number(head, text)
        return combine("scale", [parse_function_spec(inner)], lam=lam)
    if text.startswith("sum:"):
        return _parse_binary(text[len("sum:"):], "+", "sum", text)
    if text.startswith("max:"):
        return _parse_binary(text[len("max:"):], "|", "max", text)
    raise ParameterError(f"unrecognized function spec {text!r}")


def _parse_number(token: str, ctx: str) -> float:
    try:
        val = float(token)
    except ValueError:
        raise ParameterError(f"bad number {token!r} in spec {ctx!r}") from None
    if not math.isfinite(val):
        raise ParameterError(f"non-finite number {token!r} in spec {ctx!r}")
    return val


def _parse_params(body: str, names: tuple[str, ...], ctx: str) -> dict[str, float]:
    parts = body.split(",")
    if len(parts) != len(names):
        raise ParameterError(f"expected params {names} in spec {ctx!r}")
    out: dict[str, float] = {}
    for part, name in zip(parts, names):
        key, sep, val = part.partition("=")
        if not sep or key != name:
            raise ParameterError(f"expected {name}=<r> in spec {ctx!r}, got {part!r}")
        out[name] = _parse_number(val, ctx)
    return out


def _parse_binary(body: str, sep: str, op: str, ctx: str) -> FunctionSpec:
    # Try each separator position; a '+' may also appear inside an exponent
    # like 1e+3, so accept the first split where both halves parse.
    idx = body.find(sep)
    while idx != -1:
        left, right = body[:idx], body[idx + 1:]
        try:
            return combine(op, [parse_function_spec(left), parse_function_spec(right)])
        except ParameterError:
            idx = body.find(sep, idx + 1)
    raise ParameterError(f"cannot split {op} spec {ctx!r}")


def format_function_spec(spec: FunctionSpec) -> str:
    """Inverse of parse_function_spec for the kinds the grammar covers."""
    if spec.kind == "linear":
        return "linear"
    if spec.kind == "power":
        return f"power:c={spec.param('c')!r},p={spec.param('p')!r}"
    if spec.kind == "s_power":
        return (
            f"spower:b={spec.param('b')!r},s={spec.param('s')!r},c={spec.param('c')!r}"
        )
    if spec.kind == "scale":
        return f"scale:{spec.param('lam')!r}:{format_function_spec(spec.children[0])}"
    if spec.kind in ("sum", "max"):
        sep = "+" if spec.kind == "sum" else "|"
        parts = [format_function_spec(child) for child in spec.children]
        # The grammar is binary; n-ary nodes fold to the right.
        out = parts[-1]
        for part in reversed(parts[:-1]):
            out = f"{spec.kind}:{part}{sep}{out}"
        return out
    raise ParameterError(f"{spec.kind} specs have no text syntax")
