"""Piecewise expanding interval maps built from two increasing branches.

``W0`` maps ``[0, a]`` onto ``[0, 1]`` and ``W1`` maps ``[1 - b, 1]`` onto
``[0, 1]``.  With ``a + b > 1`` the branch domains overlap and the threshold
``rho`` in ``[1 - b, a]`` decides which branch is applied:

* ``left_closed``  applies ``W0`` on ``[0, rho]``  (the map ``W``)
* ``right_closed`` applies ``W0`` on ``[0, rho)``  (the map ``W+``)

Two arithmetic modes are supported.  ``rational`` evaluates affine branches
exactly with :class:`fractions.Fraction` and is the reference path;
``float`` uses binary64 and also supports the sine-perturbed family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Union

import numpy as np

Number = Union[Fraction, float]

LEFT_CLOSED = "left_closed"
RIGHT_CLOSED = "right_closed"
VARIANTS = (LEFT_CLOSED, RIGHT_CLOSED)

AFFINE = "affine"
SINE = "sine"
FAMILIES = (AFFINE, SINE)

RATIONAL = "rational"
FLOAT = "float"
MODES = (RATIONAL, FLOAT)

INVERSE_TOL = 1e-14
TWO_PI = 2.0 * math.pi


class InvalidSystemError(ValueError):
    """Raised for parameter combinations outside the admissible family."""


def parse_number(value: Any, mode: str) -> Number:
    """Parse a JSON scalar (number or ``"p/q"`` string) in the given mode.

    Decimal literals are read by their decimal meaning in rational mode, so
    ``0.6`` becomes ``3/5`` rather than the nearest binary64 value.
    """
    if isinstance(value, bool):
        raise InvalidSystemError(f"expected a number, got {value!r}")
    if isinstance(value, Fraction):
        q = value
    elif isinstance(value, int):
        q = Fraction(value)
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise InvalidSystemError(f"non-finite number {value!r}")
        q = Fraction(repr(value))
    elif isinstance(value, str):
        try:
            q = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidSystemError(f"cannot parse number {value!r}") from exc
    else:
        raise InvalidSystemError(f"expected a number, got {value!r}")
    return q if mode == RATIONAL else float(q)


@dataclass(frozen=True)
class BranchSpec:
    """One branch family.  ``eps`` is the sine amplitude (ignored for affine)."""

    family: str = AFFINE
    eps: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidSystemError(f"unknown branch family {self.family!r}")
        if self.family == SINE and not 0.0 <= self.eps < 1.0:
            raise InvalidSystemError(f"sine amplitude must lie in [0, 1), got {self.eps}")

    def to_json(self) -> dict:
        if self.family == AFFINE:
            return {"family": AFFINE}
        return {"family": SINE, "eps": self.eps}


def _shape(t, eps):
    # g(t) = t + eps*sin(2 pi t)/(2 pi); g(0)=0, g(1)=1, g' = 1 + eps*cos(2 pi t)
    return t + eps * math.sin(TWO_PI * t) / TWO_PI


def _shape_prime(t, eps):
    return 1.0 + eps * math.cos(TWO_PI * t)


@dataclass(frozen=True)
class MapSystem:
    a: Number
    b: Number
    rho: Number
    branch0: BranchSpec = field(default_factory=BranchSpec)
    branch1: BranchSpec = field(default_factory=BranchSpec)
    mode: str = FLOAT
    d: Number | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidSystemError(f"unknown arithmetic mode {self.mode!r}")
        conv = Fraction if self.mode == RATIONAL else float
        if self.mode == RATIONAL:
            if not (self.branch0.family == AFFINE and self.branch1.family == AFFINE):
                raise InvalidSystemError("rational mode requires both branches affine")
            for name in ("a", "b", "rho"):
                if isinstance(getattr(self, name), float):
                    object.__setattr__(self, name, Fraction(repr(getattr(self, name))))
        for name in ("a", "b", "rho"):
            object.__setattr__(self, name, conv(getattr(self, name)))
        a, b, rho = self.a, self.b, self.rho
        if not (0 < a < 1 and 0 < b < 1):
            raise InvalidSystemError(f"a and b must lie in (0, 1), got a={a}, b={b}")
        if a + b <= 1:
            raise InvalidSystemError(f"a + b must exceed 1, got a + b = {a + b}")
        if not (1 - b <= rho <= a):
            raise InvalidSystemError(f"rho={rho} outside [1 - b, a] = [{1 - b}, {a}]")
        if self.branch0.family == SINE and self.branch0.eps >= 1 - float(a):
            raise InvalidSystemError(
                f"eps={self.branch0.eps} >= 1 - a = {1 - float(a)}: branch 0 not expanding")
        if self.branch1.family == SINE and self.branch1.eps >= 1 - float(b):
            raise InvalidSystemError(
                f"eps={self.branch1.eps} >= 1 - b = {1 - float(b)}: branch 1 not expanding")
        bound = self.derivative_bound()
        if self.d is None:
            object.__setattr__(self, "d", bound)
        else:
            object.__setattr__(self, "d", conv(self.d))
            if not self.d > 1:
                raise InvalidSystemError(f"derivative bound d must exceed 1, got {self.d}")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def affine(cls, a, b, rho, mode=FLOAT) -> "MapSystem":
        return cls(parse_number(a, mode), parse_number(b, mode), parse_number(rho, mode), mode=mode)

    @classmethod
    def sine(cls, a, b, rho, eps0, eps1=None) -> "MapSystem":
        eps1 = eps0 if eps1 is None else eps1
        return cls(float(a), float(b), float(rho), BranchSpec(SINE, float(eps0)),
                   BranchSpec(SINE, float(eps1)), mode=FLOAT)

    @classmethod
    def from_json(cls, data: dict) -> "MapSystem":
        if not isinstance(data, dict):
            raise InvalidSystemError("system config must be a JSON object")
        mode = data.get("mode", FLOAT)
        if mode not in MODES:
            raise InvalidSystemError(f"field 'mode' must be one of {MODES}, got {mode!r}")
        values = {}
        for name in ("a", "b", "rho"):
            if name not in data:
                raise InvalidSystemError(f"missing required field {name!r}")
            values[name] = parse_number(data[name], mode)
        branches = []
        for name in ("branch0", "branch1"):
            spec = data.get(name, {"family": AFFINE})
            if not isinstance(spec, dict) or "family" not in spec:
                raise InvalidSystemError(f"field {name!r} needs a 'family' entry")
            eps = spec.get("eps", 0.0)
            branches.append(BranchSpec(spec["family"], float(parse_number(eps, FLOAT))))
        d = data.get("d")
        return cls(values["a"], values["b"], values["rho"], branches[0], branches[1],
                   mode=mode, d=None if d is None else parse_number(d, mode))

    def to_json(self) -> dict:
        def out(v):
            return f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else v

        return {"a": out(self.a), "b": out(self.b), "rho": out(self.rho),
                "branch0": self.branch0.to_json(), "branch1": self.branch1.to_json(),
                "mode": self.mode}

    def with_rho(self, rho) -> "MapSystem":
        return replace(self, rho=self.num(rho))

    # -- arithmetic -----------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.mode == RATIONAL

    def num(self, x) -> Number:
        """Coerce ``x`` into this system's number type."""
        if self.exact:
            return x if isinstance(x, Fraction) else Fraction(x)
        return float(x)

    def derivative_bound(self) -> Number:
        """Analytic lower bound of both branch derivatives."""
        lows = []
        for spec, width in ((self.branch0, self.a), (self.branch1, self.b)):
            if spec.family == AFFINE:
                lows.append(1 / width)
            else:
                lows.append((1 - spec.eps) / float(width))
        return min(lows)

    def expansion_max(self) -> float:
        """Upper bound of both branch derivatives (used for error budgets)."""
        highs = []
        for spec, width in ((self.branch0, self.a), (self.branch1, self.b)):
            highs.append((1 + (spec.eps if spec.family == SINE else 0.0)) / float(width))
        return max(highs)

    def branch(self, i: int, x: Number) -> Number:
        """Evaluate ``W_i`` at ``x`` (no domain check)."""
        if i == 0:
            spec = self.branch0
            if spec.family == AFFINE:
                y = x / self.a
            else:
                y = _shape(x / self.a, spec.eps)
        else:
            spec = self.branch1
            if spec.family == AFFINE:
                y = (x - 1) / self.b + 1
            else:
                y = _shape((x - 1) / self.b + 1, spec.eps)
        if not self.exact:
            y = min(1.0, max(0.0, y))
        return y

    def branch_derivative(self, i: int, x: float) -> float:
        spec, width = (self.branch0, self.a) if i == 0 else (self.branch1, self.b)
        if spec.family == AFFINE:
            return 1 / width
        t = x / width if i == 0 else (x - 1) / width + 1
        return _shape_prime(t, spec.eps) / width

    def digit(self, x: Number, variant: str = LEFT_CLOSED) -> int:
        if variant == LEFT_CLOSED:
            return 0 if x <= self.rho else 1
        if variant == RIGHT_CLOSED:
            return 0 if x < self.rho else 1
        raise ValueError(f"unknown variant {variant!r}")

    def branch_vec(self, i: int, x: np.ndarray) -> np.ndarray:
        """Vectorized float evaluation of ``W_i``."""
        a, b = float(self.a), float(self.b)
        spec = self.branch0 if i == 0 else self.branch1
        t = x / a if i == 0 else (x - 1.0) / b + 1.0
        if spec.family == SINE:
            t = t + spec.eps * np.sin(TWO_PI * t) / TWO_PI
        return np.clip(t, 0.0, 1.0)


@dataclass
class ValidationReport:
    endpoint_residuals: dict
    min_derivative: float
    d: float
    grid_points: int
    passed: bool

    def to_json(self) -> dict:
        return {"endpoint_residuals": self.endpoint_residuals,
                "min_derivative": self.min_derivative, "d": self.d,
                "grid_points": self.grid_points, "passed": self.passed}


def validate(system: MapSystem, grid_points: int = 100) -> ValidationReport:
    """Check endpoint conditions and the sampled derivative bound.

    Structural errors (``a + b <= 1``, ``rho`` out of range, sine amplitude
    too large) are raised by :class:`MapSystem` itself, so a system that
    reaches this function is already admissible in shape.
    """
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    a, b = system.a, system.b
    residuals = {
        "W0(0)": abs(float(system.branch(0, system.num(0)))),
        "W0(a)": abs(float(system.branch(0, a)) - 1.0),
        "W1(1-b)": abs(float(system.branch(1, 1 - b))),
        "W1(1)": abs(float(system.branch(1, system.num(1))) - 1.0),
    }
    lows = []
    for i, (lo, hi) in enumerate(((0.0, float(a)), (1.0 - float(b), 1.0))):
        grid = np.linspace(lo, hi, grid_points)
        lows.append(min(system.branch_derivative(i, float(x)) for x in grid))
    min_der = min(lows)
    d = float(system.d)
    tol = 0.0 if system.exact else 1e-12
    passed = max(residuals.values()) <= tol and min_der >= d * (1 - 1e-12) and d > 1
    return ValidationReport(residuals, float(min_der), d, grid_points, passed)


def eval_W(system: MapSystem, x: Number, variant: str = LEFT_CLOSED) -> tuple[Number, int]:
    """Apply ``W`` (left_closed) or ``W+`` (right_closed); return ``(W(x), digit)``."""
    if not 0 <= x <= 1:
        raise ValueError(f"x={x} outside [0, 1]")
    i = system.digit(x, variant)
    return system.branch(i, x), i


def eval_branch_inverse(system: MapSystem, i: int, y: Number) -> Number:
    """Return the unique ``x`` in the domain of ``W_i`` with ``W_i(x) = y``."""
    if not 0 <= y <= 1:
        raise ValueError(f"y={y} outside [0, 1]")
    spec = system.branch0 if i == 0 else system.branch1
    if spec.family == AFFINE:
        if i == 0:
            return system.a * y
        return 1 + system.b * (y - 1)
    # solve g(t) = y on [0, 1], then map t back to the branch domain
    y = float(y)
    eps = spec.eps
    lo, hi = 0.0, 1.0
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if _shape(mid, eps) < y:
            lo = mid
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    for _ in range(50):
        step = (_shape(t, eps) - y) / _shape_prime(t, eps)
        t_new = min(hi, max(lo, t - step))
        if abs(t_new - t) <= INVERSE_TOL * 1e-2:
            t = t_new
            break
        t = t_new
    if i == 0:
        return float(system.a) * t
    return 1.0 + float(system.b) * (t - 1.0)


def preimages(system: MapSystem, y: Number) -> list[Number]:
    """``W^{-1}({y})`` under the left_closed convention, sorted ascending."""
    out = []
    x0 = eval_branch_inverse(system, 0, y)
    if x0 <= system.rho:
        out.append(x0)
    x1 = eval_branch_inverse(system, 1, y)
    if x1 > system.rho:
        out.append(x1)
    return out
