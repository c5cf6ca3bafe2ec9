"""Second-order truncated Taylor arithmetic (value, gradient, Hessian)."""

from __future__ import annotations

import math
from typing import Callable, Dict, Optional, Tuple, Union

import numpy as np

from parasol.config import GEOMETRY_CONFIG


class JetDomainError(ValueError):
    """Raised when an operation leaves its mathematical domain or produces NaN/Inf"""


Number = Union[int, float]


def _mirror(hessian: np.ndarray) -> np.ndarray:
    # exact symmetry: both triangles hold the same sum
    return 0.5 * (hessian + hessian.T)


class Jet2:
    """Scalar value packaged with its exact gradient and Hessian in n variables."""

    __slots__ = ("value", "gradient", "hessian")

    def __init__(self, value: float, gradient: np.ndarray, hessian: np.ndarray) -> None:
        value = float(value)
        gradient = np.asarray(gradient, dtype=float)
        hessian = np.asarray(hessian, dtype=float)
        n = gradient.shape[0]
        if gradient.ndim != 1 or hessian.shape != (n, n):
            raise ValueError(
                f"Inconsistent jet shapes: gradient={gradient.shape}, hessian={hessian.shape}"
            )
        hessian = _mirror(hessian)
        if not (
            math.isfinite(value)
            and np.isfinite(gradient).all()
            and np.isfinite(hessian).all()
        ):
            raise JetDomainError("Non-finite jet component (NaN or Inf)")
        self.value = value
        self.gradient = gradient
        self.hessian = hessian

    @classmethod
    def constant(cls, value: float, n: int) -> "Jet2":
        return cls(value, np.zeros(n), np.zeros((n, n)))

    @property
    def n(self) -> int:
        return self.gradient.shape[0]

    def _coerce(self, other: Union["Jet2", Number]) -> "Jet2":
        if isinstance(other, Jet2):
            if other.n != self.n:
                raise ValueError(f"Jet dimension mismatch: {self.n} vs {other.n}")
            return other
        return Jet2.constant(float(other), self.n)

    def __neg__(self) -> "Jet2":
        return Jet2(-self.value, -self.gradient, -self.hessian)

    def __pos__(self) -> "Jet2":
        return self

    def __add__(self, other: Union["Jet2", Number]) -> "Jet2":
        if not isinstance(other, Jet2):
            return Jet2(self.value + float(other), self.gradient, self.hessian)
        other = self._coerce(other)
        return Jet2(
            self.value + other.value,
            self.gradient + other.gradient,
            self.hessian + other.hessian,
        )

    def __radd__(self, other: Number) -> "Jet2":
        return Jet2(float(other) + self.value, self.gradient, self.hessian)

    def __sub__(self, other: Union["Jet2", Number]) -> "Jet2":
        if not isinstance(other, Jet2):
            return Jet2(self.value - float(other), self.gradient, self.hessian)
        other = self._coerce(other)
        return Jet2(
            self.value - other.value,
            self.gradient - other.gradient,
            self.hessian - other.hessian,
        )

    def __rsub__(self, other: Number) -> "Jet2":
        return Jet2(float(other) - self.value, -self.gradient, -self.hessian)

    def __mul__(self, other: Union["Jet2", Number]) -> "Jet2":
        if not isinstance(other, Jet2):
            s = float(other)
            return Jet2(self.value * s, self.gradient * s, self.hessian * s)
        other = self._coerce(other)
        ga, gb = self.gradient, other.gradient
        return Jet2(
            self.value * other.value,
            self.value * gb + other.value * ga,
            self.value * other.hessian
            + other.value * self.hessian
            + np.outer(ga, gb)
            + np.outer(gb, ga),
        )

    def __rmul__(self, other: Number) -> "Jet2":
        s = float(other)
        return Jet2(s * self.value, s * self.gradient, s * self.hessian)

    def __truediv__(self, other: Union["Jet2", Number]) -> "Jet2":
        other = self._coerce(other)
        if other.value == 0.0:
            raise JetDomainError("Division by a jet with zero value")
        quotient = self.value / other.value
        gradient = (self.gradient - quotient * other.gradient) / other.value
        hessian = (
            self.hessian
            - quotient * other.hessian
            - np.outer(gradient, other.gradient)
            - np.outer(other.gradient, gradient)
        ) / other.value
        return Jet2(quotient, gradient, hessian)

    def __rtruediv__(self, other: Number) -> "Jet2":
        return Jet2.constant(float(other), self.n) / self

    def __pow__(self, exponent: Union["Jet2", Number]) -> "Jet2":
        return power(self, exponent)

    def __rpow__(self, base: Number) -> "Jet2":
        return power(float(base), self)

    def __repr__(self) -> str:
        return (
            f"Jet2(value={self.value!r}, gradient={self.gradient.tolist()!r}, "
            f"hessian={self.hessian.tolist()!r})"
        )


Carrier = Union[Jet2, float]


def seed_jet(value: float, var_index: int | None, n: int) -> Jet2:
    """Constant seed (var_index None) or coordinate seed with unit gradient."""
    if n < 1:
        raise ValueError(f"Jet dimension must be positive, got n={n}")
    if var_index is None:
        return Jet2.constant(value, n)
    if not 0 <= var_index < n:
        raise ValueError(f"var_index={var_index} out of range for n={n}")
    gradient = np.zeros(n)
    gradient[var_index] = 1.0
    return Jet2(value, gradient, np.zeros((n, n)))


# name -> (f, f', f'') on the real value, plus a domain guard
def _tan_guard(v: float) -> None:
    if abs(math.cos(v)) <= GEOMETRY_CONFIG["tan_cos_guard"]:
        raise JetDomainError(f"tan undefined at {v!r} (cos vanishes)")


def _positive_guard(name: str) -> Callable[[float], None]:
    def guard(v: float) -> None:
        if not v > 0.0:
            raise JetDomainError(f"{name} requires a positive argument, got {v!r}")

    return guard


def _no_guard(v: float) -> None:
    return None


def _tanh_parts(v: float) -> Tuple[float, float, float]:
    t = math.tanh(v)
    return t, 1.0 - t * t, -2.0 * t * (1.0 - t * t)


def _sqrt_parts(v: float) -> Tuple[float, float, float]:
    s = math.sqrt(v)
    return s, 0.5 / s, -0.25 / (s * v)


def _tan_parts(v: float) -> Tuple[float, float, float]:
    t = math.tan(v)
    sec2 = 1.0 / (math.cos(v) ** 2)
    return t, sec2, 2.0 * t * sec2


ELEMENTARY: Dict[str, Tuple[Callable[[float], None], Callable[[float], Tuple[float, float, float]]]] = {
    "sin": (_no_guard, lambda v: (math.sin(v), math.cos(v), -math.sin(v))),
    "cos": (_no_guard, lambda v: (math.cos(v), -math.sin(v), -math.cos(v))),
    "tan": (_tan_guard, _tan_parts),
    "exp": (_no_guard, lambda v: (math.exp(v), math.exp(v), math.exp(v))),
    "log": (_positive_guard("log"), lambda v: (math.log(v), 1.0 / v, -1.0 / (v * v))),
    "sinh": (_no_guard, lambda v: (math.sinh(v), math.cosh(v), math.sinh(v))),
    "cosh": (_no_guard, lambda v: (math.cosh(v), math.sinh(v), math.cosh(v))),
    "tanh": (_no_guard, _tanh_parts),
    "sqrt": (_positive_guard("sqrt"), _sqrt_parts),
}

FUNCTION_NAMES = frozenset(ELEMENTARY)


def _real_function(fn: str, v: float) -> float:
    guard, _ = ELEMENTARY[fn]
    guard(v)
    try:
        result = getattr(math, fn)(v)
    except (OverflowError, ValueError) as exc:
        raise JetDomainError(f"{fn}({v!r}) failed: {exc}") from exc
    if not math.isfinite(result):
        raise JetDomainError(f"{fn}({v!r}) is not finite")
    return result


def jet_elementary(fn: str, a: Jet2) -> Jet2:
    """f(a) with gradient f'(v)·∇a and Hessian f'(v)·Ha + f''(v)·∇a∇aᵀ."""
    if fn not in ELEMENTARY:
        raise ValueError(f"Unknown elementary function: {fn}")
    guard, parts = ELEMENTARY[fn]
    guard(a.value)
    try:
        f0, f1, f2 = parts(a.value)
    except (OverflowError, ValueError, ZeroDivisionError) as exc:
        raise JetDomainError(f"{fn}({a.value!r}) failed: {exc}") from exc
    return Jet2(
        f0,
        f1 * a.gradient,
        f1 * a.hessian + f2 * np.outer(a.gradient, a.gradient),
    )


def elementary(fn: str, a: Carrier) -> Carrier:
    """Apply a grammar function to either carrier (plain float or Jet2)."""
    if isinstance(a, Jet2):
        return jet_elementary(fn, a)
    return _real_function(fn, float(a))


def integer_power(base: Carrier, k: int) -> Carrier:
    """Exponentiation by squaring, valid for negative bases; identical op sequence on both carriers."""
    if k == 0:
        return Jet2.constant(1.0, base.n) if isinstance(base, Jet2) else 1.0
    result: Optional[Carrier] = None
    square = base
    remaining = abs(k)
    while remaining:
        if remaining & 1:
            result = square if result is None else result * square
        remaining >>= 1
        if remaining:
            square = square * square
    if k < 0:
        if isinstance(result, Jet2):
            return 1.0 / result
        if result == 0.0:
            raise JetDomainError("Negative power of zero")
        return 1.0 / result
    return result


def power(base: Carrier, exponent: Carrier) -> Carrier:
    """base^exponent as exp(b·log a); constant integer exponents go through integer_power instead."""
    base_value = base.value if isinstance(base, Jet2) else float(base)
    if not base_value > 0.0:
        raise JetDomainError(
            f"Power with a non-constant or non-integer exponent requires a positive base, got {base_value!r}"
        )
    return elementary("exp", exponent * elementary("log", base))


def _check_finite_real(x: float) -> float:
    if not math.isfinite(x):
        raise JetDomainError(f"Non-finite result {x!r}")
    return x


def jet_arith(op: str, a: Carrier, b: Carrier) -> Carrier:
    """Binary arithmetic on jets and reals, with the grammar's domain rules."""
    if op == "add":
        result = a + b
    elif op == "sub":
        result = a - b
    elif op == "mul":
        result = a * b
    elif op == "div":
        b_value = b.value if isinstance(b, Jet2) else float(b)
        if b_value == 0.0:
            raise JetDomainError("Division by zero")
        result = a / b
    elif op == "pow":
        result = power(a, b)
    else:
        raise ValueError(f"Unknown jet operation: {op}")
    if isinstance(result, Jet2):
        return result
    return _check_finite_real(float(result))
