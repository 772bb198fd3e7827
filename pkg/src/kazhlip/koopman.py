"""Step functions as L^p test vectors and the Koopman action of PL maps.

A step function has exact rational breakpoints and high-precision real
values; it is zero outside its support. All integrals are evaluated over
exact common refinements of breakpoints, so the only numerical error is
value rounding at the working precision (see :mod:`kazhlip.precision`).

The action of a PL homeomorphism g on L^p is
    (pi(g) xi)(x) = xi(g^{-1}(x)) * (Dg^{-1}(x))^{1/p},
an isometry of L^p for every p >= 1. The Mazur map
    M_{q,p}(xi) = sign(xi) |xi|^{q/p}
carries the unit sphere of L^q onto the unit sphere of L^p.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

import mpmath
from mpmath import mpf

from .errors import DomainError, SchemaError
from .plmap import PLHomeo, format_rational, parse_rational
from .precision import real_str, to_real


def check_exponent(p) -> mpf:
    p = to_real(p)
    if not mpmath.isfinite(p) or p < 1:
        raise DomainError(f"Lebesgue exponent must satisfy p >= 1, got {p}")
    return p


@dataclass(frozen=True)
class StepFunction:
    """Compactly supported piecewise-constant function: value values[i] on
    [breakpoints[i], breakpoints[i+1]), zero outside."""

    breakpoints: Tuple[Fraction, ...]
    values: Tuple[mpf, ...]

    def __post_init__(self):
        bps = tuple(Fraction(b) for b in self.breakpoints)
        vals = tuple(mpf(v) for v in self.values)
        if len(bps) < 2:
            raise DomainError("a step function needs at least two breakpoints")
        if len(vals) != len(bps) - 1:
            raise DomainError(
                f"{len(bps)} breakpoints require {len(bps) - 1} values, got {len(vals)}"
            )
        for a, b in zip(bps, bps[1:]):
            if b <= a:
                raise DomainError(f"breakpoints not strictly increasing at {b}")
        for v in vals:
            if not mpmath.isfinite(v):
                raise DomainError("step function values must be finite")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)

    @staticmethod
    def indicator(a, b, value=1) -> "StepFunction":
        return StepFunction((Fraction(a), Fraction(b)), (mpf(value),))

    @property
    def support(self) -> Tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    def value_at(self, x: Fraction) -> mpf:
        """Value on the piece containing x (right-continuous convention)."""
        if x < self.breakpoints[0] or x >= self.breakpoints[-1]:
            return mpf(0)
        i = bisect_right(self.breakpoints, x) - 1
        return self.values[i]

    def scale(self, c) -> "StepFunction":
        c = to_real(c)
        return StepFunction(self.breakpoints, tuple(v * c for v in self.values))

    def to_obj(self) -> dict:
        return {
            "breakpoints": [format_rational(b) for b in self.breakpoints],
            "values": [real_str(v) for v in self.values],
        }

    @staticmethod
    def from_obj(obj, path: str = "step_function") -> "StepFunction":
        if not isinstance(obj, dict):
            raise SchemaError("expected an object", path)
        bps_raw = obj.get("breakpoints")
        vals_raw = obj.get("values")
        if not isinstance(bps_raw, list) or not isinstance(vals_raw, list):
            raise SchemaError("'breakpoints' and 'values' must be lists", path)
        bps = tuple(
            parse_rational(b, f"{path}.breakpoints[{i}]") for i, b in enumerate(bps_raw)
        )
        try:
            vals = tuple(mpf(str(v)) for v in vals_raw)
        except (ValueError, TypeError) as exc:
            raise SchemaError(f"invalid value: {exc}", f"{path}.values") from exc
        try:
            return StepFunction(bps, vals)
        except DomainError as exc:
            raise SchemaError(str(exc), path) from exc

    @staticmethod
    def from_json(text: str) -> "StepFunction":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}", "step_function") from exc
        return StepFunction.from_obj(obj)


def refine(xi: StepFunction, eta: StepFunction):
    """Common refinement over the union of supports: a sorted breakpoint
    list plus the per-piece values of both functions."""
    breaks = sorted(set(xi.breakpoints) | set(eta.breakpoints))
    pieces = []
    for a, b in zip(breaks, breaks[1:]):
        pieces.append((a, b, xi.value_at(a), eta.value_at(a)))
    return pieces


def subtract(xi: StepFunction, eta: StepFunction) -> StepFunction:
    pieces = refine(xi, eta)
    return StepFunction(
        tuple([pieces[0][0]] + [b for _, b, _, _ in pieces]),
        tuple(u - v for _, _, u, v in pieces),
    )


def lp_norm(xi: StepFunction, p) -> mpf:
    """(sum |v_i|^p * (b_{i+1} - b_i))^{1/p} with exact piece lengths."""
    p = check_exponent(p)
    total = mpf(0)
    for (a, b), v in zip(zip(xi.breakpoints, xi.breakpoints[1:]), xi.values):
        if v != 0:
            total += abs(v) ** p * to_real(b - a)
    return total ** (1 / p)


def inner_product(xi: StepFunction, eta: StepFunction) -> mpf:
    """Exact piecewise integral of the product over the common refinement."""
    total = mpf(0)
    for a, b, u, v in refine(xi, eta):
        if u != 0 and v != 0:
            total += u * v * to_real(b - a)
    return total


def koopman_apply(g: PLHomeo, xi: StepFunction, p) -> StepFunction:
    """pi(g) xi with exact image breakpoints and per-piece values
    v * s^{1/p}, s the constant slope of g^{-1} on the piece."""
    p = check_exponent(p)
    ginv = g.invert()
    lo, hi = g.evaluate(xi.breakpoints[0]), g.evaluate(xi.breakpoints[-1])
    breaks = {g.evaluate(b) for b in xi.breakpoints}
    if len(g.nodes) > 1:  # a pure translation has no slope changes
        breaks.update(y for _, y in g.nodes if lo < y < hi)
    breaks = sorted(breaks)
    values = []
    for a, b in zip(breaks, breaks[1:]):
        mid = (a + b) / 2
        s = ginv.slope_at(mid)  # exact rational, constant on (a, b)
        v = xi.value_at(ginv.evaluate(mid))
        values.append(v * to_real(s) ** (1 / p) if v != 0 else mpf(0))
    return StepFunction(tuple(breaks), tuple(values))


def koopman_distortion(g: PLHomeo, xi: StepFunction, p) -> mpf:
    """||pi(g) xi - xi||_p over the common breakpoint refinement."""
    return lp_norm(subtract(koopman_apply(g, xi, p), xi), p)


def window_vector(n, p) -> StepFunction:
    """The unit vector (2n)^{-1/p} 1_{[-n, n]} in L^p."""
    n = Fraction(n)
    if n <= 0:
        raise DomainError(f"window radius must be positive, got {n}")
    p = check_exponent(p)
    value = to_real(2 * n) ** (-1 / p)
    return StepFunction((-n, n), (value,))


def mazur_map(xi: StepFunction, q, p) -> StepFunction:
    """Per-piece signed power v -> sign(v) |v|^{q/p}; maps the unit sphere
    of L^q onto the unit sphere of L^p."""
    q = check_exponent(q)
    p = check_exponent(p)
    r = q / p
    out = []
    for v in xi.values:
        if v == 0:
            out.append(mpf(0))
        else:
            out.append(mpmath.sign(v) * abs(v) ** r)
    return StepFunction(xi.breakpoints, tuple(out))


def mazur_upper_ratio(xi: StepFunction, eta: StepFunction, q, p) -> mpf:
    """Empirical ratio ||M xi - M eta||_p / ||xi - eta||_q^{q/p} for study;
    the constant in the upper Hoelder bound is not asserted anywhere."""
    q = check_exponent(q)
    p = check_exponent(p)
    denom = lp_norm(subtract(xi, eta), q) ** (q / p)
    if denom == 0:
        raise DomainError("the two step functions are identical")
    num = lp_norm(subtract(mazur_map(xi, q, p), mazur_map(eta, q, p)), p)
    return num / denom


def normalize(xi: StepFunction, p) -> StepFunction:
    """Rescale to unit L^p norm."""
    norm = lp_norm(xi, p)
    if norm == 0:
        raise DomainError("cannot normalize the zero function")
    return xi.scale(1 / norm)
