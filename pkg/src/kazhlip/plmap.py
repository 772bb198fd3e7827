"""Exact algebra of piecewise-linear, orientation-preserving homeomorphisms
of the real line with slope-1 translation tails.

Every map is stored as a strictly increasing node list ((x_0, y_0), ...,
(x_k, y_k)) of exact rationals. Between consecutive nodes the map
interpolates linearly; outside [x_0, x_k] it translates: f(x) = x + (y_0 -
x_0) on the left and f(x) = x + (y_k - x_k) on the right. Translation
tails make bounded displacement structural, and the class is closed under
composition and inversion, so it forms a group under exact rational
arithmetic.

Canonical form: nodes whose left and right slopes agree are removed; a
pure translation by c collapses to the single node (0, c) and the
identity to (0, 0). Canonical node tuples are the equality oracle.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from .errors import DomainError, SchemaError
from .intervals import IntervalUnion

Node = Tuple[Fraction, Fraction]


def parse_rational(text, path: str = "") -> Fraction:
    """Parse an exact rational from a "p/q" or integer string (ints and
    floats appearing in JSON are accepted when exact)."""
    if isinstance(text, bool):
        raise SchemaError("expected a rational, got a boolean", path)
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"invalid rational {text!r}: {exc}", path) from exc
    if isinstance(text, float):
        return Fraction(text).limit_denominator(10**12)
    raise SchemaError(f"expected a rational string, got {type(text).__name__}", path)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _canonical_nodes(nodes: Sequence[Node]) -> Tuple[Node, ...]:
    if not nodes:
        raise DomainError("a PL map needs at least one node")
    for (x0, y0), (x1, y1) in zip(nodes, nodes[1:]):
        if x1 <= x0:
            raise DomainError(f"x-coordinates not strictly increasing at x={x1}")
        if y1 <= y0:
            raise DomainError(f"y-coordinates not strictly increasing at y={y1}")

    def slope_left(i: int) -> Fraction:
        if i == 0:
            return Fraction(1)
        (xa, ya), (xb, yb) = nodes[i - 1], nodes[i]
        return Fraction(yb - ya, xb - xa)

    def slope_right(i: int) -> Fraction:
        if i == len(nodes) - 1:
            return Fraction(1)
        (xa, ya), (xb, yb) = nodes[i], nodes[i + 1]
        return Fraction(yb - ya, xb - xa)

    # Removing a collinear node never changes its neighbours' slopes, so a
    # single pass suffices.
    kept = tuple(
        nodes[i] for i in range(len(nodes)) if slope_left(i) != slope_right(i)
    )
    if kept:
        return kept
    # Everything collapsed: the map is a pure translation.
    x0, y0 = nodes[0]
    c = y0 - x0
    return ((Fraction(0), c),)


@dataclass(frozen=True)
class PLHomeo:
    """An element of the bounded-displacement PL homeomorphism group."""

    nodes: Tuple[Node, ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", _canonical_nodes(tuple(self.nodes)))

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_pairs(pairs: Iterable) -> "PLHomeo":
        nodes = tuple((Fraction(x), Fraction(y)) for x, y in pairs)
        return PLHomeo(nodes)

    @staticmethod
    def identity() -> "PLHomeo":
        return PLHomeo(((Fraction(0), Fraction(0)),))

    @staticmethod
    def translation(c) -> "PLHomeo":
        return PLHomeo(((Fraction(0), Fraction(c)),))

    # -- basic queries -------------------------------------------------

    @property
    def is_identity(self) -> bool:
        return self.nodes == ((Fraction(0), Fraction(0)),)

    @property
    def left_offset(self) -> Fraction:
        x0, y0 = self.nodes[0]
        return y0 - x0

    @property
    def right_offset(self) -> Fraction:
        xk, yk = self.nodes[-1]
        return yk - xk

    def breakpoints(self) -> Tuple[Fraction, ...]:
        return tuple(x for x, _ in self.nodes)

    def interior_slopes(self) -> Tuple[Fraction, ...]:
        return tuple(
            Fraction(y1 - y0, x1 - x0)
            for (x0, y0), (x1, y1) in zip(self.nodes, self.nodes[1:])
        )

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        xs = [n[0] for n in self.nodes]
        if x <= xs[0]:
            return x + self.left_offset
        if x >= xs[-1]:
            return x + self.right_offset
        i = bisect_right(xs, x) - 1
        (x0, y0), (x1, y1) = self.nodes[i], self.nodes[i + 1]
        return y0 + (x - x0) * (y1 - y0) / (x1 - x0)

    def __call__(self, x) -> Fraction:
        return self.evaluate(x)

    def slope_at(self, x) -> Fraction:
        """Slope of the (a.e.) derivative at x; at a breakpoint, the
        right-hand slope."""
        x = Fraction(x)
        xs = [n[0] for n in self.nodes]
        if x < xs[0] or x >= xs[-1]:
            return Fraction(1)
        i = bisect_right(xs, x) - 1
        (x0, y0), (x1, y1) = self.nodes[i], self.nodes[i + 1]
        return Fraction(y1 - y0, x1 - x0)

    # -- group structure -------------------------------------------------

    def invert(self) -> "PLHomeo":
        return PLHomeo(tuple((y, x) for x, y in self.nodes))

    def compose(self, other: "PLHomeo") -> "PLHomeo":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        inv = other.invert()
        xs = {x for x, _ in other.nodes}
        xs.update(inv.evaluate(x) for x, _ in self.nodes)
        nodes = tuple((x, self.evaluate(other.evaluate(x))) for x in sorted(xs))
        return PLHomeo(nodes)

    def __mul__(self, other: "PLHomeo") -> "PLHomeo":
        return self.compose(other)

    def conjugate_by_homothety(self, alpha) -> "PLHomeo":
        """phi_alpha^{-1} o f o phi_alpha with phi_alpha(x) = alpha*x.

        Preserves the Lipschitz constant and divides the displacement by
        alpha; alpha must be positive to keep orientation."""
        alpha = Fraction(alpha)
        if alpha <= 0:
            raise DomainError(f"homothety ratio must be positive, got {alpha}")
        return PLHomeo(tuple((x / alpha, y / alpha) for x, y in self.nodes))

    # -- metric data -------------------------------------------------

    def lip_constant(self) -> Fraction:
        """max over a.e. slopes of f and f^{-1} (tails contribute 1)."""
        best = Fraction(1)
        for s in self.interior_slopes():
            best = max(best, s, 1 / s)
        return best

    def displacement(self) -> Fraction:
        """sup |f(x) - x|; attained at a node or on a tail."""
        return max(abs(y - x) for x, y in self.nodes)

    def fixed_set(self) -> IntervalUnion:
        """Exact solution set of f(x) = x as a union of closed intervals."""
        if self.is_identity:
            return IntervalUnion.whole_line()
        parts = []
        nodes = self.nodes
        if self.left_offset == 0:
            parts.append((None, nodes[0][0]))
        if self.right_offset == 0:
            parts.append((nodes[-1][0], None))
        for (x0, y0), (x1, y1) in zip(nodes, nodes[1:]):
            d0, d1 = y0 - x0, y1 - x1
            if d0 == 0 and d1 == 0:
                parts.append((x0, x1))
            elif d0 == 0:
                parts.append((x0, x0))
            elif d1 == 0:
                parts.append((x1, x1))
            elif (d0 < 0) != (d1 < 0):
                root = x0 + (x1 - x0) * d0 / (d0 - d1)
                parts.append((root, root))
        return IntervalUnion.from_intervals(parts)

    # -- serialization -------------------------------------------------

    def to_obj(self) -> dict:
        return {
            "nodes": [[format_rational(x), format_rational(y)] for x, y in self.nodes]
        }

    @staticmethod
    def from_obj(obj, path: str = "plhomeo") -> "PLHomeo":
        if not isinstance(obj, dict) or "nodes" not in obj:
            raise SchemaError("expected an object with a 'nodes' field", path)
        raw = obj["nodes"]
        if not isinstance(raw, list) or not raw:
            raise SchemaError("'nodes' must be a nonempty list", f"{path}.nodes")
        nodes = []
        for i, pair in enumerate(raw):
            if not isinstance(pair, list) or len(pair) != 2:
                raise SchemaError("node must be an [x, y] pair", f"{path}.nodes[{i}]")
            x = parse_rational(pair[0], f"{path}.nodes[{i}][0]")
            y = parse_rational(pair[1], f"{path}.nodes[{i}][1]")
            nodes.append((x, y))
        try:
            return PLHomeo(tuple(nodes))
        except DomainError as exc:
            raise SchemaError(str(exc), f"{path}.nodes") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_obj())

    @staticmethod
    def from_json(text: str) -> "PLHomeo":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}", "plhomeo") from exc
        return PLHomeo.from_obj(obj)
