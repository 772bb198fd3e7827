"""Finite unions of closed rational intervals and rays on the real line.

Used to represent fixed-point sets exactly. Endpoints are Fractions;
``None`` stands for -infinity on the left and +infinity on the right.
A degenerate interval (a, a) is a single point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple


def _le(a: Optional[Fraction], b: Optional[Fraction], *, left_a=False, left_b=False) -> bool:
    # None means -inf when it is a left endpoint, +inf when a right endpoint.
    av = float("-inf") if (a is None and left_a) else (float("inf") if a is None else a)
    bv = float("-inf") if (b is None and left_b) else (float("inf") if b is None else b)
    return av <= bv


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted, disjoint, non-adjacent closed intervals."""

    components: Tuple[Tuple[Optional[Fraction], Optional[Fraction]], ...]

    @staticmethod
    def empty() -> "IntervalUnion":
        return IntervalUnion(())

    @staticmethod
    def whole_line() -> "IntervalUnion":
        return IntervalUnion(((None, None),))

    @staticmethod
    def point(x: Fraction) -> "IntervalUnion":
        return IntervalUnion(((x, x),))

    @staticmethod
    def from_intervals(parts) -> "IntervalUnion":
        """Normalize an arbitrary list of closed intervals: sort and merge
        overlapping or touching components."""
        parts = [(lo, hi) for lo, hi in parts]
        for lo, hi in parts:
            if lo is not None and hi is not None and lo > hi:
                raise ValueError(f"interval [{lo}, {hi}] is empty")

        def key(part):
            lo, _ = part
            return (0, Fraction(0)) if lo is None else (1, lo)

        parts.sort(key=key)
        merged: list = []
        for lo, hi in parts:
            if merged:
                plo, phi = merged[-1]
                # closed intervals touch when endpoints meet
                touches = phi is None or lo is None or lo <= phi
                if touches:
                    new_hi = None if (phi is None or hi is None) else max(phi, hi)
                    merged[-1] = (plo, new_hi)
                    continue
            merged.append((lo, hi))
        return IntervalUnion(tuple(merged))

    @property
    def is_empty(self) -> bool:
        return not self.components

    def contains(self, x: Fraction) -> bool:
        for lo, hi in self.components:
            if (lo is None or lo <= x) and (hi is None or x <= hi):
                return True
        return False

    def intersect(self, other: "IntervalUnion") -> "IntervalUnion":
        out = []
        for alo, ahi in self.components:
            for blo, bhi in other.components:
                if alo is None:
                    lo = blo
                elif blo is None:
                    lo = alo
                else:
                    lo = max(alo, blo)
                if ahi is None:
                    hi = bhi
                elif bhi is None:
                    hi = ahi
                else:
                    hi = min(ahi, bhi)
                nonempty = lo is None or hi is None or lo <= hi
                if nonempty:
                    out.append((lo, hi))
        return IntervalUnion.from_intervals(out)

    def __str__(self) -> str:
        if self.is_empty:
            return "empty"
        parts = []
        for lo, hi in self.components:
            if lo is None and hi is None:
                parts.append("(-inf, +inf)")
            elif lo is None:
                parts.append(f"(-inf, {hi}]")
            elif hi is None:
                parts.append(f"[{lo}, +inf)")
            elif lo == hi:
                parts.append(f"{{{lo}}}")
            else:
                parts.append(f"[{lo}, {hi}]")
        return " U ".join(parts)
