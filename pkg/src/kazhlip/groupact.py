"""Finitely generated subgroups of the PL model: words, Cayley balls,
global fixed points and orbit samples."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import DomainError, ResourceLimitError, SchemaError
from .intervals import IntervalUnion
from .plmap import PLHomeo

DEFAULT_BALL_CAP = 100_000

Letter = Tuple[str, int]  # (label, +1 or -1)


def reduce_letters(letters: Sequence[Letter]) -> Tuple[Letter, ...]:
    """Freely reduce: cancel adjacent (l, e)(l, -e) pairs."""
    out: List[Letter] = []
    for label, exp in letters:
        if exp not in (1, -1):
            raise DomainError(f"letter exponent must be +-1, got {exp}")
        if out and out[-1][0] == label and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((label, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: Tuple[Letter, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", reduce_letters(tuple(self.letters)))

    @staticmethod
    def parse(text: str) -> "Word":
        """Parse words like "a b^-1 a" or "a,b^-1" or "a*b".

        Labels are identifiers; ^-1 (or a trailing ') inverts."""
        letters: List[Letter] = []
        for tok in text.replace("*", " ").replace(",", " ").split():
            exp = 1
            if tok.endswith("^-1"):
                tok, exp = tok[:-3], -1
            elif tok.endswith("'"):
                tok, exp = tok[:-1], -1
            if not tok:
                raise SchemaError(f"empty label in word {text!r}", "word")
            letters.append((tok, exp))
        return Word(tuple(letters))

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(l if e == 1 else f"{l}^-1" for l, e in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def concat(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)


@dataclass(frozen=True)
class GeneratorSet:
    name: str
    generators: Tuple[Tuple[str, PLHomeo], ...]
    symmetric: bool = False

    def __post_init__(self):
        labels = [label for label, _ in self.generators]
        if not labels:
            raise DomainError("generator set must be nonempty")
        if len(set(labels)) != len(labels):
            raise DomainError("generator labels must be distinct")
        if self.symmetric:
            elems = {g.nodes for _, g in self.generators}
            for _, g in self.generators:
                if g.invert().nodes not in elems:
                    raise DomainError(
                        "symmetric flag set but the set is not closed under inversion"
                    )

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(label for label, _ in self.generators)

    def element(self, label: str) -> PLHomeo:
        for lab, g in self.generators:
            if lab == label:
                return g
        raise DomainError(f"unknown generator label {label!r}")

    def max_lip(self) -> Fraction:
        return max(g.lip_constant() for _, g in self.generators)

    def max_displacement(self) -> Fraction:
        return max(g.displacement() for _, g in self.generators)

    # -- serialization ---------------------------------------------------

    def to_obj(self) -> dict:
        return {
            "name": self.name,
            "symmetric": self.symmetric,
            "generators": [
                {"label": label, "map": g.to_obj()} for label, g in self.generators
            ],
        }

    @staticmethod
    def from_obj(obj, path: str = "generator_set") -> "GeneratorSet":
        if not isinstance(obj, dict):
            raise SchemaError("expected an object", path)
        gens_raw = obj.get("generators")
        if not isinstance(gens_raw, list) or not gens_raw:
            raise SchemaError("'generators' must be a nonempty list", f"{path}.generators")
        gens = []
        for i, g in enumerate(gens_raw):
            gpath = f"{path}.generators[{i}]"
            if not isinstance(g, dict) or "label" not in g or "map" not in g:
                raise SchemaError("expected {label, map}", gpath)
            if not isinstance(g["label"], str):
                raise SchemaError("'label' must be a string", f"{gpath}.label")
            gens.append((g["label"], PLHomeo.from_obj(g["map"], f"{gpath}.map")))
        try:
            return GeneratorSet(
                name=str(obj.get("name", "unnamed")),
                generators=tuple(gens),
                symmetric=bool(obj.get("symmetric", False)),
            )
        except DomainError as exc:
            raise SchemaError(str(exc), path) from exc

    @staticmethod
    def from_json(text: str) -> "GeneratorSet":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}", "generator_set") from exc
        return GeneratorSet.from_obj(obj)

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2)


def word_evaluate(w: Word, S: GeneratorSet) -> PLHomeo:
    """Exact product of generators in word order (leftmost acts last)."""
    acc = PLHomeo.identity()
    for label, exp in w.letters:
        g = S.element(label)
        if exp == -1:
            g = g.invert()
        acc = acc.compose(g)
    return acc


def ball(
    S: GeneratorSet, radius: int, cap: int = DEFAULT_BALL_CAP
) -> List[Tuple[PLHomeo, Word]]:
    """All products of at most `radius` generators/inverses, deduplicated by
    canonical form, each with a shortest representing word."""
    if radius < 0:
        raise DomainError(f"radius must be >= 0, got {radius}")
    steps: List[Tuple[Letter, PLHomeo]] = []
    for label, g in S.generators:
        steps.append(((label, 1), g))
        steps.append(((label, -1), g.invert()))

    seen: Dict[tuple, Tuple[PLHomeo, Word]] = {}
    ident = PLHomeo.identity()
    seen[ident.nodes] = (ident, Word(()))
    frontier = [seen[ident.nodes]]
    for _ in range(radius):
        nxt = []
        for elem, word in frontier:
            for letter, g in steps:
                new = elem.compose(g)
                if new.nodes in seen:
                    continue
                if len(seen) >= cap:
                    raise ResourceLimitError(
                        f"ball size exceeded the cap of {cap} elements"
                    )
                entry = (new, Word(word.letters + (letter,)))
                seen[new.nodes] = entry
                nxt.append(entry)
        frontier = nxt
    return sorted(seen.values(), key=lambda e: (len(e[1]), e[0].nodes))


def global_fixed_set(S: GeneratorSet) -> IntervalUnion:
    """Intersection of the generators' fixed sets. A point fixed by every
    generator is fixed by every word, so this is the whole group's fixed
    set; an empty result certifies the no-global-fixed-point hypothesis."""
    out = IntervalUnion.whole_line()
    for _, g in S.generators:
        out = out.intersect(g.fixed_set())
        if out.is_empty:
            break
    return out


@dataclass(frozen=True)
class OrbitSample:
    base: Fraction
    points: Tuple[Fraction, ...]
    minimum: Fraction = field(init=False)
    maximum: Fraction = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "minimum", min(self.points))
        object.__setattr__(self, "maximum", max(self.points))


def orbit_sample(
    S: GeneratorSet, x, radius: int, cap: int = DEFAULT_BALL_CAP
) -> OrbitSample:
    """{w . x : |w| <= radius} with extremes; diagnostic evidence of orbit
    unboundedness when the global fixed set is empty."""
    x = Fraction(x)
    pts = sorted({elem.evaluate(x) for elem, _ in ball(S, radius, cap)})
    return OrbitSample(base=x, points=tuple(pts))
