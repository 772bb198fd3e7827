"""Finite-stage diagnostics for sequences of actions whose Lipschitz
constants tend to 1.

A sequence of generator sets over a fixed label alphabet models a sequence
of actions. Each stage is normalized by a homothety so its maximal
displacement is exactly 1 (Lipschitz constants are unchanged). When the
stage maps converge with Lip -> 1, the per-word values at a base point
converge to translation numbers, and the word -> translation-number map
becomes additive; the diagnostic reports the per-stage values, Cauchy-type
convergence evidence, and exact additivity defects with their certified
bounds (Lip - 1) * |translation of the right factor|.

The ultralimit of the underlying argument is not computable; a
non-convergent input is reported as such rather than forced to a limit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DomainError, SchemaError
from .groupact import GeneratorSet, Word, word_evaluate

DEFAULT_CAUCHY_TOL = 1e-6
LIP_TO_ONE_TOL = Fraction(1, 100)


def normalize_stage(S: GeneratorSet) -> GeneratorSet:
    """Conjugate every generator by the homothety with ratio equal to the
    current maximal displacement, so the new maximal displacement is
    exactly 1. Idempotent; Lipschitz constants are preserved."""
    alpha = S.max_displacement()
    if alpha == 0:
        raise DomainError(
            "all generators are the identity; displacement normalization undefined"
        )
    if alpha == 1:
        return S
    return GeneratorSet(
        name=S.name,
        generators=tuple(
            (lab, g.conjugate_by_homothety(alpha)) for lab, g in S.generators
        ),
        symmetric=S.symmetric,
    )


@dataclass(frozen=True)
class ActionSequence:
    labels: Tuple[str, ...]
    stages: Tuple[GeneratorSet, ...]

    def __post_init__(self):
        if not self.stages:
            raise DomainError("an action sequence needs at least one stage")
        for i, stage in enumerate(self.stages):
            if tuple(stage.labels) != tuple(self.labels):
                raise DomainError(
                    f"stage {i} has labels {stage.labels}, expected {self.labels}"
                )

    def to_obj(self) -> dict:
        return {
            "labels": list(self.labels),
            "stages": [s.to_obj() for s in self.stages],
        }

    @staticmethod
    def from_obj(obj, path: str = "action_sequence") -> "ActionSequence":
        if not isinstance(obj, dict):
            raise SchemaError("expected an object", path)
        labels = obj.get("labels")
        stages_raw = obj.get("stages")
        if not isinstance(labels, list) or not all(isinstance(l, str) for l in labels):
            raise SchemaError("'labels' must be a list of strings", f"{path}.labels")
        if not isinstance(stages_raw, list) or not stages_raw:
            raise SchemaError("'stages' must be a nonempty list", f"{path}.stages")
        stages = tuple(
            GeneratorSet.from_obj(s, f"{path}.stages[{i}]")
            for i, s in enumerate(stages_raw)
        )
        try:
            return ActionSequence(tuple(labels), stages)
        except DomainError as exc:
            raise SchemaError(str(exc), path) from exc

    @staticmethod
    def from_json(text: str) -> "ActionSequence":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}", "action_sequence") from exc
        return ActionSequence.from_obj(obj)


def lip_trend(seq: ActionSequence) -> Dict[str, List[Tuple[int, Fraction]]]:
    """Exact Lipschitz constant per stage per generator label, keyed by
    label; stage indices are 0-based positions in the sequence."""
    out: Dict[str, List[Tuple[int, Fraction]]] = {lab: [] for lab in seq.labels}
    for i, stage in enumerate(seq.stages):
        for lab, g in stage.generators:
            out[lab].append((i, g.lip_constant()))
    return out


def lip_trend_flags(seq: ActionSequence, tol: Fraction = LIP_TO_ONE_TOL) -> Dict[str, bool]:
    """Per label: True when the last-stage Lip is within tol of 1 (the
    hypothesis lim Lip = 1 is plausibly observed)."""
    trend = lip_trend(seq)
    return {lab: values[-1][1] - 1 <= tol for lab, values in trend.items()}


@dataclass(frozen=True)
class StageRecord:
    index: int
    max_lip: Fraction
    max_disp_after_normalization: Fraction
    attaining_label: str                      # generator attaining the max displacement
    word_values: Tuple[Tuple[str, Fraction], ...]  # theta_n(w)(base), exact


@dataclass(frozen=True)
class PairDefect:
    left: str
    right: str
    estimate_defect: Fraction       # |est(vw) - est(v) - est(w)| at the last stage
    per_stage: Tuple[Tuple[int, Fraction, Fraction], ...]  # (stage, defect, bound)


@dataclass(frozen=True)
class LimitDiagnostic:
    base: Fraction
    stages: Tuple[StageRecord, ...]
    estimates: Tuple[Tuple[str, Fraction], ...]   # last-stage translation estimates
    cauchy_ok: Tuple[Tuple[str, bool], ...]
    defects: Tuple[PairDefect, ...]
    lip_to_one: Dict[str, bool]
    verdict: str

    def to_obj(self) -> dict:
        return {
            "base": str(self.base),
            "verdict": self.verdict,
            "lip_to_one": dict(self.lip_to_one),
            "estimates": {w: float(v) for w, v in self.estimates},
            "cauchy_ok": dict(self.cauchy_ok),
            "stages": [
                {
                    "index": rec.index,
                    "max_lip": str(rec.max_lip),
                    "max_disp_after_normalization": str(
                        rec.max_disp_after_normalization
                    ),
                    "attaining_label": rec.attaining_label,
                    "word_values": {w: float(v) for w, v in rec.word_values},
                }
                for rec in self.stages
            ],
            "defects": [
                {
                    "left": d.left,
                    "right": d.right,
                    "estimate_defect": float(d.estimate_defect),
                    "per_stage": [
                        {"stage": i, "defect": float(df), "bound": float(bd)}
                        for i, df, bd in d.per_stage
                    ],
                }
                for d in self.defects
            ],
        }


def limit_translation_diagnostic(
    seq: ActionSequence,
    words: Sequence[Word],
    base=0,
    cauchy_tol: float = DEFAULT_CAUCHY_TOL,
) -> LimitDiagnostic:
    """Per-word translation estimates from the normalized stages, with
    convergence evidence and additivity defects for all ordered word pairs.

    Stage values theta_n(w)(base) - base are exact rationals. The sanity
    defect |theta_n(vw)(base) - theta_n(v)(theta_n(w)(base))| vanishes
    identically because composition is exact; what is reported per pair is
    the translation-additivity defect |T_n(vw) - T_n(v) - T_n(w)|, which is
    bounded by (Lip(theta_n(v)) - 1) * |T_n(w)| and tends to 0 exactly when
    the limit action is by translations."""
    base = Fraction(base)
    for w in words:
        for label, _ in w.letters:
            if label not in seq.labels:
                raise DomainError(f"word letter {label!r} not in alphabet {seq.labels}")

    normalized = tuple(normalize_stage(s) for s in seq.stages)

    pairs = [(v, w) for v in words for w in words]
    all_words: List[Word] = []
    seen = set()
    for w in list(words) + [v.concat(w) for v, w in pairs]:
        if str(w) not in seen:
            seen.add(str(w))
            all_words.append(w)

    # exact stage data
    stage_records: List[StageRecord] = []
    values: Dict[str, List[Fraction]] = {str(w): [] for w in all_words}
    stage_lips: List[Dict[str, Fraction]] = []
    for i, stage in enumerate(normalized):
        elems = {str(w): word_evaluate(w, stage) for w in all_words}
        word_vals = []
        for w in all_words:
            t = elems[str(w)].evaluate(base) - base
            values[str(w)].append(t)
            word_vals.append((str(w), t))
        disp = [(lab, g.displacement()) for lab, g in stage.generators]
        attaining = max(disp, key=lambda pair: pair[1])[0]
        lips = {str(Word(((lab, 1),))): g.lip_constant() for lab, g in stage.generators}
        # Lip of an arbitrary word's element, for the defect bound
        for w in all_words:
            lips[str(w)] = elems[str(w)].lip_constant()
        stage_lips.append(lips)
        stage_records.append(
            StageRecord(
                index=i,
                max_lip=stage.max_lip(),
                max_disp_after_normalization=stage.max_displacement(),
                attaining_label=attaining,
                word_values=tuple(word_vals),
            )
        )

    estimates = tuple((str(w), values[str(w)][-1]) for w in all_words)
    est = dict(estimates)

    cauchy = []
    for w in all_words:
        vals = values[str(w)]
        ok = len(vals) >= 2 and abs(float(vals[-1] - vals[-2])) <= cauchy_tol
        cauchy.append((str(w), ok))

    defects = []
    for v, w in pairs:
        vw = v.concat(w)
        per_stage = []
        for i in range(len(normalized)):
            tv, tw = values[str(v)][i], values[str(w)][i]
            tvw = values[str(vw)][i]
            defect = abs(tvw - tv - tw)
            bound = (stage_lips[i][str(v)] - 1) * abs(tw)
            per_stage.append((i, defect, bound))
        defects.append(
            PairDefect(
                left=str(v),
                right=str(w),
                estimate_defect=abs(est[str(vw)] - est[str(v)] - est[str(w)]),
                per_stage=tuple(per_stage),
            )
        )

    flags = lip_trend_flags(seq)
    problems = []
    if not all(flags.values()):
        bad = sorted(lab for lab, ok in flags.items() if not ok)
        problems.append(f"hypothesis lim Lip = 1 not observed for: {', '.join(bad)}")
    if not all(ok for _, ok in cauchy):
        bad = sorted(w for w, ok in cauchy if not ok)
        problems.append(f"no Cauchy convergence at tolerance {cauchy_tol} for: {', '.join(bad)}")
    verdict = "; ".join(problems) if problems else (
        "convergent; injectivity of the stage homomorphisms is assumed, not verified"
    )
    return LimitDiagnostic(
        base=base,
        stages=tuple(stage_records),
        estimates=estimates,
        cauchy_ok=tuple(cauchy),
        defects=tuple(defects),
        lip_to_one=flags,
        verdict=verdict,
    )
