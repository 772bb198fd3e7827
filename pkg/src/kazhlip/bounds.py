"""Upper bounds for Kazhdan constants of PL actions on the line.

The two bound functions link the largest generator Lipschitz constant L to
the Kazhdan constant of the generating set:

    phi(t)     = max{ e^{2t}, 4 (2 - t^2)^{-2} }        on [0, sqrt 2)
    phi_inv(t) = min{ (1/2) log t, sqrt2 (1 - t^{-1/2})^{1/2} }  on [1, oo)

The window-vector estimators compute, for a generating set S acting
without global fixed points, the distortions d_{p,n} = max_{g in S}
||pi(g) xi_n - xi_n||_p of the unit windows xi_n = (2n)^{-1/p} 1_{[-n,n]},
and transfer each to a Kazhdan upper bound (p/2) d_{p,n}. Both the per-n
certified bounds and the analytic n -> oo limits are reported; the
headline bound is their minimum.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import mpmath
from mpmath import mpf

from .errors import DomainError
from .groupact import GeneratorSet, global_fixed_set
from .koopman import koopman_distortion, window_vector
from .precision import real_str, to_real

def kappa_max() -> mpf:
    return mpmath.sqrt(2)


def phi(t) -> mpf:
    """max{e^{2t}, 4(2 - t^2)^{-2}} on [0, sqrt 2)."""
    t = to_real(t)
    if t < 0 or t >= mpmath.sqrt(2):
        raise DomainError(f"phi is defined on [0, sqrt(2)), got {t}")
    return max(mpmath.e ** (2 * t), 4 / (2 - t * t) ** 2)


def phi_inv(t) -> mpf:
    """min{(1/2) log t, sqrt2 (1 - t^{-1/2})^{1/2}} on [1, oo)."""
    t = to_real(t)
    if t < 1:
        raise DomainError(f"phi_inv is defined on [1, oo), got {t}")
    return min(mpmath.log(t) / 2, mpmath.sqrt(2) * mpmath.sqrt(1 - t ** mpf("-0.5")))


def phi_crossover() -> mpf:
    """The unique t* in (0, sqrt 2) where the two phi branches cross,
    located by bisection on the monotone gap 2t - log4 + 2 log(2 - t^2)."""

    def gap(t):
        return 2 * t - mpmath.log(4) + 2 * mpmath.log(2 - t * t)

    lo, hi = mpf(1), mpf("1.3")
    if not (gap(lo) > 0 and gap(hi) < 0):
        raise DomainError("crossover bracket [1, 1.3] invalid at this precision")
    while hi - lo > mpf("1e-12"):
        mid = (lo + hi) / 2
        if gap(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def kappa_transfer(p, distortion) -> mpf:
    """Kazhdan upper bound (p/2) * d implied by one unit test vector whose
    max distortion over S is d, valid for p >= 2."""
    p = to_real(p)
    d = to_real(distortion)
    if p < 2:
        raise DomainError(f"the L^p transfer needs p >= 2, got {p}")
    if d < 0:
        raise DomainError(f"distortion must be >= 0, got {d}")
    return p / 2 * d


def log_power_bound_check(x, p, L) -> Tuple[bool, mpf]:
    """Check |x^{1/p} - 1| <= log(L)/(p - log(L)) for L > 1, x in [1/L, L],
    p > log L; returns (ok, slack) with slack = bound - |x^{1/p} - 1|."""
    x, p, L = to_real(x), to_real(p), to_real(L)
    if L <= 1:
        raise DomainError(f"need L > 1, got {L}")
    if x < 1 / L or x > L:
        raise DomainError(f"need x in [1/L, L], got x={x}, L={L}")
    logL = mpmath.log(L)
    if p <= logL:
        raise DomainError(f"need p > log(L) = {logL}, got p={p}")
    bound = logL / (p - logL)
    slack = bound - abs(x ** (1 / p) - 1)
    return slack >= 0, slack


def corollary_bound(set_size: int) -> mpf:
    """Kazhdan upper bound phi_inv(|S|) for a symmetric generating set of
    an orderable group (the generators then act with Lip <= |S|)."""
    if set_size < 1:
        raise DomainError(f"set size must be >= 1, got {set_size}")
    return phi_inv(set_size)


def theorem_check(S: GeneratorSet, kappa_candidate) -> bool:
    """Whether L = max Lip(g) >= phi(kappa_candidate), i.e. whether the
    candidate Kazhdan constant is consistent with the action."""
    L = to_real(S.max_lip())
    return L >= phi(kappa_candidate)


# ---------------------------------------------------------------------------
# Window-vector estimator sweeps


@dataclass(frozen=True)
class SweepCell:
    """One (p, n) cell of an estimator sweep."""

    p: mpf
    n: Fraction
    distortion: mpf            # d_{p,n} = max_{g in S} ||pi(g) xi_n - xi_n||_p
    kappa_upper: mpf           # (p/2) * d_{p,n}
    proof_bound: Optional[mpf]  # per-n certified bound from the proof inequality
    n_large_enough: bool       # n > M, so the proof's tail bookkeeping applies


@dataclass(frozen=True)
class EstimateFragment:
    p: mpf
    L: Fraction
    M: Fraction
    cells: Tuple[SweepCell, ...]
    empirical_min: mpf          # min over the sweep of kappa_upper
    analytic_bound: mpf         # n -> oo limit bound at this p
    hypothesis_ok: bool         # global fixed set empty


def _distortion_sweep(S: GeneratorSet, p, n_schedule) -> List[Tuple[Fraction, mpf]]:
    if not n_schedule:
        raise DomainError("empty n schedule")
    out = []
    for n in n_schedule:
        n = Fraction(n)
        if n <= 0:
            raise DomainError(f"schedule entries must be positive, got {n}")
        xi = window_vector(n, p)
        d = max(koopman_distortion(g, xi, p) for _, g in S.generators)
        out.append((n, d))
    return out


def estimate_p2(S: GeneratorSet, n_schedule: Sequence) -> EstimateFragment:
    """L^2 window estimator: per-n distortions d_n, the proof's per-n
    certified bound sqrt(2 - 2 ((n-M)/n) L^{-1/2}) for n > M, and the
    analytic limit sqrt2 (1 - L^{-1/2})^{1/2}."""
    L = S.max_lip()
    M = S.max_displacement()
    Lr = to_real(L)
    hypothesis_ok = global_fixed_set(S).is_empty
    cells = []
    for n, d in _distortion_sweep(S, 2, n_schedule):
        large = n > M
        proof = None
        if large:
            proof = mpmath.sqrt(2 - 2 * to_real(Fraction(n - M, n)) / mpmath.sqrt(Lr))
        cells.append(
            SweepCell(mpf(2), n, d, kappa_transfer(2, d), proof, large)
        )
    analytic = mpmath.sqrt(2) * mpmath.sqrt(1 - 1 / mpmath.sqrt(Lr))
    return EstimateFragment(
        p=mpf(2),
        L=L,
        M=M,
        cells=tuple(cells),
        empirical_min=min(c.kappa_upper for c in cells),
        analytic_bound=analytic,
        hypothesis_ok=hypothesis_ok,
    )


def estimate_lp(S: GeneratorSet, p, n_schedule: Sequence) -> EstimateFragment:
    """L^p window estimator for p > log L: per-n distortions transferred
    via (p/2) d, the proof's per-n bound on d^p, and the analytic per-p
    bound p log L / (2 (p - log L)) whose p -> oo limit is (1/2) log L."""
    L = S.max_lip()
    M = S.max_displacement()
    Lr = to_real(L)
    p = to_real(p)
    logL = mpmath.log(Lr)
    if p <= logL:
        raise DomainError(f"need p > log(L) = {logL}, got p={p}")
    if p < 2:
        raise DomainError(f"the L^p transfer needs p >= 2, got {p}")
    hypothesis_ok = global_fixed_set(S).is_empty
    cells = []
    for n, d in _distortion_sweep(S, p, n_schedule):
        large = n > M
        proof = None
        if large:
            nr, Mr = to_real(n), to_real(M)
            dp_bound = (
                4 * Mr * Lr / (2 * nr)
                + (nr + Mr) / nr * (logL / (p - logL)) ** p
            )
            proof = dp_bound ** (1 / p)
        cells.append(SweepCell(p, n, d, kappa_transfer(p, d), proof, large))
    analytic = p * logL / (2 * (p - logL)) if logL > 0 else mpf(0)
    return EstimateFragment(
        p=p,
        L=L,
        M=M,
        cells=tuple(cells),
        empirical_min=min(c.kappa_upper for c in cells),
        analytic_bound=analytic,
        hypothesis_ok=hypothesis_ok,
    )


def default_n_schedule(M: Fraction, kmax: int = 12) -> List[Fraction]:
    """Geometric schedule n = 2^k max(1, M), k = 0..kmax."""
    base = max(Fraction(1), Fraction(M))
    return [base * 2**k for k in range(kmax + 1)]


def default_p_list(L: Fraction) -> List[int]:
    logL = mpmath.log(to_real(L)) if L > 1 else mpf(0)
    return [p for p in (2, 4, 8, 16, 32, 64) if p > logL]


@dataclass(frozen=True)
class BoundReport:
    """All Kazhdan upper-bound data for one generating set."""

    group_name: str
    labels: Tuple[str, ...]
    per_generator: Tuple[Tuple[str, Fraction, Fraction], ...]  # (label, lip, disp)
    L: Fraction
    M: Fraction
    hypothesis_ok: bool
    sweep: Tuple[SweepCell, ...]
    lemma41_bound: mpf         # sqrt2 (1 - L^{-1/2})^{1/2}
    lemma43_bound: mpf         # (1/2) log L
    phi_inv_of_L: mpf          # min of the two
    headline: mpf              # min over sweep and analytic bounds
    flagged_cells: Tuple[SweepCell, ...] = field(default=())

    def label_hash(self) -> str:
        digest = hashlib.sha256("|".join(sorted(self.labels)).encode()).hexdigest()
        return digest[:12]

    def to_obj(self) -> dict:
        return {
            "group_name": self.group_name,
            "label_hash": self.label_hash(),
            "hypothesis_ok": self.hypothesis_ok,
            "per_generator": [
                {"label": lab, "lip": str(lip), "displacement": str(disp)}
                for lab, lip, disp in self.per_generator
            ],
            "L": str(self.L),
            "M": str(self.M),
            "lemma41_bound": real_str(self.lemma41_bound),
            "lemma43_bound": real_str(self.lemma43_bound),
            "phi_inv_of_L": real_str(self.phi_inv_of_L),
            "kappa_max": real_str(kappa_max()),
            "headline_kappa_upper": real_str(self.headline),
            "sweep": [
                {
                    "p": real_str(c.p),
                    "n": str(c.n),
                    "distortion": real_str(c.distortion),
                    "kappa_upper": real_str(c.kappa_upper),
                    "proof_bound": None if c.proof_bound is None else real_str(c.proof_bound),
                    "n_large_enough": c.n_large_enough,
                }
                for c in self.sweep
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2)

    def to_csv(self) -> str:
        """One row per sweep cell."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            [
                "group_name",
                "label_hash",
                "p",
                "n",
                "d",
                "kappa_upper",
                "lemma41_bound",
                "lemma43_bound",
                "phi_inv_of_L",
            ]
        )
        for c in self.sweep:
            writer.writerow(
                [
                    self.group_name,
                    self.label_hash(),
                    real_str(c.p),
                    str(c.n),
                    real_str(c.distortion),
                    real_str(c.kappa_upper),
                    real_str(self.lemma41_bound),
                    real_str(self.lemma43_bound),
                    real_str(self.phi_inv_of_L),
                ]
            )
        return buf.getvalue()


def bound_report(
    S: GeneratorSet,
    p_list: Optional[Sequence] = None,
    n_schedule: Optional[Sequence] = None,
) -> BoundReport:
    """Full estimator report: per-generator data, the (p, n) sweep, the
    analytic bounds, and the headline (minimum) certified upper bound."""
    L = S.max_lip()
    M = S.max_displacement()
    if n_schedule is None:
        n_schedule = default_n_schedule(M)
    if p_list is None:
        p_list = default_p_list(L)
    hypothesis_ok = global_fixed_set(S).is_empty

    sweep: List[SweepCell] = []
    for p in p_list:
        pr = to_real(p)
        if pr == 2:
            frag = estimate_p2(S, n_schedule)
        else:
            frag = estimate_lp(S, p, n_schedule)
        sweep.extend(frag.cells)

    Lr = to_real(L)
    lemma41 = mpmath.sqrt(2) * mpmath.sqrt(1 - 1 / mpmath.sqrt(Lr))
    lemma43 = mpmath.log(Lr) / 2
    phi_inv_L = min(lemma41, lemma43)
    candidates = [phi_inv_L] + [c.kappa_upper for c in sweep]
    headline = min(candidates)
    return BoundReport(
        group_name=S.name,
        labels=S.labels,
        per_generator=tuple(
            (lab, g.lip_constant(), g.displacement()) for lab, g in S.generators
        ),
        L=L,
        M=M,
        hypothesis_ok=hypothesis_ok,
        sweep=tuple(sweep),
        lemma41_bound=lemma41,
        lemma43_bound=lemma43,
        phi_inv_of_L=phi_inv_L,
        headline=headline,
        flagged_cells=tuple(c for c in sweep if not c.n_large_enough),
    )
