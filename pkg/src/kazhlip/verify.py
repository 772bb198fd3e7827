"""Seeded property suites runnable from the CLI (`verify`) and reused by
the test suite as data generators.

Each suite returns a list of (property name, cases run, failures, worst
slack) tuples; worst slack is the smallest margin by which an inequality
held (negative means a violation).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional, Tuple

import mpmath
from mpmath import mpf

from .bounds import log_power_bound_check
from .groupact import GeneratorSet, global_fixed_set
from .koopman import (
    StepFunction,
    koopman_apply,
    koopman_distortion,
    lp_norm,
    mazur_map,
    normalize,
    refine,
    subtract,
)
from .plmap import PLHomeo
from .precision import to_real

DEFAULT_SEED = 20240811

SuiteResult = Tuple[str, int, int, Optional[float]]


# ---------------------------------------------------------------------------
# random generators


def random_rational(rng: random.Random, max_mag: int = 1000) -> Fraction:
    return Fraction(rng.randint(-max_mag, max_mag), rng.randint(1, max_mag))


def random_plhomeo(
    rng: random.Random, max_nodes: int = 8, max_mag: int = 1000
) -> PLHomeo:
    k = rng.randint(1, max_nodes)
    xs = sorted({random_rational(rng, max_mag) for _ in range(k)})
    ys = sorted({random_rational(rng, max_mag) for _ in range(len(xs))})
    while len(ys) < len(xs):
        ys = sorted(set(ys) | {random_rational(rng, max_mag)})
    return PLHomeo(tuple(zip(xs, ys[: len(xs)])))


def random_step_function(
    rng: random.Random, max_pieces: int = 6, max_mag: int = 50
) -> StepFunction:
    k = rng.randint(1, max_pieces)
    bps = sorted({random_rational(rng, max_mag) for _ in range(k + 1)})
    while len(bps) < 2:
        bps = sorted(set(bps) | {random_rational(rng, max_mag)})
    values = []
    for _ in range(len(bps) - 1):
        v = rng.uniform(-5, 5)
        if abs(v) < 0.1:
            v = 0.5  # keep the function clearly nonzero
        values.append(mpf(repr(v)))
    return StepFunction(tuple(bps), tuple(values))


# ---------------------------------------------------------------------------
# suites


def suite_group_axioms(cases: int = 1000, seed: int = DEFAULT_SEED) -> List[SuiteResult]:
    rng = random.Random(seed)
    ident = PLHomeo.identity()
    fails_assoc = fails_inv = fails_ident = fails_lip = 0
    for _ in range(cases):
        f = random_plhomeo(rng)
        g = random_plhomeo(rng)
        h = random_plhomeo(rng)
        if (f.compose(g)).compose(h) != f.compose(g.compose(h)):
            fails_assoc += 1
        if f.compose(f.invert()) != ident or f.invert().compose(f) != ident:
            fails_inv += 1
        if f.compose(ident) != f or ident.compose(f) != f:
            fails_ident += 1
        if f.invert().lip_constant() != f.lip_constant():
            fails_lip += 1
    return [
        ("associativity", cases, fails_assoc, None),
        ("inverse law", cases, fails_inv, None),
        ("identity law", cases, fails_ident, None),
        ("Lip(f^-1) = Lip(f)", cases, fails_lip, None),
    ]


def suite_homothety(cases: int = 1000, seed: int = DEFAULT_SEED) -> List[SuiteResult]:
    rng = random.Random(seed)
    fails_lip = fails_disp = 0
    for _ in range(cases):
        f = random_plhomeo(rng)
        alpha = abs(random_rational(rng, 100)) + Fraction(1, 100)
        conj = f.conjugate_by_homothety(alpha)
        if conj.lip_constant() != f.lip_constant():
            fails_lip += 1
        if conj.displacement() * alpha != f.displacement():
            fails_disp += 1
    return [
        ("conjugation preserves Lip", cases, fails_lip, None),
        ("conjugation scales displacement by 1/alpha", cases, fails_disp, None),
    ]


def suite_koopman(cases: int = 1000, seed: int = DEFAULT_SEED) -> List[SuiteResult]:
    rng = random.Random(seed)
    tol = mpf("1e-12")
    ps = [1, 2, 4, 16]
    iso_fail = 0
    iso_worst = mpf("inf")
    for _ in range(cases):
        g = random_plhomeo(rng, max_nodes=5, max_mag=60)
        xi = random_step_function(rng)
        p = rng.choice(ps)
        n0 = lp_norm(xi, p)
        n1 = lp_norm(koopman_apply(g, xi, p), p)
        slack = tol * n0 - abs(n1 - n0)
        iso_worst = min(iso_worst, slack)
        if slack < 0:
            iso_fail += 1
    hom_fail = 0
    hom_worst = mpf("inf")
    pair_cases = cases
    for _ in range(pair_cases):
        f = random_plhomeo(rng, max_nodes=4, max_mag=40)
        g = random_plhomeo(rng, max_nodes=4, max_mag=40)
        xi = random_step_function(rng, max_pieces=4)
        p = rng.choice(ps)
        lhs = koopman_apply(f.compose(g), xi, p)
        rhs = koopman_apply(f, koopman_apply(g, xi, p), p)
        dev = max(abs(u - v) for _, _, u, v in refine(lhs, rhs))
        slack = tol - dev
        hom_worst = min(hom_worst, slack)
        if slack < 0:
            hom_fail += 1
    return [
        ("L^p isometry (relative 1e-12)", cases, iso_fail, float(iso_worst)),
        ("homomorphism (piecewise 1e-12)", pair_cases, hom_fail, float(hom_worst)),
    ]


def suite_mazur(cases: int = 1000, seed: int = DEFAULT_SEED) -> List[SuiteResult]:
    rng = random.Random(seed)
    combos = [(2, 4), (2, 16), (1, 2)]
    tol = mpf("1e-12")
    fails = 0
    worst = mpf("inf")
    sphere_fails = 0
    sphere_worst = mpf("inf")
    for i in range(cases):
        q, p = combos[i % len(combos)]
        xi = normalize(random_step_function(rng), q)
        eta = normalize(random_step_function(rng), q)
        lhs = to_real(Fraction(q, p)) * lp_norm(subtract(xi, eta), q)
        rhs = lp_norm(subtract(mazur_map(xi, q, p), mazur_map(eta, q, p)), p)
        slack = rhs + tol - lhs
        worst = min(worst, slack)
        if slack < 0:
            fails += 1
        sphere_slack = tol - abs(lp_norm(mazur_map(xi, q, p), p) - 1)
        sphere_worst = min(sphere_worst, sphere_slack)
        if sphere_slack < 0:
            sphere_fails += 1
    return [
        ("Mazur lower bound (q/p)||xi-eta||_q", cases, fails, float(worst)),
        ("Mazur maps unit sphere to unit sphere", cases, sphere_fails, float(sphere_worst)),
    ]


def suite_lemmas(cases: int = 10000, seed: int = DEFAULT_SEED) -> List[SuiteResult]:
    rng = random.Random(seed)
    fails = 0
    worst = mpf("inf")
    for _ in range(cases):
        L = mpf(repr(rng.uniform(1.0001, 1000.0)))
        x = mpf(repr(rng.uniform(0.0, 1.0))) * (L - 1 / L) + 1 / L
        logL = mpmath.log(L)
        p = mpf(repr(rng.uniform(0.0, 1.0))) * (1000 - float(logL)) + logL + mpf("1e-6")
        ok, slack = log_power_bound_check(x, p, L)
        worst = min(worst, slack)
        if not ok:
            fails += 1
    return [("log-power inequality slack >= 0", cases, fails, float(worst))]


def suite_escape(seed: int = DEFAULT_SEED) -> List[SuiteResult]:
    """Escape-of-mass mechanism: a generating set with empty global fixed
    set moves a compactly supported window off itself, and disjointly
    supported unit vectors are 2^{1/p} apart."""
    t = PLHomeo.translation(1)
    bump = PLHomeo.from_pairs([(0, 0), (1, Fraction(3, 2)), (2, 2)])
    S = GeneratorSet("escape", (("t", t), ("b", bump)))
    results = []
    ok = global_fixed_set(S).is_empty
    results.append(("no global fixed point", 1, 0 if ok else 1, None))
    fails = 0
    worst = mpf("inf")
    trials = 0
    for p in (1, 2, 4):
        M = Fraction(2)
        xi = StepFunction((-M, M), (to_real(2 * M) ** (-1 / mpf(p)),))
        # translation by 2M+1 moves [-M, M] off itself
        shift = t
        w = PLHomeo.identity()
        for _ in range(int(2 * M) + 1):
            w = w.compose(shift)
        assert w.evaluate(-M) > M
        d = koopman_distortion(w, xi, p)
        slack = d - (2 ** (1 / mpf(p))) + mpf("1e-12")
        trials += 1
        worst = min(worst, slack)
        if slack < 0:
            fails += 1
    results.append(("disjoint-support distortion = 2^(1/p)", trials, fails, float(worst)))
    return results


SUITES = {
    "group-axioms": lambda: suite_group_axioms() + suite_homothety(),
    "koopman": lambda: suite_koopman() + suite_escape(),
    "mazur": lambda: suite_mazur(),
    "lemmas": lambda: suite_lemmas(),
}


def run_suites(name: str) -> Tuple[bool, List[SuiteResult]]:
    if name == "all":
        results: List[SuiteResult] = []
        for key in ("group-axioms", "koopman", "mazur", "lemmas"):
            results.extend(SUITES[key]())
    elif name in SUITES:
        results = SUITES[name]()
    else:
        raise ValueError(f"unknown suite {name!r}")
    passed = all(failures == 0 for _, _, failures, _ in results)
    return passed, results
