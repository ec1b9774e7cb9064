"""Corpus of worked identity instances and exhaustive/randomized sweeps.

Each check returns a :class:`CheckOutcome`; ``run_selftest`` runs the whole
identity corpus. Sweeps use a seeded ``random.Random`` so failures replay.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from .constants import EulerKind, euler_product_partial, landau_ramanujan_partial_exact, lemma1_limit_check
from .identities import (
    ALTERNATIVE_TRIPLES,
    FULL_EXCLUDED,
    PAPER_TRIPLES,
    RAMANUJAN_TRIPLE,
    Form,
    TelescopeCase,
    direct_linear_product,
    squared_holds_for_forms,
    telescope_linear,
    telescope_prefactor,
    verify_lemma1,
    verify_remark_alt,
    verify_squared,
    verify_theorem1,
    verify_theorem3,
    verify_theorem4,
    verify_theorem5_cubic,
    verify_triple_family,
)
from .numerics import gamma_ratio_float
from .rational_core import DomainError, LinearForm, to_bigfloat

GAMMA_GRID_U = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(3), Fraction(1, 2))
GAMMA_GRID_V = tuple(range(-5, 6))


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: str = ""


def random_rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def mutated_triples(triple=RAMANUJAN_TRIPLE, step: int = 1):
    """Every triple obtained by moving one coefficient by +-step."""
    for i, form in enumerate(triple):
        for attr in ("u", "v"):
            for delta in (-step, step):
                u, v = form.u, form.v
                if attr == "u":
                    u += delta
                else:
                    v += delta
                if u == 0:
                    continue
                forms = list(triple)
                forms[i] = LinearForm(u, v)
                yield tuple(forms)


def squared_sweep(samples: int = 1000, bound: int = 10**4, seed: int = 20240601):
    """Random a off the excluded set: the squared identity must hold for all,
    and each unit mutation of the triple must fail for >= 99% of them.

    Returns (all_hold, worst_mutation_failure_rate).
    """
    rng = random.Random(seed)
    points = []
    while len(points) < samples:
        a = random_rational(rng, bound)
        if a not in FULL_EXCLUDED:
            points.append(a)
    all_hold = all(verify_squared(a, Form.FULL) for a in points)
    worst = 1.0
    for forms in mutated_triples():
        failed = tried = 0
        for a in points:
            try:
                ok = squared_holds_for_forms(a, forms, Form.FULL)
            except DomainError:
                continue
            tried += 1
            failed += not ok
        worst = min(worst, failed / tried)
    return all_hold, worst


def rational_function_oracle(forms, rng: random.Random, trials: int = 6) -> bool:
    """Pointwise evaluation at random rationals; False on any mismatch."""
    hits = 0
    while hits < trials:
        a = random_rational(rng, 1000)
        values = [f(a) for f in forms]
        if a == 0 or any(d in (1, -1) for d in values):
            continue
        lhs = Fraction(1)
        for d in values:
            lhs *= (d + 1) / (d - 1)
        if lhs != ((a + 1) / a) ** 2:
            return False
        hits += 1
    return True


def random_perturbed_triples(count: int = 20, seed: int = 7):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        base = list(rng.choice(PAPER_TRIPLES))
        i = rng.randrange(3)
        delta = rng.choice((-3, -2, -1, 1, 2, 3))
        u, v = base[i].u, base[i].v
        if rng.random() < 0.5:
            u += delta
        else:
            v += delta
        if u == 0:
            continue
        base[i] = LinearForm(u, v)
        out.append(tuple(base))
    return out


def telescoping_sweep(max_n: int = 50) -> bool:
    for case in TelescopeCase:
        lower = 2 if case is TelescopeCase.SHIFT0 else 1
        for m in range(lower, max_n + 1):
            for n in range(m, max_n + 1):
                if not verify_theorem3(case, m, n).holds:
                    return False
    return True


def cubic_sweep(max_n: int = 50) -> bool:
    return all(
        verify_theorem5_cubic(m, n).holds
        for m in range(2, max_n + 1)
        for n in range(m, max_n + 1)
    )


def gamma_grid(max_n: int = 20):
    """Admissible (u, v, m, n) of the gamma-ratio cross-check grid."""
    for u in GAMMA_GRID_U:
        for v in GAMMA_GRID_V:
            for m in range(1, max_n + 1):
                for n in range(m, max_n + 1):
                    ends = (u * m + v, u * n + v)
                    if (u > 0 and min(ends) > 1) or (u < 0 and max(ends) < -1):
                        yield u, Fraction(v), m, n


def gamma_cross_check(precision_bits: int = 128, rel_tol: float = 1e-10):
    """Largest relative gap between the exact closed form and floating gamma."""
    worst = mpmath.mpf(0)
    count = 0
    for u, v, m, n in gamma_grid():
        exact = telescope_linear(u, v, m, n)
        approx = gamma_ratio_float(u, v, m, n, precision_bits)
        with mpmath.workprec(precision_bits):
            ref = to_bigfloat(exact, precision_bits)
            worst = max(worst, abs(approx - ref) / abs(ref))
        count += 1
    return worst <= rel_tol, worst, count


def _euler_single_factor() -> CheckOutcome:
    expected = {
        EulerKind.ONE_MINUS: Fraction(15, 16),
        EulerKind.RATIO: Fraction(5, 3),
        EulerKind.ONE_PLUS: Fraction(5, 4),
    }
    ok = True
    for kind, value in expected.items():
        got = euler_product_partial(2, 1, kind)
        with mpmath.workprec(128):
            ok &= abs(got - to_bigfloat(value, 128)) <= mpmath.ldexp(1, -120)
    ok &= lemma1_limit_check(2, 1) <= mpmath.ldexp(1, -112)
    return CheckOutcome("euler single factor p=2, s=2", bool(ok), "15/16, 5/3, 5/4")


def identity_corpus() -> list[tuple[str, Callable[[], CheckOutcome | bool]]]:
    def theorem1(a, rhs):
        def run():
            r = verify_theorem1(a)
            return r.holds and r.rhs == rhs
        return run

    return [
        ("Ramanujan identity a=3", theorem1(3, Fraction(1920, 1463))),
        ("substitution a=2", theorem1(2, Fraction(189, 130))),
        ("substitution a=-2", theorem1(-2, Fraction(5, 11))),
        ("alternative form a=1",
         lambda: verify_remark_alt(1).holds and verify_remark_alt(1).rhs == Fraction(64, 35)),
        ("zero cases a=-1, a=-1/3",
         lambda: all(verify_theorem1(a).holds and verify_theorem1(a).rhs == 0
                     for a in (-1, Fraction(-1, 3)))),
        ("single factor sqrt(2(1-1/3^2)) = 4/3",
         lambda: verify_lemma1([3]).holds and verify_lemma1([3]).rhs == Fraction(4, 3)),
        ("single factor sqrt(3(1-1/2^2)) = 3/2",
         lambda: verify_lemma1([2]).holds and verify_lemma1([2]).rhs == Fraction(3, 2)),
        ("lemma on [3, 7, 11, 19]",
         lambda: verify_lemma1([3, 7, 11, 19]).holds
         and verify_lemma1([3, 7, 11, 19]).rhs == Fraction(2560, 1463)),
        ("K_4 = 1463/1920", lambda: landau_ramanujan_partial_exact(4) == Fraction(1463, 1920)),
        ("squared identity sweep and mutations",
         lambda: (lambda r: r[0] and r[1] >= 0.99)(squared_sweep())),
        ("triple families accepted",
         lambda: all(verify_triple_family(t) for t in PAPER_TRIPLES)),
        ("perturbed triples rejected",
         lambda: not any(verify_triple_family(t) for t in random_perturbed_triples())),
        ("telescoping families, n <= 50", telescoping_sweep),
        ("odd telescoping (1,3) is the a=1 alternative form",
         lambda: verify_theorem3(TelescopeCase.ODD, 1, 3).rhs == verify_remark_alt(1).rhs),
        ("gamma closed form (1,0,2,4) = 10",
         lambda: telescope_linear(1, 0, 2, 4) == 10 == telescope_prefactor(TelescopeCase.SHIFT0, 2, 4)),
        ("gamma closed form matches direct product",
         lambda: all(verify_theorem4(u, v, m, n).holds for u, v, m, n in
                     [(1, 0, 2, 5), (3, 1, 1, 4), (-2, 0, 1, 3)])
         and direct_linear_product(2, 1, 1, 3) == 4),
        ("gamma-ratio float cross-check", lambda: gamma_cross_check()[0]),
        ("cubic product, n <= 50", cubic_sweep),
        ("alternative triples accepted",
         lambda: all(verify_triple_family(t) for t in ALTERNATIVE_TRIPLES)),
        ("Euler single factors", _euler_single_factor),
    ]


def run_selftest() -> list[CheckOutcome]:
    outcomes = []
    for name, check in identity_corpus():
        try:
            result = check()
        except Exception as exc:  # a crash is a failed check, reported not raised
            outcomes.append(CheckOutcome(name, False, f"{type(exc).__name__}: {exc}"))
            continue
        if isinstance(result, CheckOutcome):
            outcomes.append(CheckOutcome(name, result.passed, result.detail))
        else:
            outcomes.append(CheckOutcome(name, bool(result)))
    return outcomes
