"""Invariant suite behind ``hplane verify``.

Each check returns a :class:`CheckResult`; a failing check carries the first
counterexample found. Closed forms are looked up through the ``binomials``
module at call time, so a test can patch one and watch the suite fail.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, List, Optional

from . import binomials
from .algebra import (
    NCPolynomial,
    PlaneSpec,
    SingularTransformationError,
    commute_x_past_y_power,
    commute_x_power_past_y,
    iter_words,
    nc_mul,
    nc_pow,
    rewrite_step,
    verify_manin_transformation,
    x_plus_y,
)
from .coeffring import H, ParamPoly

MANIN_Q_VALUES = (Fraction(2), Fraction(3), Fraction(-1), Fraction(1, 2))
SPOT_PLANES = ((1, 0), (1, 1), (2, 0), (2, 3))
MAX_WORD_LENGTH = 10


@dataclass
class CheckResult:
    name: str
    passed: bool
    counterexample: Optional[str] = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status}  {self.name}"
        if self.counterexample:
            out += f"\n      counterexample: {self.counterexample}"
        return out


def random_ncpoly(rng: random.Random, max_degree: int, max_terms: int = 3) -> NCPolynomial:
    """Small random element with symbolic-looking coefficients."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_degree)
        a = rng.randint(0, deg)
        coeff = ParamPoly({(rng.randint(0, 1), rng.randint(0, 1)): rng.randint(-3, 3) or 1})
        terms[(a, deg - a)] = coeff
    return NCPolynomial(terms)


def expansion_coefficients(n: int, plane: PlaneSpec, strategy: str = "naive"):
    """Coefficients of y^k x^(n-k) in (x+y)^n, plus any stray monomials."""
    p = nc_pow(x_plus_y(), n, plane, strategy)
    coeffs = [p.coefficient(k, n - k) for k in range(n + 1)]
    stray = [m for m, _ in p.items() if sum(m) != n]
    return coeffs, stray


def check_h_binomial_theorem(max_n: int) -> CheckResult:
    name = f"h-binomial theorem: (x+y)^n at q=1 matches [n k]_h (n <= {max_n})"
    plane = PlaneSpec.h_plane()
    for n in range(max_n + 1):
        coeffs, stray = expansion_coefficients(n, plane)
        if stray:
            return CheckResult(name, False, f"n={n}: inhomogeneous monomials {stray}")
        for k, c in enumerate(coeffs):
            expected = binomials.h_binomial(n, k)
            if c != expected:
                return CheckResult(name, False, f"n={n} k={k}: expansion {c} != closed form {expected}")
    return CheckResult(name, True)


def check_q_binomial_theorem(max_n: int) -> CheckResult:
    name = f"q-binomial theorem: (x+y)^n at h=0 matches Gaussian binomials (n <= {max_n})"
    plane = PlaneSpec.manin()
    for n in range(max_n + 1):
        coeffs, _ = expansion_coefficients(n, plane)
        for k, c in enumerate(coeffs):
            oracle = binomials.q_binomial_from_pochhammer(n, k)
            closed = binomials.q_binomial(n, k)
            if not c == oracle == closed:
                return CheckResult(name, False, f"n={n} k={k}: expansion {c}, Pochhammer {oracle}, recurrence {closed}")
    return CheckResult(name, True)


def _x_power_y_expected(k: int) -> NCPolynomial:
    return NCPolynomial(
        {(r + 1, k - r): H**r * (factorial(k) // factorial(k - r)) for r in range(k + 1)}
    )


def check_commutation_identities(max_n: int) -> CheckResult:
    name = f"x*y^k and x^k*y identities, closed form vs single-step rewriting (k <= {max_n})"
    h_plane, sym = PlaneSpec.h_plane(), PlaneSpec.symbolic()
    for k in range(max_n + 1):
        expected = NCPolynomial({(k, 1): 1, (k + 1, 0): H.scale(k)})
        got = commute_x_past_y_power(k, h_plane)
        if got != expected:
            return CheckResult(name, False, f"x*y^{k} = {got}, expected {expected}")
        got = commute_x_power_past_y(k, h_plane)
        if got != _x_power_y_expected(k):
            return CheckResult(name, False, f"x^{k}*y = {got}, expected {_x_power_y_expected(k)}")
        for word, fast in (("x" + "y" * k, commute_x_past_y_power), ("x" * k + "y", commute_x_power_past_y)):
            slow = rewrite_step(word, sym)
            if fast(k, sym) != slow:
                return CheckResult(name, False, f"word {word}: batched {fast(k, sym)} != rewriting {slow}")
    return CheckResult(name, True)


def check_recurrences(max_n: int) -> CheckResult:
    name = f"coefficient recurrences (n <= {max_n})"
    for n in range(max_n + 1):
        for k in range(1, n + 2):
            if not binomials.check_recurrence_7(n, k):
                return CheckResult(name, False, f"[n k] + (1+(k-1)h)[n k-1] != [n+1 k] at n={n} k={k}")
        for k in range(n + 1):
            if not binomials.check_recurrence_8(n, k):
                return CheckResult(name, False, f"[n+1 k+1] != (n+1)/(k+1)(1+kh)[n k] at n={n} k={k}")
    return CheckResult(name, True)


def check_recurrence_table(max_n: int) -> CheckResult:
    name = f"Pascal-style triangle equals closed form (n <= {max_n})"
    table = binomials.h_binomial_by_recurrence(max_n)
    for n in range(max_n + 1):
        for k in range(n + 1):
            if table[n, k] != binomials.h_binomial(n, k):
                return CheckResult(name, False, f"({n},{k}): table {table[n, k]} != closed form {binomials.h_binomial(n, k)}")
    return CheckResult(name, True)


def check_specializations(max_n: int) -> CheckResult:
    name = f"specializations h=0 -> C(n,k), h=1 -> n!/(n-k)! (n <= {max_n})"
    for n in range(max_n + 1):
        for k in range(n + 1):
            c = binomials.h_binomial(n, k)
            if c.evaluate(h=0) != comb(n, k):
                return CheckResult(name, False, f"[{n} {k}] at h=0 is {c.evaluate(h=0)}, not {comb(n, k)}")
            if c.evaluate(h=1) != factorial(n) // factorial(n - k):
                return CheckResult(name, False, f"[{n} {k}] at h=1 is {c.evaluate(h=1)}")
    return CheckResult(name, True)


def check_manin_transformation(max_n: int) -> CheckResult:
    name = "q-plane to h-plane change of variables (q in 2, 3, -1, 1/2; h symbolic)"
    for q in MANIN_Q_VALUES:
        if not verify_manin_transformation(q):
            return CheckResult(name, False, f"relation fails at q={q}")
    try:
        verify_manin_transformation(1)
    except SingularTransformationError:
        return CheckResult(name, True)
    return CheckResult(name, False, "q=1 was accepted")


def check_confluence(max_n: int, seed: int = 0) -> CheckResult:
    length = min(max_n, MAX_WORD_LENGTH)
    name = f"rewriting order independence on all words of length <= {length}"
    plane = PlaneSpec.symbolic()
    rng = random.Random(seed)
    for L in range(length + 1):
        for w in iter_words(L):
            left = rewrite_step(w, plane, "leftmost")
            for order in ("rightmost", "random"):
                other = rewrite_step(w, plane, order, rng)
                if other != left:
                    return CheckResult(name, False, f"word {w}: leftmost {left} != {order} {other}")
    return CheckResult(name, True)


def check_strategy_equivalence(max_n: int, samples: int = 50, seed: int = 1) -> CheckResult:
    name = f"naive and batched products agree (degree <= {min(max_n, 8)})"
    plane = PlaneSpec.symbolic()
    for n in range(max_n + 1):
        a, b = nc_pow(x_plus_y(), n, plane, "naive"), nc_pow(x_plus_y(), n, plane, "batched")
        if a != b:
            return CheckResult(name, False, f"(x+y)^{n}: naive {a} != batched {b}")
    if max_n == 0:
        return CheckResult(name, True)
    rng = random.Random(seed)
    for _ in range(samples):
        p, r = random_ncpoly(rng, min(max_n, 8)), random_ncpoly(rng, min(max_n, 8))
        a, b = nc_mul(p, r, plane, "naive"), nc_mul(p, r, plane, "batched")
        if a != b:
            return CheckResult(name, False, f"({p})*({r}): naive {a} != batched {b}")
    return CheckResult(name, True)


def check_specialization_commutes(max_n: int) -> CheckResult:
    name = f"evaluating parameters commutes with expansion (n <= {max_n})"
    symbolic = PlaneSpec.symbolic()
    for n in range(max_n + 1):
        full = nc_pow(x_plus_y(), n, symbolic)
        for q, h in SPOT_PLANES:
            direct = nc_pow(x_plus_y(), n, PlaneSpec(q=q, h=h))
            if full.evaluate(q=q, h=h) != direct:
                return CheckResult(name, False, f"n={n} at q={q} h={h}")
    return CheckResult(name, True)


ALL_CHECKS: List[Callable[[int], CheckResult]] = [
    check_h_binomial_theorem,
    check_q_binomial_theorem,
    check_commutation_identities,
    check_recurrences,
    check_recurrence_table,
    check_specializations,
    check_manin_transformation,
    check_confluence,
    check_strategy_equivalence,
    check_specialization_commutes,
]


def run_all(max_n: int) -> List[CheckResult]:
    return [check(max_n) for check in ALL_CHECKS]
