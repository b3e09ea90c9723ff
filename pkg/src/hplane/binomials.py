"""Classical, Gaussian and h-deformed binomial coefficients.

The h-binomial is computed in its polynomial form

    [n k]_h = C(n, k) * (1)(1 + h)(1 + 2h)...(1 + (k-1)h),

which is h^k (1/h)_k with the 1/h cleared, so it stays finite at h = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Tuple

from .coeffring import H, ONE, Q, ZERO, ParamPoly, Scalar, as_rational


def rising_factorial(a: Scalar, k: int) -> Fraction:
    """(a)_k = a (a+1) ... (a+k-1); 1 when k = 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    a = as_rational(a)
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def q_pochhammer(a: ParamPoly, k: int) -> ParamPoly:
    """(a; q)_k = (1 - a)(1 - q a) ... (1 - q^(k-1) a)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    a = a if isinstance(a, ParamPoly) else ParamPoly.constant(a)
    out = ONE
    for i in range(k):
        out = out * (ONE - ParamPoly.q_power(i) * a)
    return out


@lru_cache(maxsize=None)
def _gaussian_row(n: int) -> Tuple[ParamPoly, ...]:
    if n == 0:
        return (ONE,)
    prev = _gaussian_row(n - 1)
    row = [ONE]
    for k in range(1, n):
        row.append(prev[k - 1] + ParamPoly.q_power(k) * prev[k])
    row.append(ONE)
    return tuple(row)


def q_binomial(n: int, k: int) -> ParamPoly:
    """Gaussian binomial [n k]_q via  [n k] = [n-1 k-1] + q^k [n-1 k]."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return ZERO
    return _gaussian_row(n)[k]


def q_binomial_from_pochhammer(n: int, k: int) -> ParamPoly:
    """(q;q)_n / ((q;q)_k (q;q)_(n-k)) by exact polynomial division.

    Used as an independent oracle for :func:`q_binomial`; raises ValueError
    if the division is not exact.
    """
    if k < 0 or k > n:
        return ZERO
    top = q_pochhammer(Q, n)
    return top.divexact_q(q_pochhammer(Q, k) * q_pochhammer(Q, n - k))


def h_factor_product(k: int) -> ParamPoly:
    """prod_{r<k} (1 + r h)."""
    out = ONE
    for r in range(1, k):
        out = out * (ONE + H.scale(r))
    return out


def h_binomial(n: int, k: int) -> ParamPoly:
    """[n k]_h; zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return ZERO
    return h_factor_product(k).scale(comb(n, k))


@dataclass(frozen=True)
class CoeffTable:
    """Triangle of coefficients (n, k) for 0 <= k <= n <= n_max."""

    n_max: int
    entries: Dict[Tuple[int, int], ParamPoly] = field(repr=False)

    def __getitem__(self, nk: Tuple[int, int]) -> ParamPoly:
        n, k = nk
        if not 0 <= n <= self.n_max:
            raise KeyError(nk)
        return self.entries.get((n, k), ZERO)

    def row(self, n: int) -> List[ParamPoly]:
        return [self.entries[(n, k)] for k in range(n + 1)]

    def evaluate(self, q=None, h=None) -> "CoeffTable":
        return CoeffTable(self.n_max, {nk: c.evaluate(q=q, h=h) for nk, c in self.entries.items()})


def h_binomial_by_recurrence(n_max: int) -> CoeffTable:
    """Build [n k]_h row by row from C(n,k) = C(n-1,k) + (1 + (k-1)h) C(n-1,k-1)."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    entries = {(0, 0): ONE}
    for n in range(1, n_max + 1):
        entries[(n, 0)] = ONE
        for k in range(1, n):
            entries[(n, k)] = entries[(n - 1, k)] + (ONE + H.scale(k - 1)) * entries[(n - 1, k - 1)]
        entries[(n, n)] = (ONE + H.scale(n - 1)) * entries[(n - 1, n - 1)]
    return CoeffTable(n_max, entries)


def q_binomial_by_recurrence(n_max: int) -> CoeffTable:
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    entries = {(n, k): c for n in range(n_max + 1) for k, c in enumerate(_gaussian_row(n))}
    return CoeffTable(n_max, entries)


def check_recurrence_7(n: int, k: int) -> bool:
    """[n k]_h + (1 + (k-1)h) [n k-1]_h == [n+1 k]_h, for 1 <= k <= n+1."""
    if n < 0 or not 1 <= k <= n + 1:
        raise ValueError(f"need 1 <= k <= n+1, got n={n}, k={k}")
    lhs = h_binomial(n, k) + (ONE + H.scale(k - 1)) * h_binomial(n, k - 1)
    return lhs == h_binomial(n + 1, k)


def check_recurrence_8(n: int, k: int) -> bool:
    """[n+1 k+1]_h == (n+1)/(k+1) (1 + k h) [n k]_h, for 0 <= k <= n."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    rhs = ((ONE + H.scale(k)) * h_binomial(n, k)).scale(Fraction(n + 1, k + 1))
    return h_binomial(n + 1, k + 1) == rhs


def falling_factorial_ratio(n: int, k: int) -> int:
    """n! / (n-k)!, the value of [n k]_h at h = 1."""
    return factorial(n) // factorial(n - k)
