"""Normal-ordered polynomials in the deformed plane  x*y = q*y*x + h*y^2.

Every element is stored in the basis y^a x^b (all y's to the left). Two
normalisation routes are provided and kept independent of each other:

* ``naive``: the single-step rewriter :func:`normalize_words`, which only ever
  applies ``xy -> q yx + h yy`` to one adjacent pair at a time;
* ``batched``: moves an x across a whole block y^c in one go using
  ``x y^c = q^c y^c x + h [c]_q y^(c+1)``.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from .coeffring import H, ONE, Q, ZERO, ParamPoly, Scalar, as_rational, negated_text

NormalMonomial = Tuple[int, int]  # (a, b) = y^a x^b
Coefficient = Union[ParamPoly, int, Fraction]

STRATEGIES = ("naive", "batched")
ORDERS = ("leftmost", "rightmost", "random")


class SingularTransformationError(ValueError):
    """The Manin-to-h-plane change of variables needs q != 1."""


@dataclass(frozen=True)
class PlaneSpec:
    """Values of the deformation parameters; ``None`` keeps one symbolic."""

    q: Optional[Fraction] = Fraction(1)
    h: Optional[Fraction] = None

    def __post_init__(self):
        for name in ("q", "h"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, as_rational(value))

    @classmethod
    def h_plane(cls) -> "PlaneSpec":
        return cls(q=1, h=None)

    @classmethod
    def manin(cls) -> "PlaneSpec":
        return cls(q=None, h=0)

    @classmethod
    def classical(cls) -> "PlaneSpec":
        return cls(q=1, h=0)

    @classmethod
    def symbolic(cls) -> "PlaneSpec":
        return cls(q=None, h=None)

    @property
    def q_coeff(self) -> ParamPoly:
        return Q if self.q is None else ParamPoly.constant(self.q)

    @property
    def h_coeff(self) -> ParamPoly:
        return H if self.h is None else ParamPoly.constant(self.h)

    def label(self, name: str) -> str:
        value = getattr(self, name)
        return "sym" if value is None else str(value)

    def __str__(self) -> str:
        return f"q={self.label('q')} h={self.label('h')}"


def _coeff(c: Coefficient) -> ParamPoly:
    return c if isinstance(c, ParamPoly) else ParamPoly.constant(c)


class NCPolynomial:
    """Immutable finite sum of c * y^a x^b with nonzero ParamPoly coefficients.

    There is no ``*`` operator: multiplication depends on the plane, use
    :func:`nc_mul`.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[NormalMonomial, Coefficient]] = None):
        clean = {}
        for key, c in (terms or {}).items():
            a, b = key
            if not (isinstance(a, int) and isinstance(b, int)) or a < 0 or b < 0:
                raise ValueError(f"bad normal monomial {key!r}")
            c = _coeff(c)
            if c:
                clean[(a, b)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "NCPolynomial":
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, a: int, b: int, c: Coefficient = 1) -> "NCPolynomial":
        return cls({(a, b): c})

    @classmethod
    def constant(cls, c: Coefficient) -> "NCPolynomial":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "NCPolynomial":
        return cls.monomial(0, 1)

    @classmethod
    def y(cls) -> "NCPolynomial":
        return cls.monomial(1, 0)

    @classmethod
    def one(cls) -> "NCPolynomial":
        return cls.constant(1)

    def items(self) -> Iterator[Tuple[NormalMonomial, ParamPoly]]:
        """Terms by ascending y-exponent, then ascending x-exponent."""
        for key in sorted(self._terms):
            yield key, self._terms[key]

    def coefficient(self, a: int, b: int) -> ParamPoly:
        return self._terms.get((a, b), ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degrees(self) -> set:
        return {a + b for a, b in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __add__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key, ZERO) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return NCPolynomial._wrap(out)

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Coefficient) -> "NCPolynomial":
        c = _coeff(c)
        scaled = ((k, v * c) for k, v in self._terms.items())
        return NCPolynomial._wrap({k: v for k, v in scaled if v})

    def shift_y(self, a: int) -> "NCPolynomial":
        """Left multiplication by y^a, which never needs rewriting."""
        return NCPolynomial._wrap({(i + a, j): c for (i, j), c in self._terms.items()})

    def evaluate(self, q: Optional[Scalar] = None, h: Optional[Scalar] = None) -> "NCPolynomial":
        return NCPolynomial({k: c.evaluate(q=q, h=h) for k, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"NCPolynomial({self})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        """Reparseable text such as ``y*x + h*y^2`` or ``(1 + h)*y^2``."""
        if not self._terms:
            return "0"
        out = ""
        for (a, b), c in self.items():
            mono = monomial_text(a, b)
            negative = len(c) == 1 and next(iter(c.items()))[1] < 0
            if negative:
                c = -c
            if mono == "1":
                body = c.to_text() if len(c) == 1 else f"({c.to_text()})"
            elif c == 1:
                body = mono
            elif len(c) == 1:
                body = f"{c.to_text()}*{mono}"
            else:
                body = f"({c.to_text()})*{mono}"
            if not out:
                out = negated_text(body) if negative else body
            else:
                out += (" - " if negative else " + ") + body
        return out


def monomial_text(a: int, b: int, latex: bool = False) -> str:
    parts = []
    for name, e in (("y", a), ("x", b)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{{{e}}}" if latex else f"{name}^{e}")
    if not parts:
        return "1"
    return " ".join(parts) if latex else "*".join(parts)


# -- single-step rewriting ---------------------------------------------------


def _as_word(word: Union[str, Sequence[str]]) -> str:
    w = "".join(word)
    if set(w) - {"x", "y"}:
        raise ValueError(f"words are sequences over {{x, y}}, got {word!r}")
    return w


def _x_weight(word: str) -> int:
    # sum over x's of the distance to the end; both rewrites strictly lower it
    n = len(word)
    return sum(n - i for i, ch in enumerate(word) if ch == "x")


def _pick_pair(word: str, order: str, rng: random.Random) -> int:
    if order == "leftmost":
        return word.index("xy")
    if order == "rightmost":
        return word.rindex("xy")
    spots = [i for i in range(len(word) - 1) if word[i] == "x" and word[i + 1] == "y"]
    return rng.choice(spots)


def _word_to_monomial(word: str) -> NormalMonomial:
    a = word.count("y")
    return a, len(word) - a


def normalize_words(
    terms: Mapping[str, Coefficient],
    plane: PlaneSpec,
    order: str = "leftmost",
    rng: Optional[random.Random] = None,
) -> NCPolynomial:
    """Normal form of a linear combination of words, one ``xy`` pair per step.

    ``order`` picks which ``xy`` pair of a word is rewritten: ``leftmost``,
    ``rightmost``, or a uniformly random one drawn from ``rng``. Pending words
    are processed heaviest first, so every distinct word is rewritten once.
    """
    if order not in ORDERS:
        raise ValueError(f"unknown rewriting order {order!r}")
    rng = rng or random.Random(0)
    qc, hc = plane.q_coeff, plane.h_coeff
    done: Dict[NormalMonomial, ParamPoly] = {}
    pending: Dict[str, ParamPoly] = {}
    heap: list = []

    def push(w: str, c: ParamPoly) -> None:
        if not c:
            return
        if "xy" not in w:
            key = _word_to_monomial(w)
            s = done.get(key, ZERO) + c
            if s:
                done[key] = s
            else:
                done.pop(key, None)
            return
        if w in pending:
            s = pending[w] + c
            pending[w] = s  # may cancel to zero; skipped when popped
            return
        pending[w] = c
        heapq.heappush(heap, (-_x_weight(w), w))

    for w, c in terms.items():
        push(_as_word(w), _coeff(c))

    while pending:
        w = heapq.heappop(heap)[1]
        c = pending.pop(w)
        if not c:
            continue
        i = _pick_pair(w, order, rng)
        head, tail = w[:i], w[i + 2 :]
        push(head + "yx" + tail, c * qc)
        push(head + "yy" + tail, c * hc)

    return NCPolynomial._wrap(done)


def rewrite_step(
    word: Union[str, Sequence[str]],
    plane: PlaneSpec,
    order: str = "leftmost",
    rng: Optional[random.Random] = None,
) -> NCPolynomial:
    """Normal form of a single word over {x, y} by repeated single-pair rewriting."""
    return normalize_words({_as_word(word): ONE}, plane, order=order, rng=rng)


# -- batched commutation -----------------------------------------------------


@lru_cache(maxsize=None)
def _q_power(plane: PlaneSpec, c: int) -> ParamPoly:
    return plane.q_coeff**c


@lru_cache(maxsize=None)
def _h_q_integer(plane: PlaneSpec, c: int) -> ParamPoly:
    # h * (1 + q + ... + q^(c-1))
    total = ZERO
    for i in range(c):
        total = total + _q_power(plane, i)
    return plane.h_coeff * total


def commute_x_past_y_power(c: int, plane: PlaneSpec) -> NCPolynomial:
    """Normal form of x * y^c, namely q^c y^c x + h [c]_q y^(c+1)."""
    if c < 0:
        raise ValueError("power must be nonnegative")
    return NCPolynomial({(c, 1): _q_power(plane, c), (c + 1, 0): _h_q_integer(plane, c)})


def _left_mul_x(p: NCPolynomial, plane: PlaneSpec) -> NCPolynomial:
    out: Dict[NormalMonomial, ParamPoly] = {}
    for (a, b), c in p._terms.items():
        for key, coef in (((a, b + 1), _q_power(plane, a)), ((a + 1, b), _h_q_integer(plane, a))):
            if not coef:
                continue
            s = out.get(key, ZERO) + c * coef
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return NCPolynomial._wrap(out)


def commute_x_power_past_y(k: int, plane: PlaneSpec) -> NCPolynomial:
    """Normal form of x^k * y."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    p = NCPolynomial.y()
    for _ in range(k):
        p = _left_mul_x(p, plane)
    return p


# -- products ----------------------------------------------------------------


def _word(a: int, b: int) -> str:
    return "y" * a + "x" * b


def nc_mul(lhs: NCPolynomial, rhs: NCPolynomial, plane: PlaneSpec, strategy: str = "batched") -> NCPolynomial:
    """Normal form of lhs * rhs (lhs written on the left)."""
    if strategy == "naive":
        words: Dict[str, ParamPoly] = {}
        for (a, b), c1 in lhs._terms.items():
            for (c, d), c2 in rhs._terms.items():
                w = _word(a, b) + _word(c, d)
                words[w] = words.get(w, ZERO) + c1 * c2
        return normalize_words(words, plane)
    if strategy == "batched":
        total = NCPolynomial()
        by_x: Dict[int, list] = {}
        for (a, b), c in lhs._terms.items():
            by_x.setdefault(b, []).append((a, c))
        # x^b * rhs is shared by all lhs monomials with the same x-power
        moved = rhs
        for b in range(max(by_x, default=-1) + 1):
            for a, c in by_x.get(b, ()):
                total = total + moved.shift_y(a).scale(c)
            moved = _left_mul_x(moved, plane)
        return total
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


def nc_pow(base: NCPolynomial, n: int, plane: PlaneSpec, strategy: str = "batched") -> NCPolynomial:
    """base^n by repeated left multiplication; base^0 = 1."""
    if not isinstance(n, int) or n < 0:
        raise ValueError("exponent must be a nonnegative int")
    result = NCPolynomial.one()
    for _ in range(n):
        result = nc_mul(base, result, plane, strategy)
    return result


def normal_form(word: Union[str, Sequence[str]], plane: PlaneSpec, strategy: str = "batched") -> NCPolynomial:
    """Normal form of a word, by either strategy."""
    w = _as_word(word)
    if strategy == "naive":
        return rewrite_step(w, plane)
    result = NCPolynomial.one()
    for ch in w:
        gen = NCPolynomial.x() if ch == "x" else NCPolynomial.y()
        result = nc_mul(result, gen, plane, strategy)
    return result


def x_plus_y() -> NCPolynomial:
    return NCPolynomial.x() + NCPolynomial.y()


def verify_manin_transformation(q_val: Scalar, h_val: Optional[Scalar] = None, strategy: str = "batched") -> bool:
    """Check that X = x + h/(q-1) y, Y = y satisfy X*Y = q*Y*X in the plane (q_val, h_val)."""
    q_val = as_rational(q_val)
    if q_val == 1:
        raise SingularTransformationError("the change of variables is singular at q = 1")
    plane = PlaneSpec(q=q_val, h=h_val)
    shift = plane.h_coeff * (1 / (q_val - 1))
    X = NCPolynomial.x() + NCPolynomial.y().scale(shift)
    Y = NCPolynomial.y()
    residue = nc_mul(X, Y, plane, strategy) - nc_mul(Y, X, plane, strategy).scale(q_val)
    return not residue


def iter_words(length: int) -> Iterable[str]:
    """All 2**length words over {x, y}."""
    for bits in range(1 << length):
        yield "".join("y" if bits >> i & 1 else "x" for i in range(length))
