"""Exact scalars and polynomials in the deformation parameters q and h.

Scalars are :class:`fractions.Fraction` (always reduced, denominator > 0).
:class:`ParamPoly` is a sparse element of Q[q, h], keyed by ``(q_degree, h_degree)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Optional, Tuple, Union

Rational = Fraction
Scalar = Union[int, Fraction]
Exponent = Tuple[int, int]


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or text like ``"-3/4"`` into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        # Fraction() also accepts decimals and exponents; keep to p/q
        num, sep, den = text.partition("/")
        try:
            n = int(num)
            d = int(den) if sep else 1
        except ValueError:
            raise ValueError(f"not a rational: {value!r}") from None
        if d == 0:
            raise ZeroDivisionError(f"zero denominator in {value!r}")
        return Fraction(n, d)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def rat_add(a: Scalar, b: Scalar) -> Fraction:
    return as_rational(a) + as_rational(b)


def rat_mul(a: Scalar, b: Scalar) -> Fraction:
    return as_rational(a) * as_rational(b)


def rat_neg(a: Scalar) -> Fraction:
    return -as_rational(a)


def rat_inv(a: Scalar) -> Fraction:
    a = as_rational(a)
    if a == 0:
        raise ZeroDivisionError("rational inverse of zero")
    return 1 / a


def _norm(c):
    # integral values are stored as int; int arithmetic is much cheaper
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class ParamPoly:
    """Immutable sparse polynomial in q and h with rational coefficients.

    Zero coefficients are never stored, so equality is plain mapping equality.
    Arithmetic with ints and Fractions promotes them to constants.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Exponent, Scalar]] = None):
        clean = {}
        for key, c in (terms or {}).items():
            i, j = key
            if not (isinstance(i, int) and isinstance(j, int)) or i < 0 or j < 0:
                raise ValueError(f"exponents must be nonnegative ints, got {key!r}")
            c = _norm(as_rational(c))
            if c:
                clean[(i, j)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "ParamPoly":
        # trusted constructor: terms already canonical
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: Scalar) -> "ParamPoly":
        c = _norm(as_rational(c))
        return cls._wrap({(0, 0): c} if c else {})

    @classmethod
    def q_power(cls, i: int) -> "ParamPoly":
        return cls._wrap({(i, 0): 1})

    @classmethod
    def h_power(cls, j: int) -> "ParamPoly":
        return cls._wrap({(0, j): 1})

    # -- inspection -------------------------------------------------------

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        """Terms ordered by (h-degree, q-degree) ascending."""
        for key in sorted(self._terms, key=lambda e: (e[1], e[0])):
            yield key, Fraction(self._terms[key])

    def coefficient(self, q_degree: int = 0, h_degree: int = 0) -> Fraction:
        return Fraction(self._terms.get((q_degree, h_degree), 0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0, 0) in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return Fraction(self._terms.get((0, 0), 0))

    def degree_h(self) -> int:
        """Degree in h; -1 for the zero polynomial."""
        return max((j for _, j in self._terms), default=-1)

    def degree_q(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional["ParamPoly"]:
        if isinstance(other, ParamPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ParamPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            self, other = other, self
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = _norm(out.get(key, 0) + c)
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return ParamPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: Scalar) -> "ParamPoly":
        c = _norm(as_rational(c))
        if not c:
            return ParamPoly._wrap({})
        if c == 1:
            return self
        return ParamPoly._wrap({k: _norm(v * c) for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        if len(self._terms) == 1:
            self, other = other, self
        if len(other._terms) == 1:
            # monomial factor: exponents shift, no two terms collide
            ((i2, j2), c2), = other._terms.items()
            if c2 == 1:
                return ParamPoly._wrap({(i + i2, j + j2): c for (i, j), c in self._terms.items()})
            return ParamPoly._wrap({(i + i2, j + j2): _norm(c * c2) for (i, j), c in self._terms.items()})
        if not other._terms:
            return other
        out: dict = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return ParamPoly._wrap({k: _norm(v) for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ParamPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("ParamPoly exponent must be a nonnegative int")
        result, base = ParamPoly.constant(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, q: Optional[Scalar] = None, h: Optional[Scalar] = None) -> "ParamPoly":
        """Substitute rationals for q and/or h; ``None`` leaves a generator symbolic."""
        q = None if q is None else as_rational(q)
        h = None if h is None else as_rational(h)
        out: dict = {}
        for (i, j), c in self._terms.items():
            if q is not None:
                c, i = c * q**i, 0
            if h is not None:
                c, j = c * h**j, 0
            out[(i, j)] = out.get((i, j), 0) + c
        return ParamPoly._wrap({k: _norm(v) for k, v in out.items() if v})

    def divexact_q(self, divisor: "ParamPoly") -> "ParamPoly":
        """Exact division treating both operands as polynomials in q.

        The divisor's leading q-coefficient must be h-free. Raises ValueError when
        the division leaves a remainder.
        """
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        top = divisor.degree_q()
        lead = [(j, c) for (i, j), c in divisor._terms.items() if i == top]
        if len(lead) != 1 or lead[0][0] != 0:
            raise ValueError("divisor leading q-coefficient must be a nonzero rational")
        lead_c = lead[0][1]
        rem, quot = self, ParamPoly()
        while rem and rem.degree_q() >= top:
            d = rem.degree_q()
            head = ParamPoly._wrap(
                {(d - top, j): _norm(Fraction(c) / lead_c) for (i, j), c in rem._terms.items() if i == d}
            )
            quot = quot + head
            rem = rem - head * divisor
        if rem:
            raise ValueError(f"inexact division: remainder {rem}")
        return quot

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"ParamPoly({self})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self, latex: bool = False) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (i, j), c in self.items():
            sign = "-" if c < 0 else "+"
            pieces.append((sign, _term_text(abs(c), i, j, latex)))
        sign, body = pieces[0]
        out = body if sign == "+" else negated_text(body, latex)
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def negated_text(body: str, latex: bool = False) -> str:
    # unary minus binds to an atom when reparsed: "-h^2" would mean (-h)^2
    if not latex and len(body) > 1 and body[0].isalpha() and body[1] == "^":
        return f"-({body})"
    return "-" + body


def _power_text(name: str, e: int, latex: bool) -> str:
    if e == 1:
        return name
    return f"{name}^{{{e}}}" if latex else f"{name}^{e}"


def _term_text(c: Fraction, i: int, j: int, latex: bool) -> str:
    gens = [_power_text(n, e, latex) for n, e in (("q", i), ("h", j)) if e]
    if latex:
        num = r"\frac{%d}{%d}" % (c.numerator, c.denominator) if c.denominator != 1 else str(c)
        if not gens:
            return num
        return " ".join(gens) if c == 1 else num + r"\," + " ".join(gens)
    if not gens:
        return format_rational(c)
    factors = gens if c == 1 else [format_rational(c)] + gens
    return "*".join(factors)


ZERO = ParamPoly()
ONE = ParamPoly.constant(1)
Q = ParamPoly.q_power(1)
H = ParamPoly.h_power(1)


def poly_add(p: ParamPoly, r: Union[ParamPoly, Scalar]) -> ParamPoly:
    return p + r


def poly_mul(p: ParamPoly, r: Union[ParamPoly, Scalar]) -> ParamPoly:
    return p * r


def poly_scale(p: ParamPoly, r: Union[ParamPoly, Scalar]) -> ParamPoly:
    return p * r


def poly_eval(p: ParamPoly, q_val: Optional[Scalar] = None, h_val: Optional[Scalar] = None) -> ParamPoly:
    return p.evaluate(q=q_val, h=h_val)
