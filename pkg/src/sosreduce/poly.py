"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial in variables ``x1 .. xn`` is stored as a mapping from exponent
tuples (degree vectors) to nonzero :class:`fractions.Fraction` coefficients.
Values are immutable once built.

Text form::

    poly    := ['-'] term (('+'|'-') term)*
    term    := coeff ('*' varpow)* | varpow ('*' varpow)*
    varpow  := 'x' INT ['^' INT]
    coeff   := INT | INT '/' INT | DECIMAL

>>> p = parse_polynomial("3*x1^4 - 2*x1^2*x2 + 1")
>>> p.degree
4
>>> format_polynomial(p * p - p * p)
'0'
"""
from __future__ import annotations

import re
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Tuple, Union

DegreeVector = Tuple[int, ...]
Rational = Union[int, Fraction]

__all__ = [
    "DegreeVector",
    "Polynomial",
    "PolynomialSyntaxError",
    "degree",
    "format_polynomial",
    "monomial_key",
    "multiply",
    "parse_polynomial",
    "sum_of_squares",
]


def monomial_key(alpha: Sequence[int]) -> tuple:
    """Sort key realizing graded-lex order.

    ``x^a`` precedes ``x^b`` when ``deg a < deg b``, or the degrees tie and the
    first nonzero entry of ``a - b`` is positive (so ``x1^2`` precedes ``x1*x2``).
    """
    return (sum(alpha), tuple(-a for a in alpha))


class PolynomialSyntaxError(ValueError):
    """Raised on malformed polynomial text; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Polynomial:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("_nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], Rational] | None = None):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        clean: dict[DegreeVector, Fraction] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != nvars:
                raise ValueError(f"degree vector {alpha} does not have length {nvars}")
            if any(a < 0 for a in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            c = Fraction(c)
            if c:
                clean[alpha] = clean.get(alpha, Fraction(0)) + c
        self._nvars = nvars
        self._terms = MappingProxyType({a: c for a, c in clean.items() if c})
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c: Rational, nvars: int = 1) -> Polynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, alpha: Sequence[int], c: Rational = 1) -> Polynomial:
        return cls(len(alpha), {tuple(alpha): c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> Polynomial:
        """The polynomial ``x_i`` (1-based index, matching the text form)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable index {i} outside 1..{nvars}")
        alpha = [0] * nvars
        alpha[i - 1] = 1
        return cls(nvars, {tuple(alpha): 1})

    # -- accessors ----------------------------------------------------------
    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Mapping[DegreeVector, Fraction]:
        return self._terms

    @property
    def support(self) -> tuple[DegreeVector, ...]:
        """Exponent vectors with nonzero coefficient, in graded-lex order."""
        return tuple(sorted(self._terms, key=monomial_key))

    def coefficient(self, alpha: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(alpha), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        # zero polynomial has degree 0 by convention
        return max((sum(a) for a in self._terms), default=0)

    @property
    def min_degree(self) -> int:
        return min((sum(a) for a in self._terms), default=0)

    def __len__(self) -> int:
        return len(self._terms)

    def __call__(self, *x: Rational) -> Fraction:
        if len(x) != self._nvars:
            raise ValueError(f"expected {self._nvars} arguments, got {len(x)}")
        x = tuple(Fraction(v) for v in x)
        total = Fraction(0)
        for alpha, c in self._terms.items():
            term = c
            for xi, ai in zip(x, alpha):
                if ai:
                    term *= xi**ai
            total += term
        return total

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other._nvars != self._nvars:
                raise ValueError(
                    f"variable count mismatch: {self._nvars} vs {other._nvars}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self._nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for a, c in other._terms.items():
            terms[a] = terms.get(a, Fraction(0)) + c
        return Polynomial(self._nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self._nvars, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[DegreeVector, Fraction] = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return Polynomial(self._nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1, self._nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._nvars == other._nvars and dict(self._terms) == dict(other._terms)
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self._nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self._nvars}, {format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<decimal>\d+\.\d*|\.\d+)
  | (?P<int>\d+)
  | (?P<var>x)
  | (?P<op>[-+*/^])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, nvars: int | None):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.nvars = nvars
        self.max_index = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise PolynomialSyntaxError(f"expected {want}, found {got!r}", tok[2])
        return tok

    def poly(self) -> list[tuple[Fraction, dict[int, int]]]:
        if self.peek()[0] == "end":
            raise PolynomialSyntaxError("empty input", 0)
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        terms = [self.term(sign)]
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = 1 if self.take()[1] == "+" else -1
            terms.append(self.term(sign))
        tok = self.peek()
        if tok[0] != "end":
            raise PolynomialSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return terms

    def term(self, sign: int) -> tuple[Fraction, dict[int, int]]:
        kind = self.peek()[0]
        powers: dict[int, int] = {}
        if kind in ("int", "decimal"):
            coeff = self.coeff()
        elif kind == "var":
            coeff = Fraction(1)
            self.varpow(powers)
        else:
            tok = self.peek()
            raise PolynomialSyntaxError(
                f"expected a term, found {tok[1] or 'end of input'!r}", tok[2]
            )
        while self.peek()[:2] == ("op", "*"):
            self.take()
            self.varpow(powers)
        return sign * coeff, powers

    def coeff(self) -> Fraction:
        kind, text, where = self.take()
        if kind == "decimal":
            return Fraction(text)
        num = int(text)
        if self.peek()[:2] == ("op", "/"):
            self.take()
            _, den_text, den_pos = self.expect("int")
            den = int(den_text)
            if den == 0:
                raise PolynomialSyntaxError("zero denominator", den_pos)
            return Fraction(num, den)
        return Fraction(num)

    def varpow(self, powers: dict[int, int]) -> None:
        self.expect("var")
        _, idx_text, idx_pos = self.expect("int")
        index = int(idx_text)
        if index < 1:
            raise PolynomialSyntaxError("variable index must be >= 1", idx_pos)
        if self.nvars is not None and index > self.nvars:
            raise PolynomialSyntaxError(
                f"variable x{index} exceeds declared nvars={self.nvars}", idx_pos
            )
        exp = 1
        if self.peek()[:2] == ("op", "^"):
            self.take()
            _, exp_text, exp_pos = self.expect("int")
            exp = int(exp_text)
            if exp < 1:
                raise PolynomialSyntaxError("exponent must be >= 1", exp_pos)
        self.max_index = max(self.max_index, index)
        powers[index] = powers.get(index, 0) + exp


def parse_polynomial(text: str, nvars: int | None = None) -> Polynomial:
    """Parse polynomial text; like terms are merged and zero terms dropped.

    ``nvars`` defaults to the largest variable index seen (1 for constants).
    """
    if nvars is not None and nvars < 1:
        raise ValueError("nvars must be positive")
    parser = _Parser(text, nvars)
    raw = parser.poly()
    n = nvars if nvars is not None else max(parser.max_index, 1)
    terms: dict[DegreeVector, Fraction] = {}
    for c, powers in raw:
        alpha = [0] * n
        for i, e in powers.items():
            alpha[i - 1] += e
        key = tuple(alpha)
        terms[key] = terms.get(key, Fraction(0)) + c
    return Polynomial(n, terms)


# -- printing ----------------------------------------------------------------

def _monomial_text(alpha: DegreeVector) -> str:
    parts = []
    for i, e in enumerate(alpha, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text, terms in descending graded-lex order."""
    if p.is_zero():
        return "0"
    out = []
    for k, alpha in enumerate(sorted(p.terms, key=monomial_key, reverse=True)):
        c = p.terms[alpha]
        mono = _monomial_text(alpha)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# -- ring helpers ------------------------------------------------------------

def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.nvars != q.nvars:
        raise ValueError(f"variable count mismatch: {p.nvars} vs {q.nvars}")
    return p * q


def sum_of_squares(fs: Iterable[Polynomial]) -> Polynomial:
    """Return ``sum(f**2 for f in fs)``; the list must be non-empty."""
    fs = list(fs)
    if not fs:
        raise ValueError("sum_of_squares needs at least one polynomial")
    nvars = fs[0].nvars
    total = Polynomial(nvars)
    for f in fs:
        if f.nvars != nvars:
            raise ValueError(f"variable count mismatch: {nvars} vs {f.nvars}")
        total = total + f * f
    return total


def degree(p: Polynomial) -> int:
    return p.degree
