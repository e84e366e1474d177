"""Exact sparse polynomials over Q in OI-indexed variables x[i; pi].

A polynomial lives in a fixed width w: every variable (i, pi) has
pi.target == w.  Monomials are tuples of (Variable, exponent) pairs sorted by
variable; coefficients are `fractions.Fraction` and never zero.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from .errors import MissingAssignmentError, ParseError, WidthMismatchError
from .oi_cat import OIMorphism, compose


class Variable(NamedTuple):
    factor: int
    morphism: OIMorphism

    def __str__(self):
        return f"x[{self.factor};({','.join(map(str, self.morphism.image))})]"

    def push(self, eps: OIMorphism) -> "Variable":
        return Variable(self.factor, compose(eps, self.morphism))


class _AnyDegree:
    """Degree of the zero polynomial: compatible with every degree."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "any"


ANY_DEGREE = _AnyDegree()


def _as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def _mul_monomials(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


class Polynomial:
    __slots__ = ("width", "terms", "_hash")

    def __init__(self, width: int, terms=None):
        self.width = width
        self.terms = {} if terms is None else {m: c for m, c in terms.items() if c != 0}
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, width: int) -> "Polynomial":
        return cls(width)

    @classmethod
    def constant(cls, c, width: int) -> "Polynomial":
        c = _as_fraction(c)
        return cls(width, {(): c} if c else None)

    @classmethod
    def var(cls, v: Variable, width: int | None = None) -> "Polynomial":
        w = v.morphism.target
        if width is not None and width != w:
            raise WidthMismatchError(f"variable {v} does not live in width {width}")
        return cls(w, {((v, 1),): Fraction(1)})

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.width == other.width and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.width, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.width != self.width:
                raise WidthMismatchError(f"width {self.width} vs {other.width}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.width)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial(self.width, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.width, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mul_monomials(m1, m2)
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Polynomial(self.width, terms)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial(self.width)
        return Polynomial(self.width, {m: c * a for m, a in self.terms.items()})

    def __pow__(self, e: int):
        result = Polynomial.constant(1, self.width)
        for _ in range(e):
            result = result * self
        return result

    # -- text ---------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _monomial_sort_key(mc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = "*".join(f"{v}^{e}" if e > 1 else str(v) for v, e in m)
            if not body:
                body = _fmt_rational(a)
            elif a != 1:
                body = f"{_fmt_rational(a)}*{body}"
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Polynomial(w={self.width}, {self})"


def _monomial_sort_key(m):
    return (sum(e for _, e in m), tuple((v.factor, v.morphism.image, e) for v, e in m))


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# -- functoriality, evaluation, grading --------------------------------------


def push_forward(p: Polynomial, eps: OIMorphism) -> Polynomial:
    """The algebra map A(eps): x[i; pi] -> x[i; eps o pi]."""
    if p.width != eps.source:
        raise WidthMismatchError(f"polynomial of width {p.width} pushed along {eps}")
    # eps is monotone, so pushed monomials stay sorted
    terms = {tuple((v.push(eps), e) for v, e in m): c for m, c in p.terms.items()}
    return Polynomial(eps.target, terms)


def evaluate(p: Polynomial, point) -> Fraction:
    total = Fraction(0)
    for m, c in p.terms.items():
        value = c
        for v, e in m:
            try:
                value *= _as_fraction(point[v]) ** e
            except KeyError:
                raise MissingAssignmentError(f"no value assigned to {v}") from None
        total += value
    return total


def _deg(v, grading):
    if grading is None:
        return 1
    return grading(v) if callable(grading) else grading[v]


def degree(p: Polynomial, grading=None):
    """Maximal total degree of a term; ANY_DEGREE for the zero polynomial.

    `grading` maps a Variable to its degree (callable or mapping); default 1.
    """
    if not p.terms:
        return ANY_DEGREE
    return max(sum(_deg(v, grading) * e for v, e in m) for m in p.terms)


def is_homogeneous(p: Polynomial, grading=None) -> bool:
    degs = {sum(_deg(v, grading) * e for v, e in m) for m in p.terms}
    return len(degs) <= 1


# -- matrices ----------------------------------------------------------------


def determinant(matrix) -> Polynomial | Fraction:
    """Determinant by Laplace expansion along rows, memoized on column subsets.

    Entries are Polynomials (or plain rationals); the 0x0 determinant is 1.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    memo = {}

    def minor(row, cols):
        # det of rows row..n-1 restricted to cols
        if row == n:
            return 1
        if cols in memo:
            return memo[cols]
        total = 0
        for pos, c in enumerate(cols):
            a = matrix[row][c]
            if not a:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if not sub:
                continue
            term = a * sub
            total = total + term if pos % 2 == 0 else total - term
        memo[cols] = total
        return total

    result = minor(0, tuple(range(n)))
    widths = {a.width for row in matrix for a in row if isinstance(a, Polynomial)}
    if widths:
        if len(widths) > 1:
            raise WidthMismatchError(f"matrix entries live in widths {sorted(widths)}")
        (w,) = widths
        return result if isinstance(result, Polynomial) else Polynomial.constant(result, w)
    return Fraction(result)


def matmul(A, B, width: int):
    """Product of polynomial matrices given as lists of rows."""
    if not A or not B:
        rows = len(A)
        cols = len(B[0]) if B else 0
        return [[Polynomial.zero(width) for _ in range(cols)] for _ in range(rows)]
    inner = len(B)
    if any(len(row) != inner for row in A):
        raise ValueError("matrix dimensions do not chain")
    cols = len(B[0])
    out = []
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a]
        new_row = []
        for j in range(cols):
            acc = Polynomial.zero(width)
            for k, a in nz:
                b = B[k][j]
                if b:
                    acc = acc + a * b
            new_row.append(acc)
        out.append(new_row)
    return out


def evaluate_matrix(matrix, point):
    return [[evaluate(a, point) for a in row] for row in matrix]


# -- parsing -----------------------------------------------------------------

_VAR_RE = re.compile(r"x\[(\d+);\(([\d,\s]*)\)\](?:\^(\d+))?")
_NUM_RE = re.compile(r"\d+(?:/\d+)?")


def parse_variable(text: str, width: int) -> Variable:
    m = _VAR_RE.fullmatch(text.strip())
    if m is None or m.group(3):
        raise ParseError(f"cannot parse variable {text!r}")
    return _make_variable(m, width)


def _make_variable(m, width):
    body = m.group(2).strip()
    image = tuple(int(t) for t in body.split(",")) if body else ()
    try:
        return Variable(int(m.group(1)), OIMorphism(len(image), width, image))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_polynomial(text: str, width: int) -> Polynomial:
    """Inverse of str(Polynomial): "c1*m1 + c2*m2 - ...", rationals as p/q."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    result = Polynomial.zero(width)
    pos = 0
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif pos:
            raise ParseError(f"expected '+' or '-' at offset {pos} in {text!r}")
        end = pos
        while end < len(s) and s[end] not in "+-":
            end += 1
        term = s[pos:end]
        if not term:
            raise ParseError(f"empty term at offset {pos} in {text!r}")
        coeff = Fraction(sign)
        mono = Polynomial.constant(1, width)
        for factor in term.split("*"):
            if _NUM_RE.fullmatch(factor):
                coeff *= Fraction(factor)
                continue
            m = _VAR_RE.fullmatch(factor)
            if m is None:
                raise ParseError(f"cannot parse factor {factor!r} in {text!r}")
            v = _make_variable(m, width)
            mono = mono * Polynomial.var(v) ** int(m.group(3) or 1)
        result = result + mono.scale(coeff)
        pos = end
    return result
