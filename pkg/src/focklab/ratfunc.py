"""Rational-function differential fields in named real parameters.

Elements are quotients of sparse multivariate polynomials over Q(sqrt(-1)).
The parameters are treated as real: conjugation fixes them and conjugates
coefficients.  There is no general multivariate gcd; normalization cancels
scalar content, common monomial factors and opportunistic exact divisions,
which keeps the quotients appearing in the polarized-family computations
(denominators are monomials in the imaginary parts) fully reduced.  Equality
never needs gcd: it is decided by cross multiplication.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .scalars import GaussianRational, conj as _conj_scalar


class DifferentialField:
    """A field Q(sqrt(-1))(p_1, ..., p_n) with declared real parameter names."""

    def __init__(self, params):
        params = tuple(params)
        if len(set(params)) != len(params):
            raise ValueError("duplicate parameter names")
        self.params = params
        self.nvars = len(params)
        self._zero_exp = (0,) * self.nvars
        self.zero = RationalFunction(self, Polynomial(self, {}), self._one_poly())
        self.one = RationalFunction(self, self._one_poly(), self._one_poly())
        self.i = RationalFunction(
            self,
            Polynomial(self, {self._zero_exp: GaussianRational(0, 1)}),
            self._one_poly(),
        )

    def _one_poly(self):
        return Polynomial(self, {self._zero_exp: GaussianRational(1)})

    def var(self, name: str) -> "RationalFunction":
        k = self.params.index(name)
        exp = tuple(1 if j == k else 0 for j in range(self.nvars))
        return RationalFunction(
            self, Polynomial(self, {exp: GaussianRational(1)}), self._one_poly()
        )

    def const(self, c) -> "RationalFunction":
        c = GaussianRational.coerce(c)
        num = Polynomial(self, {self._zero_exp: c} if c else {})
        return RationalFunction(self, num, self._one_poly())

    def parse(self, text: str) -> "RationalFunction":
        return _ExprParser(self, text).parse()

    def __eq__(self, other):
        return isinstance(other, DifferentialField) and self.params == other.params

    def __hash__(self):
        return hash(self.params)

    def __repr__(self):
        return f"DifferentialField(params={self.params})"


class Polynomial:
    """Sparse multivariate polynomial: exponent tuple -> GaussianRational."""

    __slots__ = ("field", "terms")

    def __init__(self, field: DifferentialField, terms: dict):
        self.field = field
        self.terms = {e: c for e, c in terms.items() if c}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, GaussianRational(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(self.field, out)

    def __neg__(self):
        return Polynomial(self.field, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return Polynomial(self.field, {e: c * other for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, GaussianRational(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial(self.field, out)

    def conj(self):
        return Polynomial(self.field, {e: c.conj() for e, c in self.terms.items()})

    def derivative(self, k: int) -> "Polynomial":
        out: dict = {}
        for e, c in self.terms.items():
            if e[k] == 0:
                continue
            e2 = tuple(v - 1 if j == k else v for j, v in enumerate(e))
            s = out.get(e2, GaussianRational(0)) + c * e[k]
            if s:
                out[e2] = s
            else:
                out.pop(e2, None)
        return Polynomial(self.field, out)

    def evaluate(self, point: dict) -> GaussianRational:
        vals = [GaussianRational.coerce(point[p]) for p in self.field.params]
        total = GaussianRational(0)
        for e, c in self.terms.items():
            term = c
            for v, p in zip(vals, e):
                if p:
                    term = term * v**p
            total = total + term
        return total

    def monomial_content(self):
        """Componentwise min exponent over all terms (0-tuple if empty)."""
        if not self.terms:
            return self.field._zero_exp
        mins = None
        for e in self.terms:
            mins = e if mins is None else tuple(map(min, mins, e))
        return mins

    def shift_down(self, exp):
        if exp == self.field._zero_exp:
            return self
        return Polynomial(
            self.field,
            {tuple(a - b for a, b in zip(e, exp)): c for e, c in self.terms.items()},
        )

    def _lead(self):
        # lex-largest exponent
        e = max(self.terms)
        return e, self.terms[e]

    def divide_exact(self, divisor: "Polynomial"):
        """Return self/divisor if the division is exact, else None."""
        if not divisor:
            raise ZeroDivisionError("polynomial division by zero")
        rem = self
        quot: dict = {}
        while rem:
            e, c = rem._lead()
            de, dc = divisor._lead()
            qe = tuple(a - b for a, b in zip(e, de))
            if any(v < 0 for v in qe):
                return None
            qc = c / dc
            quot[qe] = quot.get(qe, GaussianRational(0)) + qc
            rem = rem - divisor * Polynomial(self.field, {qe: qc})
        return Polynomial(self.field, quot)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"{n}^{p}" if p > 1 else n
                for n, p in zip(self.field.params, e)
                if p
            )
            cs = str(c)
            if mono:
                if cs == "1":
                    bits.append(mono)
                elif cs == "-1":
                    bits.append(f"-{mono}")
                else:
                    cs = f"({cs})" if ("+" in cs[1:] or "-" in cs[1:]) else cs
                    bits.append(f"{cs}*{mono}")
            else:
                bits.append(f"({cs})" if ("+" in cs[1:] or "-" in cs[1:]) else cs)
        out = bits[0]
        for b in bits[1:]:
            out += f" + {b}" if not b.startswith("-") else f" - {b[1:]}"
        return out


class RationalFunction:
    """Quotient of polynomials over Q(sqrt(-1)) in declared real parameters."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num: Polynomial, den: Polynomial):
        if not den:
            raise ZeroDivisionError("zero denominator")
        num, den = _normalize(num, den)
        self.field = field
        self.num = num
        self.den = den

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                raise ValueError("mixing different differential fields")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.field.const(other)
        return None

    # -- ring/field ops ----------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return not (self.num * other.den - other.num * self.den)

    def __hash__(self):
        # hash constants compatibly with their value; general elements by id-ish key
        if self.is_constant:
            return hash(self.constant_value())
        return hash((self.num, self.den))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.field, self.num + other.num, self.den)
        return RationalFunction(
            self.field, self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.field, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.field, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (self.field.one / self) ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- differential/involution structure ---------------------------------

    def conj(self):
        return RationalFunction(self.field, self.num.conj(), self.den.conj())

    def derivative(self, param: str) -> "RationalFunction":
        k = self.field.params.index(param)
        num = self.num.derivative(k) * self.den - self.num * self.den.derivative(k)
        return RationalFunction(self.field, num, self.den * self.den)

    def evaluate(self, point: dict) -> GaussianRational:
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("denominator vanishes at sample point")
        return self.num.evaluate(point) / d

    @property
    def is_constant(self) -> bool:
        zero = self.field._zero_exp
        return (not self.num or set(self.num.terms) == {zero}) and set(
            self.den.terms
        ) == {zero}

    def constant_value(self) -> GaussianRational:
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        if not self.num:
            return GaussianRational(0)
        zero = self.field._zero_exp
        return self.num.terms[zero] / self.den.terms[zero]

    def __str__(self):
        if not self.num:
            return "0"
        ns = str(self.num)
        if self.den == self.field._one_poly():
            return ns
        ds = str(self.den)
        ns = f"({ns})" if " " in ns else ns
        ds = f"({ds})" if " " in ds else ds
        return f"{ns}/{ds}"

    __repr__ = __str__


def _normalize(num: Polynomial, den: Polynomial):
    field = den.field
    if not num:
        return num, field._one_poly()
    # cancel common monomial factor
    cm = tuple(map(min, num.monomial_content(), den.monomial_content()))
    if any(cm):
        num, den = num.shift_down(cm), den.shift_down(cm)
    # opportunistic exact division
    q = num.divide_exact(den)
    if q is not None:
        return q, field._one_poly()
    # make denominator lex-monic
    _, lead = den._lead()
    if lead != GaussianRational(1):
        inv = lead.inverse()
        num, den = num * inv, den * inv
    return num, den


def conj(x):
    return _conj_scalar(x)


# -- tiny expression parser -------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


class _ExprParser:
    """Recursive-descent parser for +,-,*,/,^,(), names, integers, i."""

    def __init__(self, field: DifferentialField, text: str):
        self.field = field
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"bad expression near {text[pos:]!r}")
            pos = m.end()
            if m.group("num"):
                self.tokens.append(("num", Fraction(m.group("num"))))
            elif m.group("name"):
                self.tokens.append(("name", m.group("name")))
            else:
                self.tokens.append(("op", m.group("op")))
        self.k = 0

    def _peek(self):
        return self.tokens[self.k] if self.k < len(self.tokens) else (None, None)

    def _next(self):
        tok = self._peek()
        self.k += 1
        return tok

    def parse(self):
        v = self._sum()
        if self.k != len(self.tokens):
            raise ValueError("trailing tokens in expression")
        return v

    def _sum(self):
        kind, val = self._peek()
        neg = False
        if (kind, val) == ("op", "-"):
            self._next()
            neg = True
        elif (kind, val) == ("op", "+"):
            self._next()
        v = self._product()
        if neg:
            v = -v
        while True:
            kind, val = self._peek()
            if (kind, val) == ("op", "+"):
                self._next()
                v = v + self._product()
            elif (kind, val) == ("op", "-"):
                self._next()
                v = v - self._product()
            else:
                return v

    def _product(self):
        v = self._power()
        while True:
            kind, val = self._peek()
            if (kind, val) == ("op", "*"):
                self._next()
                v = v * self._power()
            elif (kind, val) == ("op", "/"):
                self._next()
                v = v / self._power()
            else:
                return v

    def _power(self):
        v = self._atom()
        kind, val = self._peek()
        if (kind, val) == ("op", "^"):
            self._next()
            kind, val = self._next()
            sign = 1
            if (kind, val) == ("op", "-"):
                sign = -1
                kind, val = self._next()
            if kind != "num" or val.denominator != 1:
                raise ValueError("exponent must be an integer")
            return v ** (sign * val.numerator)
        return v

    def _atom(self):
        kind, val = self._next()
        if kind == "num":
            return self.field.const(GaussianRational(val))
        if kind == "name":
            if val in ("i", "I"):
                return self.field.i
            return self.field.var(val)
        if (kind, val) == ("op", "("):
            v = self._sum()
            kind, val = self._next()
            if (kind, val) != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return v
        if (kind, val) == ("op", "-"):
            return -self._atom()
        raise ValueError(f"unexpected token {val!r}")
