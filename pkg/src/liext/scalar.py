"""Exact coefficients: rationals and sparse polynomials over the rationals.

A *scalar* is either a :class:`fractions.Fraction` (or ``int``) or a
:class:`Poly` in a declared, ordered tuple of parameter names.  Polynomials
combine only with polynomials over the same parameter tuple; rationals coerce
into any polynomial ring.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Union

__all__ = [
    "Poly",
    "Scalar",
    "ConfigurationError",
    "EvaluationError",
    "ParseError",
    "scalar_add",
    "scalar_mul",
    "scalar_neg",
    "scalar_is_zero",
    "scalar_eval",
    "scalar_subs",
    "scalar_is_constant",
    "as_fraction",
    "parse_scalar",
    "variables",
]


class ConfigurationError(ValueError):
    """Operands were declared over different parameter lists."""


class EvaluationError(ValueError):
    """An assignment does not cover every parameter of a scalar."""


class ParseError(ValueError):
    """Malformed scalar literal."""


_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class Poly:
    """Sparse multivariate polynomial with rational coefficients.

    ``terms`` maps exponent tuples (one entry per declared parameter) to
    nonzero ``Fraction`` coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("params", "terms", "_hash")

    def __init__(self, params, terms=None):
        self.params = tuple(params)
        n = len(self.params)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ConfigurationError(
                    f"exponent vector {exps} does not match parameters {self.params}"
                )
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, params, value) -> Poly:
        return cls(params, {(0,) * len(tuple(params)): value})

    @classmethod
    def var(cls, params, name: str) -> Poly:
        params = tuple(params)
        if name not in params:
            raise ConfigurationError(f"unknown parameter {name!r}; declared {params}")
        exps = tuple(1 if p == name else 0 for p in params)
        return cls(params, {exps: 1})

    # -- coercion -----------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.params != self.params:
                raise ConfigurationError(
                    f"parameter lists differ: {self.params} vs {other.params}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.params, other)
        return NotImplemented

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.params, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.params, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly(self.params)
            return Poly(self.params, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.params, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # division by a nonzero constant only; determinant factors are cleared by callers
        if isinstance(other, Poly):
            if not other.is_constant():
                raise ZeroDivisionError("division by a non-constant polynomial")
            other = other.constant_value()
        other = Fraction(other)
        if not other:
            raise ZeroDivisionError("division by zero")
        return self * (1 / other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(self.params, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.params == other.params and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.params, frozenset(self.terms.items())))
        return self._hash

    # -- evaluation ---------------------------------------------------
    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            used.update(p for p, k in zip(self.params, e) if k)
        return used

    def subs(self, assignment: Mapping[str, object]) -> Poly:
        """Partially evaluate; parameters not in ``assignment`` stay symbolic."""
        vals = [assignment.get(p) for p in self.params]
        out: dict = {}
        for e, c in self.terms.items():
            coeff = Fraction(c)
            rest = []
            for v, k in zip(vals, e):
                if v is None or not k:
                    rest.append(k)
                else:
                    coeff *= Fraction(v) ** k
                    rest.append(0)
            key = tuple(rest)
            out[key] = out.get(key, 0) + coeff
        return Poly(self.params, out)

    def __call__(self, **assignment) -> Fraction:
        return scalar_eval(self, assignment)

    # -- display ------------------------------------------------------
    def _monomial_str(self, exps) -> str:
        parts = []
        for p, k in zip(self.params, exps):
            if k == 1:
                parts.append(p)
            elif k > 1:
                parts.append(f"{p}^{k}")
        return "*".join(parts)

    def sorted_terms(self):
        # graded lex, highest degree first, for stable output
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), [-k for k in t[0]]))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            mono = self._monomial_str(e)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if i == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r}, params={self.params})"


Scalar = Union[Fraction, int, Poly]


def _lift(x: Scalar):
    return Fraction(x) if isinstance(x, int) else x


def scalar_add(x: Scalar, y: Scalar) -> Scalar:
    x, y = _lift(x), _lift(y)
    return y + x if isinstance(y, Poly) and not isinstance(x, Poly) else x + y


def scalar_mul(x: Scalar, y: Scalar) -> Scalar:
    x, y = _lift(x), _lift(y)
    return y * x if isinstance(y, Poly) and not isinstance(x, Poly) else x * y


def scalar_neg(x: Scalar) -> Scalar:
    return -_lift(x)


def scalar_is_zero(x: Scalar) -> bool:
    if isinstance(x, Poly):
        return x.is_zero()
    return x == 0


def scalar_is_constant(x: Scalar) -> bool:
    return not isinstance(x, Poly) or x.is_constant()


def as_fraction(x: Scalar) -> Fraction:
    """Exact rational value of a constant scalar."""
    if isinstance(x, Poly):
        return x.constant_value()
    return Fraction(x)


def variables(x: Scalar) -> set[str]:
    return x.variables() if isinstance(x, Poly) else set()


def scalar_eval(x: Scalar, assignment: Mapping[str, object]) -> Fraction:
    """Evaluate ``x`` at rational values; every occurring parameter must be assigned."""
    if not isinstance(x, Poly):
        return Fraction(x)
    missing = sorted(x.variables() - set(assignment))
    if missing:
        raise EvaluationError(f"no value for parameter(s) {', '.join(missing)}")
    return x.subs(assignment).constant_value()


def scalar_subs(x: Scalar, assignment: Mapping[str, object]) -> Scalar:
    """Partial evaluation; returns a Fraction once nothing symbolic remains."""
    if not isinstance(x, Poly):
        return Fraction(x)
    y = x.subs(assignment)
    return y.constant_value() if y.is_constant() else y


# -- literal parser ---------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - the pattern always matches a char
            break
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num), m.start(1)))
        elif name is not None:
            tokens.append(("name", name, m.start(2)))
        elif op is not None:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r} at column {m.start(3) + 1}")
            tokens.append(("op", op, m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, params):
        self.text = text
        self.params = tuple(params)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[min(self.i, len(self.tokens) - 1)]

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(f"{msg} at column {tok[2] + 1} in {self.text!r}")

    def parse(self):
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()
            rhs = self.unary()
            if op[1] == "*":
                value = value * rhs
            else:
                if not scalar_is_constant(rhs):
                    self.fail("division by a parameter is not supported", op)
                if scalar_is_zero(rhs):
                    self.fail("division by zero", op)
                value = value / as_fraction(rhs)
        return value

    def unary(self):
        tok = self.peek()
        if tok[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if tok[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("exponent must be a non-negative integer", tok)
            base = base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return Fraction(val)
        if kind == "name":
            if val not in self.params:
                self.fail(f"undeclared parameter {val!r}", tok)
            return Poly.var(self.params, val)
        if tok[:2] == ("op", "("):
            value = self.expr()
            if self.take()[:2] != ("op", ")"):
                self.fail("expected ')'")
            return value
        self.fail("unexpected token", tok)


def parse_scalar(text, params=()) -> Scalar:
    """Parse a literal such as ``"3/4"`` or ``"a*y - (1+b)*x"``.

    Results over a nonempty parameter list are always :class:`Poly`;
    with no parameters the result is a ``Fraction``.
    """
    if isinstance(text, (int, Fraction)):
        value = Fraction(text)
    else:
        for p in params:
            if not _NAME.match(p):
                raise ParseError(f"invalid parameter name {p!r}")
        value = _Parser(str(text), params).parse()
    if params:
        if not isinstance(value, Poly):
            value = Poly.const(params, value)
        return value
    return as_fraction(value)
