"""Exact rational scalars and sparse multivariate polynomials.

Scalars are ``fractions.Fraction``.  An ``MPoly`` maps monomials to nonzero
Fraction coefficients; a monomial is a sorted tuple of ``(name, exponent)``.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Mapping, Union

Rational = Fraction

# fixed vocabulary, in precedence order; other names sort after these
VOCABULARY = ("g", "i", "gB", "c", "d", "c2", "e", "f", "fd", "cliff")
_RANK = {v: n for n, v in enumerate(VOCABULARY)}


def _var_key(name):
    return (_RANK.get(name, len(VOCABULARY)), name)


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, k in m2:
        exps[v] = exps.get(v, 0) + k
    return tuple(sorted(exps.items(), key=lambda t: _var_key(t[0])))


def _mono_degree(m):
    return sum(k for _, k in m)


def _mono_order_key(m):
    # graded lex: total degree first, then exponents in vocabulary order
    exps = dict(m)
    names = sorted(exps, key=_var_key)
    vec = tuple((_var_key(v), -exps[v]) for v in names)
    return (-_mono_degree(m), vec)


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


Scalar = Union[int, Fraction]


class MPoly:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for mono, coef in terms.items():
                coef = to_fraction(coef)
                if coef:
                    mono = tuple(sorted(((v, k) for v, k in mono if k), key=lambda t: _var_key(t[0])))
                    clean[mono] = clean.get(mono, 0) + coef
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def const(cls, x) -> "MPoly":
        return cls({(): x})

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @property
    def terms(self):
        return dict(self._terms)

    def variables(self):
        out = set()
        for m in self._terms:
            out.update(v for v, _ in m)
        return sorted(out, key=_var_key)

    def degree(self, name: str | None = None) -> int:
        if not self._terms:
            return -1
        if name is None:
            return max(_mono_degree(m) for m in self._terms)
        return max(dict(m).get(name, 0) for m in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"polynomial {self} is not constant")
        return self._terms.get((), Fraction(0))

    def coeff(self, name: str, power: int) -> "MPoly":
        """Coefficient of name**power, as a polynomial in the other variables."""
        out = {}
        for m, c in self._terms.items():
            exps = dict(m)
            if exps.get(name, 0) == power:
                exps.pop(name, None)
                key = tuple(sorted(exps.items(), key=lambda t: _var_key(t[0])))
                out[key] = c
        return MPoly._raw(out)

    # arithmetic

    def __add__(self, other):
        other = as_poly(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-as_poly(other))

    def __rsub__(self, other):
        return as_poly(other) - self

    def __mul__(self, other):
        other = as_poly(other)
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MPoly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by a nonzero constant; polynomial division is not offered
        other = as_poly(other)
        if not other.is_constant() or other.is_zero():
            raise ZeroDivisionError("MPoly can only be divided by a nonzero constant")
        k = other.constant_value()
        return MPoly._raw({m: c / k for m, c in self._terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison

    def __eq__(self, other):
        try:
            other = as_poly(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # evaluation

    def eval(self, bindings: Mapping[str, object]) -> "MPoly":
        """Substitute values (scalars or polynomials) for some variables."""
        subs = {k: as_poly(v) for k, v in bindings.items()}
        result = MPoly()
        cache = {}
        for m, c in self._terms.items():
            term = MPoly.const(c)
            rest = []
            for v, k in m:
                if v in subs:
                    key = (v, k)
                    if key not in cache:
                        cache[key] = subs[v] ** k
                    term = term * cache[key]
                else:
                    rest.append((v, k))
            if rest:
                term = term * MPoly._raw({tuple(rest): Fraction(1)})
            result = result + term
        return result

    def value(self, bindings: Mapping[str, object] | None = None) -> Fraction:
        p = self.eval(bindings) if bindings else self
        return p.constant_value()

    def integer_form(self):
        """(denominator D, {monomial: int}) with self == poly / D."""
        den = 1
        for c in self._terms.values():
            den = lcm(den, c.denominator)
        return den, {m: int(c * den) for m, c in self._terms.items()}

    def compile(self, names):
        """Fast numeric evaluator: returns f(*ints) -> Fraction."""
        den, ints = self.integer_form()
        idx = {n: k for k, n in enumerate(names)}
        plan = [(c, [(idx[v], k) for v, k in m]) for m, c in ints.items()]

        def f(*vals):
            total = 0
            for c, mono in plan:
                t = c
                for j, k in mono:
                    t *= vals[j] ** k
                total += t
            return Fraction(total, den)

        return f

    # printing

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: _mono_order_key(t[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for n, (m, c) in enumerate(self.sorted_terms()):
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in sorted(m, key=lambda t: _var_key(t[0]), reverse=True))
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{_fmt(mag)}*{mono}"
            else:
                body = _fmt(mag)
            if n == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"MPoly({str(self)!r})"


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_rational(q) -> str:
    q = to_fraction(q)
    return ("-" if q < 0 else "") + _fmt(abs(q))


def as_poly(x) -> MPoly:
    if isinstance(x, MPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MPoly.const(x)
    if isinstance(x, str):
        return parse_poly(x)
    raise TypeError(f"cannot convert {type(x).__name__} to MPoly")


def var(name: str) -> MPoly:
    return MPoly.var(name)


def variables(*names: str):
    return tuple(MPoly.var(n) for n in names)


def poly_arith(a, b, op: str) -> MPoly:
    a, b = as_poly(a), as_poly(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_eval(p, bindings) -> MPoly:
    return as_poly(p).eval(bindings)


def poly_is_zero(p) -> bool:
    return as_poly(p).is_zero()


def parse_poly(text: str) -> MPoly:
    """Parse the printed form back (and plain expressions with + - * / ^ and parens)."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expr():
        neg = False
        if peek() in ("+", "-"):
            neg = take() == "-"
        acc = term()
        if neg:
            acc = -acc
        while peek() in ("+", "-"):
            op = take()
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while peek() in ("*", "/"):
            op = take()
            f = power()
            acc = acc * f if op == "*" else acc / f
        return acc

    def power():
        base = atom()
        if peek() == "^":
            take()
            exp = take()
            if not exp.isdigit():
                raise ValueError(f"bad exponent {exp!r} in {text!r}")
            base = base ** int(exp)
        return base

    def atom():
        tok = take()
        if tok == "(":
            inner = expr()
            if take() != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return inner
        if tok == "-":
            return -power()
        if tok[0].isdigit():
            return MPoly.const(Fraction(tok))
        if tok[0].isalpha() or tok[0] == "_":
            return MPoly.var(tok)
        raise ValueError(f"unexpected token {tok!r} in {text!r}")

    if not tokens:
        raise ValueError("empty expression")
    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


def _tokenize(text):
    out = []
    k = 0
    while k < len(text):
        ch = text[k]
        if ch.isspace():
            k += 1
        elif ch.isdigit():
            j = k
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(text[k:j])
            k = j
        elif ch.isalpha() or ch == "_":
            j = k
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(text[k:j])
            k = j
        elif ch in "+-*/^()":
            out.append(ch)
            k += 1
        else:
            raise ValueError(f"bad character {ch!r} in {text!r}")
    return out


class Quotient:
    """A formal ratio num/den of polynomials; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = as_poly(num), as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.is_constant():
            k = den.constant_value()
            num, den = num / k, MPoly.const(1)
        self.num = num
        self.den = den

    def __add__(self, other):
        other = as_quotient(other)
        return Quotient(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Quotient(-self.num, self.den)

    def __sub__(self, other):
        return self + (-as_quotient(other))

    def __rsub__(self, other):
        return as_quotient(other) - self

    def __mul__(self, other):
        other = as_quotient(other)
        return Quotient(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_quotient(other)
        return Quotient(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return as_quotient(other) / self

    def __eq__(self, other):
        try:
            other = as_quotient(other)
        except TypeError:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    __hash__ = None

    def eval(self, bindings) -> "Quotient":
        return Quotient(self.num.eval(bindings), self.den.eval(bindings))

    def value(self, bindings=None) -> Fraction:
        q = self.eval(bindings) if bindings else self
        return q.num.constant_value() / q.den.constant_value()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def __str__(self):
        if self.is_constant():
            return fmt_rational(self.value())
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"Quotient({str(self)!r})"


def as_quotient(x) -> Quotient:
    if isinstance(x, Quotient):
        return x
    return Quotient(as_poly(x))
