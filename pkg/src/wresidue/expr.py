"""Symbolic report expressions: Laurent polynomials over a small symbol set.

Symbols are plain names (``a``, ``b``, ``c``, ``xi_n``, ``pi``, ``Vol``) or
indexed sphere symbols (``S(d)`` for vol(S^d), ``Omega(k)`` for the published
Omega_k notation). Coefficients are GaussianRationals; ``i`` is a coefficient,
not a symbol.

Rendering pulls out a common factor of transcendental symbols and a
rational content, giving forms like ``(-1/16)*(40*a - 11*b)*pi*S(4)``.
``parse(render(e)) == e`` holds for every expression.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction

from .exact import GaussianRational, ParamPoly, ZERO_GR, ONE_GR, I_GR

# render order; anything else sorts after, alphabetically
_ORDER = {"a": 0, "b": 1, "c": 2, "xi_n": 3, "pi": 10, "S": 11, "Omega": 12, "Vol": 13}
_TRANSCENDENTAL = {"pi", "S", "Omega", "Vol"}


class ExprParseError(ValueError):
    pass


def _base(name: str) -> str:
    return name.split("(", 1)[0]


def _sym_key(name: str):
    base = _base(name)
    idx = name[len(base) + 1:-1] if "(" in name else ""
    return (_ORDER.get(base, 50), base, int(idx) if idx else -1)


class Expr:
    """Immutable sum of coefficient * monomial; monomial = sorted ((name, exp), ...)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if c:
                mono = tuple(sorted(((s, e) for s, e in mono if e), key=lambda t: _sym_key(t[0])))
                clean[mono] = clean.get(mono, ZERO_GR) + c
                if not clean[mono]:
                    del clean[mono]
        self.terms = clean

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls) -> "Expr":
        return cls()

    @classmethod
    def const(cls, c) -> "Expr":
        return cls({(): c})

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "Expr":
        if power == 0:
            return cls.const(1)
        return cls({((name, power),): 1})

    @classmethod
    def sphere(cls, d: int) -> "Expr":
        return cls.symbol(f"S({d})")

    @classmethod
    def omega(cls, k: int) -> "Expr":
        return cls.symbol(f"Omega({k})")

    @classmethod
    def from_param_poly(cls, p: ParamPoly) -> "Expr":
        terms = {}
        for (i, j), c in p.terms.items():
            terms[(("a", i), ("b", j))] = c
        return cls(terms)

    @classmethod
    def coerce(cls, x) -> "Expr":
        if isinstance(x, Expr):
            return x
        if isinstance(x, ParamPoly):
            return cls.from_param_poly(x)
        return cls.const(x)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = Expr.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO_GR) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Expr._raw(out)

    __radd__ = __add__

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    def __neg__(self):
        return Expr._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Expr.coerce(other))

    def __rsub__(self, other):
        return Expr.coerce(other) - self

    def __mul__(self, other):
        other = Expr.coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                powers = dict(m1)
                for s, e in m2:
                    powers[s] = powers.get(s, 0) + e
                mono = tuple(sorted(((s, e) for s, e in powers.items() if e),
                                    key=lambda t: _sym_key(t[0])))
                s = out.get(mono, ZERO_GR) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return Expr._raw(out)

    __rmul__ = __mul__

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "Expr":
        if not self.is_monomial():
            raise ZeroDivisionError("only single-term expressions can be inverted")
        (mono, c), = self.terms.items()
        return Expr._raw({tuple((s, -e) for s, e in mono): c.inverse()})

    def __truediv__(self, other):
        return self * Expr.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Expr.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Expr.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = Expr.coerce(other)
        except TypeError:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- queries --------------------------------------------------------
    def symbols(self) -> set[str]:
        return {s for m in self.terms for s, _ in m}

    def coefficient_of(self, factor: "Expr") -> "Expr":
        """Divide by a monomial factor; raises if some term does not contain it."""
        q = self / factor
        for mono in q.terms:
            for s, e in mono:
                if e < 0 and _base(s) in _TRANSCENDENTAL:
                    raise ValueError(f"{self} is not a multiple of {factor}")
        return q

    def to_param_poly(self) -> ParamPoly:
        terms = {}
        for mono, c in self.terms.items():
            d = dict(mono)
            if set(d) - {"a", "b"} or any(e < 0 for e in d.values()):
                raise ValueError(f"{self} is not a polynomial in a, b")
            terms[(d.get("a", 0), d.get("b", 0))] = c
        return ParamPoly(terms)

    def substitute(self, name: str, value) -> "Expr":
        value = Expr.coerce(value)
        out = Expr()
        for mono, c in self.terms.items():
            term = Expr.const(c)
            for s, e in mono:
                term = term * (value ** e if s == name else Expr.symbol(s, e))
            out = out + term
        return out

    def evaluate(self, env: dict) -> complex:
        """Numeric value; ``env`` maps names to numbers. S(d) and pi have defaults."""
        total = 0j
        for mono, c in self.terms.items():
            v = complex(c)
            for s, e in mono:
                v *= _numeric_symbol(s, env) ** e
            total += v
        return total

    # -- rendering ------------------------------------------------------
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Expr({render(self)!r})"


def sphere_volume(d: int) -> float:
    """vol(S^d) = 2 pi^((d+1)/2) / Gamma((d+1)/2)."""
    return 2 * math.pi ** ((d + 1) / 2) / math.gamma((d + 1) / 2)


def published_omega(k: int) -> float:
    """The published Omega_k = 2 pi^(k/2) / Gamma(k/2)."""
    return 2 * math.pi ** (k / 2) / math.gamma(k / 2)


def _numeric_symbol(name: str, env: dict) -> complex:
    if name in env:
        return env[name]
    if name == "pi":
        return math.pi
    m = re.fullmatch(r"S\((\d+)\)", name)
    if m:
        return sphere_volume(int(m.group(1)))
    m = re.fullmatch(r"Omega\((\d+)\)", name)
    if m:
        return published_omega(int(m.group(1)))
    raise KeyError(f"no numeric value for symbol {name}")


def _render_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _render_coeff(c: GaussianRational) -> tuple[str, str]:
    """Returns (sign, magnitude-string) with '' meaning unit magnitude."""
    if c.im == 0:
        sign = "-" if c.re < 0 else "+"
        mag = abs(c.re)
        if mag == 1:
            return sign, ""
        s = _render_rational(mag)
        return sign, (f"({s})" if "/" in s else s)
    if c.re == 0:
        sign = "-" if c.im < 0 else "+"
        mag = abs(c.im)
        if mag == 1:
            return sign, "i"
        s = _render_rational(mag)
        return sign, (f"({s})*i" if "/" in s else f"{s}*i")
    sign = "+"
    re_s = _render_rational(c.re)
    im_sign = "-" if c.im < 0 else "+"
    im_mag = abs(c.im)
    im_s = "i" if im_mag == 1 else f"{_render_rational(im_mag)}*i"
    return sign, f"({re_s} {im_sign} {im_s})"


def _render_mono(mono) -> str:
    parts = []
    for s, e in mono:
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


def _render_sum(terms: list) -> str:
    pieces = []
    for mono, c in terms:
        sign, mag = _render_coeff(c)
        if not mono and mag.startswith("(") and "*" not in mag and " " not in mag:
            mag = mag[1:-1]
        body = "*".join(p for p in (mag, _render_mono(mono)) if p) or "1"
        if not pieces:
            pieces.append(("-" if sign == "-" else "") + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


def _ordered(terms: dict) -> list:
    def key(item):
        mono = item[0]
        if not mono:
            return (0, ())
        return (1, tuple((_sym_key(s), -e) for s, e in mono))
    return sorted(terms.items(), key=key)


def _content(coeffs) -> Fraction:
    nums, dens = [], []
    for c in coeffs:
        for part in (c.re, c.im):
            if part:
                nums.append(abs(part.numerator))
                dens.append(part.denominator)
    g = 0
    for x in nums:
        g = math.gcd(g, x)
    lcm = 1
    for d in dens:
        lcm = lcm * d // math.gcd(lcm, d)
    return Fraction(g, lcm)


def render(e: Expr) -> str:
    if not e.terms:
        return "0"
    # common transcendental factor: symbols present in every term
    common: dict = {}
    first = True
    for mono in e.terms:
        d = {s: x for s, x in mono if _base(s) in _TRANSCENDENTAL and x > 0}
        if first:
            common = d
            first = False
        else:
            common = {s: min(x, d[s]) for s, x in common.items() if s in d}
    if not common:
        return _render_sum(_ordered(e.terms))
    factor = Expr({tuple(common.items()): 1})
    rest = e / factor
    terms = _ordered(rest.terms)
    g = _content([c for _, c in terms])
    lead = terms[0][1]
    lead_sign = (lead.re if lead.re else lead.im) < 0
    if lead_sign:
        g = -g
    reduced = [(m, c * (1 / g)) for m, c in terms]
    pieces = []
    if g == -1:
        prefix = "-"
    elif g == 1:
        prefix = ""
    else:
        s = _render_rational(g)
        pieces.append(f"({s})" if "/" in s else s)
        prefix = ""
    inner = _render_sum(reduced)
    if len(reduced) > 1:
        pieces.append(f"({inner})")
    elif inner != "1":
        pieces.append(inner)
    pieces.append(_render_mono(tuple(sorted(common.items(), key=lambda t: _sym_key(t[0])))))
    return prefix + "*".join(pieces)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|(S\(\d+\)|Omega\(\d+\)|[A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        pos = m.end()
        if m.group(1):
            out.append(("num", int(m.group(1))))
        elif m.group(2):
            out.append(("name", m.group(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprParseError(f"unexpected character {ch!r}")
            out.append(("op", ch))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ExprParseError(f"expected {value or kind}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def parse(self) -> Expr:
        if not self.toks:
            raise ExprParseError("empty expression")
        e = self.sum()
        if self.pos != len(self.toks):
            raise ExprParseError(f"trailing input at token {self.peek()[1]!r}")
        return e

    def sum(self) -> Expr:
        e = self.product()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.product()
            e = e + t if op == "+" else e - t
        return e

    def product(self) -> Expr:
        e = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            t = self.unary()
            e = e * t if op == "*" else e / t
        return e

    def unary(self) -> Expr:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            if self.peek() == ("op", "("):
                self.take()
                neg = self.peek() == ("op", "-")
                if neg:
                    self.take()
                k = self.take("num")[1]
                self.take("op", ")")
                sign *= -1 if neg else 1
            else:
                k = self.take("num")[1]
            return base ** (sign * k)
        return base

    def atom(self) -> Expr:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return Expr.const(val)
        if kind == "name":
            self.take()
            if val == "i":
                return Expr.const(I_GR)
            return Expr.symbol(val)
        if (kind, val) == ("op", "("):
            self.take()
            e = self.sum()
            self.take("op", ")")
            return e
        raise ExprParseError(f"unexpected token {val!r}")


def parse(text: str) -> Expr:
    return _Parser(text).parse()


A_EXPR = Expr.symbol("a")
B_EXPR = Expr.symbol("b")
PI = Expr.symbol("pi")
VOL = Expr.symbol("Vol")
ONE_EXPR = Expr.const(ONE_GR)
