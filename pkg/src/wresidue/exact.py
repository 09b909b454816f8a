"""Exact arithmetic for the boundary computation.

Three layers, each closed under the operations the boundary cases need:

* ``GaussianRational`` -- p + q*i with rational p, q.
* ``ParamPoly`` -- polynomials in a = phi'(0), b = psi'(0) with Gaussian
  rational coefficients, at most degree one in each parameter.
* ``BoundaryRational`` -- N(xi_n) / ((xi_n - i)^up (xi_n + i)^down) with
  ``ParamPoly`` numerator coefficients.

Nothing here ever touches floating point except the ``evaluate`` helpers.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb


class NonDecaying(ValueError):
    """Raised when the half-line projection is asked for a non-decaying function."""


class NotIntegrable(ValueError):
    """Raised when a real-line integral of a BoundaryRational would diverge."""


class ParamDegreeError(ValueError):
    """A parameter monomial left the {1, a, b, ab} range."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


_F0 = Fraction(0)


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return cls(x)

    def __add__(self, other):
        o = _coerce_gr(other)
        if o is NotImplemented:
            return o
        if not self.im and not o.im:
            return GaussianRational._raw(self.re + o.re, _F0)
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __sub__(self, other):
        o = _coerce_gr(other)
        if o is NotImplemented:
            return o
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = _coerce_gr(other)
        if o is NotImplemented:
            return o
        # fast paths: most coefficients are real or purely imaginary
        if not self.im:
            if not o.im:
                return GaussianRational._raw(self.re * o.re, _F0)
            return GaussianRational._raw(self.re * o.re if o.re else _F0, self.re * o.im)
        if not o.im:
            return GaussianRational._raw(self.re * o.re if self.re else _F0, self.im * o.re)
        return GaussianRational._raw(self.re * o.re - self.im * o.im,
                                     self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = _coerce_gr(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE_GR
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = _coerce_gr(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "-" if self.im < 0 else "+"
        return f"({self.re} {sign} {abs(self.im)}*i)"


def _coerce_gr(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational._raw(Fraction(x), _F0)
    return NotImplemented


ZERO_GR = GaussianRational(0)
ONE_GR = GaussianRational(1)
I_GR = GaussianRational(0, 1)


class ParamPoly:
    """Polynomial in a, b; ``terms`` maps (deg_a, deg_b) to a GaussianRational."""

    __slots__ = ("terms",)
    MAX_DEGREE = 1

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if c:
                if mono[0] > self.MAX_DEGREE or mono[1] > self.MAX_DEGREE or min(mono) < 0:
                    raise ParamDegreeError(
                        f"monomial a^{mono[0]} b^{mono[1]} exceeds the first-jet range")
                clean[mono] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "ParamPoly":
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, c) -> "ParamPoly":
        return cls({(0, 0): c})

    @classmethod
    def coerce(cls, x) -> "ParamPoly":
        if isinstance(x, ParamPoly):
            return x
        return cls.const(x)

    def __add__(self, other):
        if not isinstance(other, ParamPoly):
            other = ParamPoly.const(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono)
            s = c if s is None else s + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return ParamPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-ParamPoly.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ParamPoly):
            g = _coerce_gr(other)
            if g is NotImplemented:
                return NotImplemented
            if not g:
                return ParamPoly._raw({})
            return ParamPoly._raw({m: c * g for m, c in self.terms.items()})
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                mono = (i1 + i2, j1 + j2)
                if mono[0] > self.MAX_DEGREE or mono[1] > self.MAX_DEGREE:
                    raise ParamDegreeError(
                        f"product produced a^{mono[0]} b^{mono[1]}; only first jets of phi, psi "
                        "enter the boundary term")
                s = out.get(mono)
                out[mono] = c1 * c2 if s is None else s + c1 * c2
        return ParamPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        g = GaussianRational.coerce(other).inverse()
        return self * g

    def __eq__(self, other):
        if not isinstance(other, ParamPoly):
            try:
                other = ParamPoly.coerce(other)
            except TypeError:
                return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, deg_a: int, deg_b: int) -> GaussianRational:
        return self.terms.get((deg_a, deg_b), ZERO_GR)

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self.terms)

    def degrees(self) -> set[int]:
        return {i + j for i, j in self.terms}

    def evaluate(self, a, b):
        """Exact value at rational (a, b); floats give a complex result."""
        if isinstance(a, float) or isinstance(b, float):
            return sum(complex(c) * a ** i * b ** j for (i, j), c in self.terms.items())
        a, b = GaussianRational.coerce(a), GaussianRational.coerce(b)
        total = ZERO_GR
        for (i, j), c in self.terms.items():
            total = total + c * a ** i * b ** j
        return total

    def substitute(self, a=None, b=None) -> "ParamPoly":
        """Replace a and/or b by ParamPolys (e.g. b -> c*a is done at the Expr level)."""
        out = ParamPoly()
        for (i, j), c in self.terms.items():
            term = ParamPoly.const(c)
            term = term * (a if a is not None else A) ** i if i else term
            term = term * (b if b is not None else B) ** j if j else term
            out = out + term
        return out

    def __pow__(self, k: int):
        out = ParamPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        return f"ParamPoly({self})"

    def __str__(self):
        from .expr import Expr
        return str(Expr.from_param_poly(self))


A = ParamPoly({(1, 0): 1})
B = ParamPoly({(0, 1): 1})
P_ZERO = ParamPoly()
P_ONE = ParamPoly.const(1)


# ---------------------------------------------------------------------------
# dense polynomials in xi_n with ParamPoly coefficients (index = power)

def _strip(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _padd(p: list, q: list) -> list:
    n = max(len(p), len(q))
    out = []
    for k in range(n):
        if k < len(p) and k < len(q):
            out.append(p[k] + q[k])
        elif k < len(p):
            out.append(p[k])
        else:
            out.append(q[k])
    return _strip(out)


def _pmul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [P_ZERO] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if not x:
            continue
        for j, y in enumerate(q):
            if y:
                out[i + j] = out[i + j] + x * y
    return _strip(out)


def _pscale(p: list, s) -> list:
    return _strip([c * s for c in p])


def _peval(p: list, z: GaussianRational) -> ParamPoly:
    acc = P_ZERO
    for c in reversed(p):
        acc = acc * z + c
    return acc


def _pdiv_linear(p: list, r: GaussianRational) -> list:
    """Quotient of p by (xi - r); caller guarantees exact division."""
    n = len(p) - 1
    q = [P_ZERO] * n
    carry = P_ZERO
    for k in range(n, 0, -1):
        carry = p[k] + carry * r
        q[k - 1] = carry
    return _strip(q)


def _pderiv(p: list) -> list:
    return _strip([p[k] * k for k in range(1, len(p))])


@lru_cache(maxsize=None)
def _linear_power(sign: int, k: int) -> tuple:
    """Coefficients of (xi - sign*i)^k."""
    root = I_GR * sign
    return tuple(ParamPoly.const(comb(k, m) * (-root) ** (k - m)) for m in range(k + 1))


def _taylor_shift(p: list, z: GaussianRational) -> list:
    """Coefficients of p(z + t) in powers of t."""
    out = [P_ZERO] * len(p)
    for k, c in enumerate(p):
        if not c:
            continue
        zp = ONE_GR
        for m in range(k, -1, -1):
            # term C(k, m) z^(k-m) t^m
            out[m] = out[m] + c * (comb(k, m) * zp)
            zp = zp * z
    return out


class BoundaryRational:
    """Rational function of xi_n with poles only at +i (``up``) and -i (``down``).

    Always held in normal form: trailing zero coefficients stripped and no
    factor (xi_n -/+ i) shared between numerator and denominator, so ``==``
    is structural.
    """

    __slots__ = ("num", "up", "down")

    def __init__(self, num=(), up: int = 0, down: int = 0):
        if up < 0 or down < 0:
            raise ValueError("pole orders must be nonnegative")
        p = _strip([ParamPoly.coerce(c) for c in num])
        if not p:
            up = down = 0
        while up and p and not _peval(p, I_GR):
            p = _pdiv_linear(p, I_GR)
            up -= 1
        while down and p and not _peval(p, -I_GR):
            p = _pdiv_linear(p, -I_GR)
            down -= 1
        self.num = tuple(p)
        self.up = up
        self.down = down

    @classmethod
    def const(cls, c) -> "BoundaryRational":
        return cls((ParamPoly.coerce(c),))

    @classmethod
    def xi(cls, k: int = 1) -> "BoundaryRational":
        return cls((P_ZERO,) * k + (P_ONE,))

    @classmethod
    def inv_norm(cls, k: int = 1) -> "BoundaryRational":
        """1 / (1 + xi_n^2)^k."""
        return cls((P_ONE,), k, k)

    @classmethod
    def poly(cls, coeffs) -> "BoundaryRational":
        return cls(tuple(ParamPoly.coerce(c) for c in coeffs))

    @classmethod
    def coerce(cls, x) -> "BoundaryRational":
        if isinstance(x, BoundaryRational):
            return x
        return cls.const(x)

    # -- arithmetic -----------------------------------------------------
    def _lifted(self, up: int, down: int) -> list:
        p = list(self.num)
        if up > self.up:
            p = _pmul(p, list(_linear_power(1, up - self.up)))
        if down > self.down:
            p = _pmul(p, list(_linear_power(-1, down - self.down)))
        return p

    def __add__(self, other):
        if not isinstance(other, BoundaryRational):
            try:
                other = BoundaryRational.const(other)
            except TypeError:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        up, down = max(self.up, other.up), max(self.down, other.down)
        return BoundaryRational(_padd(self._lifted(up, down), other._lifted(up, down)), up, down)

    __radd__ = __add__

    def __neg__(self):
        return BoundaryRational._raw(tuple(-c for c in self.num), self.up, self.down)

    def __sub__(self, other):
        return self + (-BoundaryRational.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, BoundaryRational):
            if not self.num or not other.num:
                return ZERO
            return BoundaryRational(_pmul(list(self.num), list(other.num)),
                                    self.up + other.up, self.down + other.down)
        if isinstance(other, (ParamPoly, GaussianRational, int, Fraction)):
            scaled = _pscale(list(self.num), other)
            if not scaled:
                return ZERO
            # a nonzero scalar cannot create or cancel factors (xi -/+ i),
            # but a ParamPoly factor is not a unit, so renormalize
            if isinstance(other, ParamPoly):
                return BoundaryRational(scaled, self.up, self.down)
            return BoundaryRational._raw(tuple(scaled), self.up, self.down)
        return NotImplemented

    __rmul__ = __mul__

    @classmethod
    def _raw(cls, num: tuple, up: int, down: int) -> "BoundaryRational":
        if not num:
            up = down = 0
        obj = object.__new__(cls)
        obj.num, obj.up, obj.down = num, up, down
        return obj

    def __eq__(self, other):
        if not isinstance(other, BoundaryRational):
            try:
                other = BoundaryRational.coerce(other)
            except TypeError:
                return False
        return (self.num, self.up, self.down) == (other.num, other.up, other.down)

    def __hash__(self):
        return hash((self.num, self.up, self.down))

    def __bool__(self):
        return bool(self.num)

    # -- calculus -------------------------------------------------------
    def diff(self, k: int = 1) -> "BoundaryRational":
        """k-th derivative in xi_n."""
        if k < 1:
            raise ValueError("derivative order must be positive")
        out = self
        for _ in range(k):
            out = out._diff1()
        return out

    def _diff1(self) -> "BoundaryRational":
        p = list(self.num)
        if not p:
            return ZERO
        lin_up = list(_linear_power(1, 1))
        lin_dn = list(_linear_power(-1, 1))
        term = _pmul(_pmul(_pderiv(p), lin_up), lin_dn)
        if self.up:
            term = _padd(term, _pscale(_pmul(p, lin_dn), -self.up))
        if self.down:
            term = _padd(term, _pscale(_pmul(p, lin_up), -self.down))
        return BoundaryRational(term, self.up + 1, self.down + 1)

    @property
    def degree(self) -> int:
        return len(self.num) - 1

    def decay_margin(self) -> int | None:
        """Denominator degree minus numerator degree; None for zero."""
        if not self.num:
            return None
        return self.up + self.down - self.degree

    def _laurent_head(self, upper: bool, count: int) -> list:
        """First ``count`` Taylor coefficients of the regular factor at the pole."""
        root = I_GR if upper else -I_GR
        other_order = self.down if upper else self.up
        shifted = _taylor_shift(list(self.num), root)
        # (t + 2*root)^(-other_order) = sum_m C(-q, m) (2 root)^(-q-m) t^m
        base = root * 2
        series = []
        for m in range(count):
            binom = (-1) ** m * comb(other_order + m - 1, m) if other_order else (1 if m == 0 else 0)
            series.append(base ** (-other_order - m) * binom if binom else ZERO_GR)
        out = []
        for k in range(count):
            acc = P_ZERO
            for m in range(k + 1):
                if m < len(shifted) and series[k - m]:
                    acc = acc + shifted[m] * series[k - m]
            out.append(acc)
        return out

    def principal_part(self, upper: bool = True) -> "BoundaryRational":
        if not self.num:
            return ZERO
        if self.decay_margin() < 1:
            raise NonDecaying(f"numerator degree {self.degree} >= pole order {self.up + self.down}")
        order = self.up if upper else self.down
        if order == 0:
            return ZERO
        coeffs = self._laurent_head(upper, order)
        # sum_k c_k (xi - root)^k over (xi - root)^order
        sign = 1 if upper else -1
        num: list = []
        for k, c in enumerate(coeffs):
            if c:
                num = _padd(num, _pscale(list(_linear_power(sign, k)), c))
        if upper:
            return BoundaryRational(num, order, 0)
        return BoundaryRational(num, 0, order)

    def residue(self, upper: bool = True) -> ParamPoly:
        order = self.up if upper else self.down
        if not self.num or order == 0:
            return P_ZERO
        return self._laurent_head(upper, order)[order - 1]

    # -- numerics ------------------------------------------------------
    def evaluate(self, xi, a=0.0, b=0.0) -> complex:
        num = 0j
        for c in reversed(self.num):
            num = num * xi + c.evaluate(float(a), float(b))
        return num / ((xi - 1j) ** self.up * (xi + 1j) ** self.down)

    def __repr__(self):
        return f"BoundaryRational({self})"

    def __str__(self):
        from .expr import Expr
        if not self.num:
            return "0"
        numer = Expr.zero()
        for k, c in enumerate(self.num):
            numer = numer + Expr.from_param_poly(c) * Expr.symbol("xi_n", k)
        parts = []
        if self.up:
            parts.append("(xi_n - i)" + (f"^{self.up}" if self.up > 1 else ""))
        if self.down:
            parts.append("(xi_n + i)" + (f"^{self.down}" if self.down > 1 else ""))
        if not parts:
            return str(numer)
        return f"({numer})/({'*'.join(parts)})"


ZERO = BoundaryRational()
ONE = BoundaryRational.const(1)
XI = BoundaryRational.xi()


def rat_arith(x: BoundaryRational, y: BoundaryRational, op: str) -> BoundaryRational:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def rat_diff(x: BoundaryRational, k: int = 1) -> BoundaryRational:
    return x.diff(k)


def principal_part_upper(x: BoundaryRational) -> BoundaryRational:
    """The pi^+ scalar kernel: principal part of x at xi_n = +i."""
    return x.principal_part(upper=True)


def principal_part_lower(x: BoundaryRational) -> BoundaryRational:
    return x.principal_part(upper=False)


def line_integral(x: BoundaryRational) -> ParamPoly:
    """Coefficient c with  int_R x dxi_n = c * pi.

    The contour is closed in the upper half plane, so the value is
    2*pi*i times the residue at +i.
    """
    if not x.num:
        return P_ZERO
    if x.decay_margin() < 2:
        raise NotIntegrable(f"integrand decays like xi_n^-{x.decay_margin()}")
    return x.residue(upper=True) * GaussianRational(0, 2)
