"""The Clifford fiber at the boundary point with |xi'| = 1.

u = c(xi'), v = c(dx_n) satisfy u^2 = v^2 = -1, uv = -vu, so every
element is carried on the basis {1, u, v, uv} with BoundaryRational
coefficients. Words carrying an odd number of tangential xi' components
that are not absorbed into u live in a tagged odd sector; they integrate to
zero over |xi'| = 1.
"""
from __future__ import annotations

from fractions import Fraction

from .exact import BoundaryRational, ZERO, ONE, XI, A, B

_HALF = Fraction(1, 2)

BASIS = ("1", "u", "v", "uv")

# _TABLE[i][j] = (sign, k): basis_i * basis_j = sign * basis_k
_TABLE = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)


class UnsupportedDimension(ValueError):
    pass


class OddSectorError(ArithmeticError):
    """A product would leave the odd sector without being integrable to zero."""


class OddOddProduct(OddSectorError):
    pass


class SpinorDim:
    SUPPORTED = (3, 4, 6)

    def __init__(self, n: int):
        if n not in self.SUPPORTED:
            raise UnsupportedDimension(f"dimension {n} not in {self.SUPPORTED}")
        self.n = n
        self.dim_s = 2 ** (n // 2)

    @property
    def sphere_dim(self) -> int:
        return self.n - 2

    def __repr__(self):
        return f"SpinorDim(n={self.n}, dim_s={self.dim_s})"

    def __eq__(self, other):
        return isinstance(other, SpinorDim) and other.n == self.n

    def __hash__(self):
        return hash(self.n)


def _as_rational(x) -> BoundaryRational:
    return BoundaryRational.coerce(x)


class CliffordElement:
    __slots__ = ("coeffs", "odd")

    def __init__(self, one=ZERO, u=ZERO, v=ZERO, uv=ZERO, odd=()):
        self.coeffs = (_as_rational(one), _as_rational(u), _as_rational(v), _as_rational(uv))
        self.odd = tuple((_as_rational(c), str(tag)) for c, tag in odd if c)

    @classmethod
    def basis(cls, name: str, coeff=ONE) -> "CliffordElement":
        slots = [ZERO] * 4
        slots[BASIS.index(name)] = _as_rational(coeff)
        return cls(*slots)

    @classmethod
    def scalar(cls, c) -> "CliffordElement":
        return cls(one=c)

    @classmethod
    def odd_word(cls, tag: str, coeff=ONE) -> "CliffordElement":
        return cls(odd=((coeff, tag),))

    coeff_1 = property(lambda self: self.coeffs[0])
    coeff_u = property(lambda self: self.coeffs[1])
    coeff_v = property(lambda self: self.coeffs[2])
    coeff_uv = property(lambda self: self.coeffs[3])

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(other)
        coeffs = [x + y for x, y in zip(self.coeffs, other.coeffs)]
        return CliffordElement(*coeffs, odd=_merge_odd(self.odd + other.odd))

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement(*[-c for c in self.coeffs], odd=[(-c, t) for c, t in self.odd])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return cl_mul(self, other)
        return CliffordElement(*[c * other for c in self.coeffs],
                               odd=[(c * other, t) for c, t in self.odd])

    def __rmul__(self, other):
        # scalars commute with everything
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            return False
        return self.coeffs == other.coeffs and sorted(self.odd, key=_odd_key) == \
            sorted(other.odd, key=_odd_key)

    def __hash__(self):
        return hash((self.coeffs, tuple(sorted(self.odd, key=_odd_key))))

    def __bool__(self):
        return any(self.coeffs) or bool(self.odd)

    def map(self, fn) -> "CliffordElement":
        """Apply a coefficientwise linear map (derivative, projection, ...)."""
        return CliffordElement(*[fn(c) for c in self.coeffs], odd=[(fn(c), t) for c, t in self.odd])

    def diff(self, k: int = 1) -> "CliffordElement":
        return self.map(lambda c: c.diff(k) if c else c)

    def evaluate(self, xi, a=0.0, b=0.0) -> tuple:
        return tuple(c.evaluate(xi, a, b) for c in self.coeffs)

    def __repr__(self):
        return f"CliffordElement({self})"

    def __str__(self):
        parts = [f"({c})*{name}" for c, name in zip(self.coeffs, BASIS) if c]
        parts += [f"({c})*odd[{t}]" for c, t in self.odd]
        return " + ".join(parts) if parts else "0"


def _odd_key(item):
    return item[1]


def _merge_odd(items) -> list:
    acc: dict = {}
    for c, t in items:
        acc[t] = acc[t] + c if t in acc else c
    return [(c, t) for t, c in acc.items() if c]


def cl_mul(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    if x.odd and y.odd:
        raise OddOddProduct("product of two odd-sector words is outside the computed closure")
    out = [ZERO] * 4
    for i, cx in enumerate(x.coeffs):
        if not cx:
            continue
        for j, cy in enumerate(y.coeffs):
            if not cy:
                continue
            sign, k = _TABLE[i][j]
            term = cx * cy
            out[k] = out[k] + (term if sign > 0 else -term)
    odd = []
    if x.odd or y.odd:
        # u and uv carry one xi' factor themselves; pairing them with an odd
        # word gives an even word that no longer integrates to zero
        even, words, left = (y, x.odd, False) if x.odd else (x, y.odd, True)
        if even.coeff_u or even.coeff_uv:
            raise OddSectorError("odd-sector word multiplied by a u or uv component")
        for c, tag in words:
            for name, ce in (("1", even.coeff_1), ("v", even.coeff_v)):
                if not ce:
                    continue
                new_tag = tag if name == "1" else (f"v*{tag}" if left else f"{tag}*v")
                odd.append((c * ce, new_tag))
    return CliffordElement(*out, odd=_merge_odd(odd))


def cl_trace(x: CliffordElement, d: SpinorDim) -> BoundaryRational:
    """Fiber trace: dim_s times the identity coefficient; the odd sector is traceless."""
    return x.coeff_1 * d.dim_s


def cl_dxn_substitute(which: str) -> CliffordElement:
    """x_n-derivative of a generator at x_0 in terms of the generator itself.

    c(dx_j) = sqrt(phi) c(e_j) for j < n and c(dx_n) = psi^(-1/2) c(e_n),
    so d/dx_n c(xi') = (a/2) u and d/dx_n c(dx_n) = -(b/2) v at x_0.
    """
    if which == "u":
        return CliffordElement(u=BoundaryRational.const(A * _HALF))
    if which == "v":
        return CliffordElement(v=BoundaryRational.const(B * (-_HALF)))
    raise ValueError(f"unknown generator {which!r}")


def c_xi() -> CliffordElement:
    """c(xi) = u + xi_n v at x_0, |xi'| = 1."""
    return CliffordElement(u=ONE, v=XI)


def c_xi_dxn() -> CliffordElement:
    """d/dx_n c(xi) at x_0."""
    return cl_dxn_substitute("u") + cl_dxn_substitute("v") * XI


# -- words in the orthonormal generators c(e_1), ..., c(e_n) -----------------

def blade_product(w1: tuple, w2: tuple) -> tuple[int, tuple]:
    """Product of two generator words with c(e_i)^2 = -1, reduced to a sorted blade."""
    word = list(w1) + list(w2)
    sign = 1
    # bubble sort, tracking anticommutation and contracting squares
    changed = True
    while changed:
        changed = False
        k = 0
        while k < len(word) - 1:
            if word[k] == word[k + 1]:
                del word[k:k + 2]
                sign = -sign
                changed = True
            elif word[k] > word[k + 1]:
                word[k], word[k + 1] = word[k + 1], word[k]
                sign = -sign
                changed = True
                k += 1
            else:
                k += 1
    return sign, tuple(word)


def blade_to_fiber(blade: tuple, n: int, coeff) -> CliffordElement:
    """Map blades that live in the fiber span: () -> 1, (n,) -> v.

    Tangential blades only enter through u = sum_k xi_k c(e_k) and are
    handled by the caller.
    """
    if blade == ():
        return CliffordElement(one=BoundaryRational.const(coeff))
    if blade == (n,):
        return CliffordElement(v=BoundaryRational.const(coeff))
    raise ValueError(f"blade {blade} is not expressible on the normal fiber")

