"""The base valued field: Q with ord_p, or F_p(t) with ord_t.

Both bases have value group Z, residue field F_p and are defectless for
separable extensions.  The module also provides the input normalization
``g(Y) = pi^(n*k) * f(Y / pi^k)`` which pushes every root to positive value.
"""
from __future__ import annotations

from fractions import Fraction

from .arith import GF, INF, FFElem, Poly, poly_gcd
from .errors import NotSquarefreeError

MAX_PRIME = 2 ** 61


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _ord(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


# -- Q -----------------------------------------------------------------------

class RationalField:
    """The field Q; elements are :class:`fractions.Fraction`."""

    zero = Fraction(0)
    one = Fraction(1)
    name = "Q"

    def __call__(self, x) -> Fraction:
        if isinstance(x, RatFunc):
            raise TypeError("rational function is not a rational number")
        return Fraction(x)

    @staticmethod
    def is_element(c) -> bool:
        return type(c) is Fraction

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    @staticmethod
    def format_coeff(c: Fraction):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return sign, body, True


QQ = RationalField()


# -- F_p(t) ------------------------------------------------------------------

class RatFunc:
    """Reduced fraction ``num/den`` of polynomials in t over F_p, ``den`` monic."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: "FunctionField", num: Poly, den: Poly | None = None):
        if den is None:
            den = field._one_t
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = field._one_t
        elif den.degree > 0:
            if all(c == 0 for c in den.coeffs[:-1]):
                # den = c*t^k: only powers of t can cancel
                k = 0
                while k < den.degree and num.coeffs[k] == 0:
                    k += 1
                if k:
                    num = Poly._raw(num.ring, num.coeffs[k:], num.var)
                    den = Poly._raw(den.ring, den.coeffs[k:], den.var)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
        if den.lc != field.fp.one:
            inv = field.fp.one / den.lc
            num, den = num * inv, den * inv
        self.field = field
        self.num = num
        self.den = den

    def _defer(self, other) -> bool:
        # polynomials in x over F_p(t) handle mixed arithmetic themselves
        return isinstance(other, Poly) and other.ring is self.field

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        return self.field(other)

    def __add__(self, other):
        if self._defer(other):
            return NotImplemented
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.field, self.num + o.num, self.den)
        return RatFunc(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den)

    def __sub__(self, other):
        if self._defer(other):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        if self._defer(other):
            return NotImplemented
        return self._coerce(other) - self

    def __mul__(self, other):
        if self._defer(other):
            return NotImplemented
        o = self._coerce(other)
        return RatFunc(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if self._defer(other):
            return NotImplemented
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.field, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        if self._defer(other):
            return NotImplemented
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(self.field, self.den ** (-k), self.num ** (-k))
        return RatFunc(self.field, self.num ** k, self.den ** k)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        n = _tpoly_str(self.num)
        if self.den.degree == 0:
            return n
        d = _tpoly_str(self.den)
        if self.num.degree > 0 and len([c for c in self.num.coeffs if c]) > 1:
            n = f"({n})"
        if len([c for c in self.den.coeffs if c]) > 1:
            d = f"({d})"
        return f"{n}/{d}"


def _tpoly_str(p: Poly) -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.degree, -1, -1):
        c = int(p.coeffs[i])
        if not c:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms)


class FunctionField:
    """The rational function field F_p(t)."""

    def __init__(self, p: int):
        self.p = p
        self.fp = GF(p)
        self._one_t = Poly(self.fp, [1], "t")
        self.name = f"F{p}(t)"
        self.zero = RatFunc(self, Poly(self.fp, [], "t"))
        self.one = RatFunc(self, self._one_t)
        self.t = RatFunc(self, Poly(self.fp, [0, 1], "t"))

    def tpoly(self, coeffs) -> Poly:
        return Poly(self.fp, coeffs, "t")

    def __call__(self, x) -> RatFunc:
        if isinstance(x, RatFunc):
            if x.field.p != self.p:
                raise ValueError("rational function over a different prime")
            return x
        if isinstance(x, bool):
            raise TypeError("bool is not a field element")
        if isinstance(x, int):
            return RatFunc(self, Poly(self.fp, [x], "t"))
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ValueError(f"{x} has no image in F_{self.p}")
            return self(x.numerator) / self(x.denominator)
        if isinstance(x, FFElem):
            return RatFunc(self, Poly(self.fp, [self.fp(x)], "t"))
        if isinstance(x, Poly) and x.ring == self.fp:
            return RatFunc(self, x.with_var("t"))
        raise TypeError(f"cannot coerce {type(x).__name__} into {self.name}")

    @staticmethod
    def is_element(c) -> bool:
        return isinstance(c, RatFunc)

    def __eq__(self, other):
        return isinstance(other, FunctionField) and other.p == self.p

    def __hash__(self):
        return hash(("FpT", self.p))

    def __repr__(self):
        return f"FunctionField({self.p})"

    @staticmethod
    def format_coeff(c: RatFunc):
        s = str(c)
        atomic = c.den.degree == 0 and len([x for x in c.num.coeffs if x]) == 1
        return "+", s, atomic


# -- valuations ---------------------------------------------------------------

class BaseValuation:
    """A rank-one discrete valuation with value group Z and residue field F_p."""

    kind: str = ""

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"{p} is not a prime")
        if p >= MAX_PRIME:
            raise ValueError(f"prime {p} exceeds the supported bound 2^61")
        self.p = p
        self.residue_field = GF(p)

    def __eq__(self, other):
        return type(self) is type(other) and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def value(self, a):
        raise NotImplementedError

    def residue(self, a) -> FFElem:
        raise NotImplementedError

    def lift(self, r: FFElem):
        raise NotImplementedError

    def poly(self, coeffs, var: str = "x") -> Poly:
        return Poly(self.field, coeffs, var)

    def gen(self, var: str = "x") -> Poly:
        return Poly(self.field, [0, 1], var)

    def uniformizer_power(self, k: int):
        return self.uniformizer ** k

    def shifted_residue(self, a, k: int) -> FFElem:
        """Residue of ``a / pi^k``; zero when ``value(a) > k``."""
        v = self.value(a)
        if v > k:
            return self.residue_field.zero
        if v < k:
            raise ValueError(f"value {v} is below the requested level {k}")
        return self.residue(a / self.uniformizer ** k)


class PAdicValuation(BaseValuation):
    """ord_p on Q."""

    kind = "q"

    def __init__(self, p: int):
        super().__init__(p)
        self.field = QQ
        self.uniformizer = Fraction(p)

    def __repr__(self):
        return f"PAdicValuation({self.p})"

    def value(self, a):
        a = Fraction(a)
        if a == 0:
            return INF
        return _ord(abs(a.numerator), self.p) - _ord(a.denominator, self.p)

    def residue(self, a) -> FFElem:
        a = Fraction(a)
        if self.value(a) != 0:
            raise ValueError(f"residue of {a}, which has nonzero value")
        p = self.p
        return self.residue_field(a.numerator * pow(a.denominator, -1, p) % p)

    def lift(self, r: FFElem) -> Fraction:
        if r.field.depth:
            raise ValueError("lift expects an element of the prime residue field")
        return Fraction(int(r))


class TAdicValuation(BaseValuation):
    """ord_t on F_p(t)."""

    kind = "fpt"

    def __init__(self, p: int):
        super().__init__(p)
        self.field = FunctionField(p)
        self.uniformizer = self.field.t

    def __repr__(self):
        return f"TAdicValuation({self.p})"

    @staticmethod
    def _tord(poly: Poly) -> int:
        k = 0
        while poly.coeffs[k] == 0:
            k += 1
        return k

    def value(self, a):
        a = self.field(a)
        if a.is_zero():
            return INF
        return self._tord(a.num) - self._tord(a.den)

    def residue(self, a) -> FFElem:
        a = self.field(a)
        if self.value(a) != 0:
            raise ValueError(f"residue of {a}, which has nonzero value")
        return a.num.coeffs[0] / a.den.coeffs[0]

    def lift(self, r: FFElem) -> RatFunc:
        if r.field.depth:
            raise ValueError("lift expects an element of the prime residue field")
        return self.field(r)


def make_valuation(base: str, p: int) -> BaseValuation:
    """``base`` is ``"q"`` (Q, ord_p) or ``"fpt"`` (F_p(t), ord_t)."""
    if base == "q":
        return PAdicValuation(p)
    if base == "fpt":
        return TAdicValuation(p)
    raise ValueError(f"unknown base {base!r}; expected 'q' or 'fpt'")


def base_value(v: BaseValuation, a):
    return v.value(a)


def residue(v: BaseValuation, a) -> FFElem:
    return v.residue(a)


def lift(v: BaseValuation, r: FFElem):
    return v.lift(r)


def _tpoly_lcm(a: Poly, b: Poly) -> Poly:
    return (a * b).exact_div(poly_gcd(a, b))


def _primitive_part(coeffs: list) -> list:
    cont = coeffs[-1].monic()
    for c in coeffs:
        if cont.degree == 0:
            break
        if not c.is_zero():
            cont = poly_gcd(cont, c)
    scale = coeffs[-1].lc
    if cont.degree > 0:
        coeffs = [c.exact_div(cont) for c in coeffs]
    inv = scale.inverse()
    return [c * inv for c in coeffs]


def _pseudo_rem(a: list, b: list) -> list:
    a = list(a)
    lb, db = b[-1], len(b) - 1
    while len(a) - 1 >= db:
        la, shift = a[-1], len(a) - 1 - db
        a = [c * lb for c in a]
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - la * c
        while a and a[-1].is_zero():
            a.pop()
    return a


def fpt_poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over F_p(t) by a primitive pseudo-remainder sequence in F_p[t][x].

    Plain Euclid over F_p(t) suffers badly from coefficient growth.
    """
    field = a.ring

    def integral(h: Poly) -> list:
        den = field._one_t
        for c in h.coeffs:
            den = _tpoly_lcm(den, c.den)
        return _primitive_part([c.num * den.exact_div(c.den) for c in h.coeffs])

    if a.is_zero() or b.is_zero():
        return (a if b.is_zero() else b).monic()
    x, y = integral(a), integral(b)
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _pseudo_rem(x, y)
        x, y = y, (_primitive_part(r) if r else [])
    return Poly(field, [RatFunc(field, c) for c in x], a.var).monic()


def base_poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd of polynomials over either base field."""
    if isinstance(a.ring, FunctionField):
        return fpt_poly_gcd(a, b)
    return poly_gcd(a, b)


def check_squarefree(f: Poly) -> None:
    g = base_poly_gcd(f, f.derivative())
    if g.degree > 0:
        raise NotSquarefreeError(f, g)


def normalization_shift(v: BaseValuation, f: Poly) -> int:
    """Least k >= 0 with value(a_i) + (n-i)*k > 0 for all i < n (f monic)."""
    n = f.degree
    k = 0
    for i in range(n):
        w = v.value(f.coeffs[i])
        if w is INF:
            continue
        # need w + (n - i) * k > 0
        k = max(k, (-w) // (n - i) + 1)
    return k


def normalize_input(v: BaseValuation, f: Poly) -> tuple[Poly, int]:
    """Return ``(g, k)`` with ``g(Y) = pi^(n*k) f(Y/pi^k)`` monic.

    Every non-leading coefficient of ``g`` has positive value, so all roots
    of ``g`` have positive value.  ``f`` is made monic first and must be
    squarefree.
    """
    if f.degree < 1:
        raise ValueError("input polynomial must have degree >= 1")
    f = f.monic()
    check_squarefree(f)
    k = normalization_shift(v, f)
    if k == 0:
        return f, 0
    n = f.degree
    pi_k = v.uniformizer ** k
    coeffs = [c * pi_k ** (n - i) for i, c in enumerate(f.coeffs)]
    return Poly(f.ring, coeffs, f.var), k


def unnormalize_poly(v: BaseValuation, h: Poly, shift: int) -> Poly:
    """Express ``h(x)`` in the scaled variable ``Y = pi^shift * x``."""
    if shift == 0:
        return h
    inv = v.uniformizer ** (-shift)
    return Poly(h.ring, [c * inv ** i for i, c in enumerate(h.coeffs)], h.var)
