"""Dense univariate polynomials over an exact field.

A single :class:`Poly` class serves every coefficient field in the package:
the rationals, rational functions over F_p, and finite-field towers.  The
field is any object exposing ``zero``, ``one`` and a ``__call__`` that
coerces integers (and its own elements) into elements.  Coefficient
elements must support ``+ - * /`` and equality.
"""
from __future__ import annotations

from typing import Iterable, Sequence


class Poly:
    """Immutable dense polynomial, coefficients stored low degree first."""

    __slots__ = ("ring", "coeffs", "var", "_hash")

    def __init__(self, ring, coeffs: Iterable = (), var: str = "x"):
        cs = [c if _is_elem(ring, c) else ring(c) for c in coeffs]
        zero = ring.zero
        while cs and cs[-1] == zero:
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)
        self.var = var
        self._hash = None

    @classmethod
    def _raw(cls, ring, coeffs: Sequence, var: str = "x") -> "Poly":
        # coeffs already coerced; only strip
        obj = object.__new__(cls)
        cs = list(coeffs)
        zero = ring.zero
        while cs and cs[-1] == zero:
            cs.pop()
        obj.ring = ring
        obj.coeffs = tuple(cs)
        obj.var = var
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, ring, degree: int, coeff=None, var: str = "x") -> "Poly":
        c = ring.one if coeff is None else ring(coeff)
        return cls._raw(ring, [ring.zero] * degree + [c], var)

    @classmethod
    def constant(cls, ring, c, var: str = "x") -> "Poly":
        return cls._raw(ring, [c if _is_elem(ring, c) else ring(c)], var)

    # -- basic accessors ---------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.ring.one

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if self.degree <= 0:
            return self[0] == other
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def with_var(self, var: str) -> "Poly":
        return Poly._raw(self.ring, self.coeffs, var)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.constant(self.ring, other, self.var)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(self.ring, out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, [-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = other if _is_elem(self.ring, other) else self.ring(other)
            return Poly._raw(self.ring, [a * c for a in self.coeffs], self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(self.ring, [], self.var)
        p = _prime(self.ring)
        if p:
            ai, bi = [x.rep for x in a], [y.rep for y in b]
            acc = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(ai):
                if x:
                    for j, y in enumerate(bi):
                        acc[i + j] += x * y
            return _wrap(self.ring, [c % p for c in acc], self.var)
        zero = self.ring.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly._raw(self.ring, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = Poly.constant(self.ring, self.ring.one, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        return self * c

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        inv = self.ring.one / self.lc
        return Poly._raw(self.ring, [c * inv for c in self.coeffs], self.var)

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        db = other.degree
        if self.degree < db:
            return Poly._raw(self.ring, [], self.var), self
        p = _prime(self.ring)
        if p:
            rem = [c.rep for c in self.coeffs]
            bc = [c.rep for c in other.coeffs]
            inv = pow(bc[-1], -1, p)
            quo = [0] * (len(rem) - db)
            for k in range(len(rem) - 1, db - 1, -1):
                c = rem[k] % p
                if not c:
                    continue
                c = c * inv % p
                quo[k - db] = c
                for i in range(db):
                    rem[k - db + i] -= c * bc[i]
            return (_wrap(self.ring, quo, self.var),
                    _wrap(self.ring, [c % p for c in rem[:db]], self.var))
        rem = list(self.coeffs)
        inv = self.ring.one / other.lc
        monic = other.lc == self.ring.one
        bc = other.coeffs
        quo = [self.ring.zero] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == self.ring.zero:
                continue
            if not monic:
                c = c * inv
            quo[k - db] = c
            for i in range(db):
                rem[k - db + i] = rem[k - db + i] - c * bc[i]
            rem[k] = self.ring.zero
        return (Poly._raw(self.ring, quo, self.var),
                Poly._raw(self.ring, rem[:db], self.var))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def derivative(self) -> "Poly":
        return Poly._raw(self.ring,
                         [c * self.ring(i) for i, c in enumerate(self.coeffs)][1:],
                         self.var)

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a coefficient element or a Poly."""
        if isinstance(x, Poly):
            acc = Poly._raw(x.ring, [], x.var)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = self.ring.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def compose(self, other: "Poly") -> "Poly":
        return self(other)

    def map_coeffs(self, fn, ring=None) -> "Poly":
        ring = self.ring if ring is None else ring
        return Poly(ring, [fn(c) for c in self.coeffs], self.var)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


def _prime(ring):
    """``p`` when ``ring`` is a prime finite field (int fast paths), else None."""
    return ring.p if getattr(ring, "depth", None) == 0 else None


def _wrap(ring, reps, var):
    cls = type(ring.zero)
    return Poly._raw(ring, [cls(ring, r) for r in reps], var)


def _is_elem(ring, c) -> bool:
    is_elem = getattr(ring, "is_element", None)
    if is_elem is not None:
        return is_elem(c)
    return False


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """Return ``(g, s, t)`` with ``g = s*a + t*b`` and ``g`` monic."""
    ring = a.ring
    one = Poly.constant(ring, ring.one, a.var)
    zero = Poly._raw(ring, [], a.var)
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = ring.one / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def powmod(base: Poly, k: int, modulus: Poly) -> Poly:
    result = Poly.constant(base.ring, base.ring.one, base.var) % modulus
    base = base % modulus
    while k:
        if k & 1:
            result = (result * base) % modulus
        k >>= 1
        if k:
            base = (base * base) % modulus
    return result


def format_poly(p: Poly, var: str | None = None) -> str:
    """Human-readable, parseable form such as ``x^2 - 2`` or ``(2*t)*x + 1``."""
    var = p.var if var is None else var
    if p.is_zero():
        return "0"
    fmt = getattr(p.ring, "format_coeff", None)
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == p.ring.zero:
            continue
        if fmt is not None:
            sign, body, atomic = fmt(c)
        else:
            sign, body, atomic = "+", str(c), True
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono:
            if body == "1":
                text = mono
            elif atomic:
                text = f"{body}*{mono}"
            else:
                text = f"({body})*{mono}"
        else:
            text = body
        terms.append((sign, text))
    out = ""
    for k, (sign, text) in enumerate(terms):
        if k == 0:
            out = ("-" + text) if sign == "-" else text
        else:
            out += f" {sign} {text}"
    return out
