"""Finite fields as towers of simple extensions of F_p.

A :class:`FiniteFieldTower` is both the description of the tower (the prime
and the list of level moduli) and the field at its top level.  Elements are
stored as nested tuples: an element of level ``k`` is a tuple of length
``deg(modulus_k)`` holding level ``k-1`` representations, and level 0 is a
plain ``int`` in ``range(p)``.  The tower is never flattened.
"""
from __future__ import annotations

from typing import Iterator

from ..errors import ReducibleModulusError
from .poly import Poly


class FiniteFieldTower:
    """F_p followed by a chain of simple extensions ``F[y]/(m(y))``."""

    def __init__(self, p: int, moduli: tuple = ()):
        if p < 2:
            raise ValueError("characteristic must be a prime")
        self.p = p
        self.moduli = tuple(moduli)
        self.depth = len(self.moduli)
        if self.depth:
            top = self.moduli[-1]
            base = top.ring
            if not isinstance(base, FiniteFieldTower) or base._key != (p, _moduli_key(self.moduli[:-1])):
                raise ValueError("modulus must be defined over the level below")
            self.base = base
            self.degree = top.degree
            self._mod = tuple(c.rep for c in top.coeffs)
        else:
            self.base = None
            self.degree = 1
            self._mod = None
        self.absolute_degree = self.degree * (self.base.absolute_degree if self.base else 1)
        self.order = p ** self.absolute_degree
        self._key = (p, _moduli_key(self.moduli))
        self._zero_rep = self._make_const(0)
        self._one_rep = self._make_const(1)
        self.zero = FFElem(self, self._zero_rep)
        self.one = FFElem(self, self._one_rep)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FiniteFieldTower) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if not self.depth:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.absolute_degree}) tower {list(self.level_degrees())}"

    def level_degrees(self):
        return [m.degree for m in self.moduli]

    def subfield(self, depth: int) -> "FiniteFieldTower":
        """The tower truncated to its first ``depth`` levels."""
        field = self
        while field.depth > depth:
            field = field.base
        return field

    def is_subfield_of(self, other: "FiniteFieldTower") -> bool:
        return (self.p == other.p and self.depth <= other.depth
                and other._key[1][: self.depth] == self._key[1])

    @property
    def gen(self) -> "FFElem":
        """Class of the top-level variable (``y`` in ``base[y]/(m)``)."""
        if not self.depth:
            raise ValueError("prime field has no tower generator")
        if self.degree == 1:
            return FFElem(self, (self.base._neg(self._mod[0]),))
        b = self.base
        return FFElem(self, (b._zero_rep, b._one_rep) + (b._zero_rep,) * (self.degree - 2))

    # -- construction of elements -------------------------------------------

    def _make_const(self, n: int):
        if not self.depth:
            return n % self.p
        b = self.base
        return (b._make_const(n),) + (b._zero_rep,) * (self.degree - 1)

    def embed_rep(self, rep, from_depth: int):
        """Lift a representation from level ``from_depth`` to this level."""
        if from_depth == self.depth:
            return rep
        inner = self.base.embed_rep(rep, from_depth)
        return (inner,) + (self.base._zero_rep,) * (self.degree - 1)

    def is_element(self, c) -> bool:
        return isinstance(c, FFElem) and (c.field is self or c.field == self)

    def __call__(self, x) -> "FFElem":
        if isinstance(x, FFElem):
            if x.field is self or x.field == self:
                return x
            if x.field.is_subfield_of(self):
                return FFElem(self, self.embed_rep(x.rep, x.field.depth))
            raise ValueError(f"{x!r} does not lie in {self!r}")
        if isinstance(x, int):
            return FFElem(self, self._make_const(x))
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def from_coefficients(self, coeffs) -> "FFElem":
        """Element ``sum c_i * gen^i`` from base-field coefficients."""
        if not self.depth:
            raise ValueError("prime field has no coefficient representation")
        cs = [self.base(c).rep for c in coeffs]
        if len(cs) > self.degree:
            poly = Poly(self.base, [FFElem(self.base, c) for c in cs], "y") % self.moduli[-1]
            cs = [c.rep for c in poly.coeffs]
        cs += [self.base._zero_rep] * (self.degree - len(cs))
        return FFElem(self, tuple(cs))

    def element_from_index(self, i: int) -> "FFElem":
        return FFElem(self, self._from_index(i % self.order))

    def _from_index(self, i: int):
        if not self.depth:
            return i % self.p
        qb = self.base.order
        return tuple(self.base._from_index((i // qb ** k) % qb) for k in range(self.degree))

    def index_of(self, a: "FFElem") -> int:
        return self._index(a.rep)

    def _index(self, rep) -> int:
        if not self.depth:
            return rep
        qb = self.base.order
        return sum(self.base._index(r) * qb ** k for k, r in enumerate(rep))

    def elements(self) -> Iterator["FFElem"]:
        for i in range(self.order):
            yield FFElem(self, self._from_index(i))

    def random_element(self, rng) -> "FFElem":
        return FFElem(self, self._from_index(rng.randrange(self.order)))

    def extend(self, modulus: Poly) -> "FiniteFieldTower":
        """New tower with ``modulus`` (monic, irreducible, degree >= 2) on top."""
        from .factor import ff_factor

        if modulus.ring != self:
            raise ValueError("modulus must have coefficients in the top field")
        if modulus.degree < 2:
            raise ReducibleModulusError("extension modulus must have degree >= 2", [(modulus, 1)])
        if modulus.lc != self.one:
            raise ValueError("extension modulus must be monic")
        factors = ff_factor(modulus)
        if len(factors) != 1 or factors[0][1] != 1:
            raise ReducibleModulusError(f"modulus {modulus} is reducible", factors)
        return FiniteFieldTower(self.p, self.moduli + (modulus.with_var("y"),))

    # -- representation-level arithmetic ----------------------------------

    def _is_zero(self, a) -> bool:
        return a == self._zero_rep

    def _add(self, a, b):
        if not self.depth:
            return (a + b) % self.p
        add = self.base._add
        return tuple(add(x, y) for x, y in zip(a, b))

    def _sub(self, a, b):
        if not self.depth:
            return (a - b) % self.p
        sub = self.base._sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def _neg(self, a):
        if not self.depth:
            return (-a) % self.p
        neg = self.base._neg
        return tuple(neg(x) for x in a)

    def _mul(self, a, b):
        if not self.depth:
            return (a * b) % self.p
        B = self.base
        d = self.degree
        zero = B._zero_rep
        prod = [zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                if y == zero:
                    continue
                prod[i + j] = B._add(prod[i + j], B._mul(x, y))
        mod = self._mod
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c == zero:
                continue
            for i in range(d):
                if mod[i] != zero:
                    prod[k - d + i] = B._sub(prod[k - d + i], B._mul(c, mod[i]))
        return tuple(prod[:d])

    def _pow(self, a, k: int):
        result = self._one_rep
        while k:
            if k & 1:
                result = self._mul(result, a)
            k >>= 1
            if k:
                a = self._mul(a, a)
        return result

    def _inv(self, a):
        if a == self._zero_rep:
            raise ZeroDivisionError("inverse of zero in finite field")
        if not self.depth:
            return pow(a, -1, self.p)
        return self._pow(a, self.order - 2)

    def format_coeff(self, c: "FFElem"):
        text = str(c)
        atomic = not self.depth or all(ch not in text for ch in "+- ")
        return "+", text, atomic


def _moduli_key(moduli) -> tuple:
    return tuple(tuple(c.rep for c in m.coeffs) for m in moduli)


_PRIME_FIELDS: dict[int, FiniteFieldTower] = {}


def _prime_field(p: int) -> FiniteFieldTower:
    field = _PRIME_FIELDS.get(p)
    if field is None:
        field = FiniteFieldTower(p)
        _PRIME_FIELDS[p] = field
    return field


def GF(p: int) -> FiniteFieldTower:
    """The prime field F_p (cached)."""
    return _prime_field(p)


class FFElem:
    """Element of a :class:`FiniteFieldTower`."""

    __slots__ = ("field", "rep")

    def __init__(self, field: FiniteFieldTower, rep):
        self.field = field
        self.rep = rep

    def _other(self, other):
        if isinstance(other, FFElem):
            if other.field is self.field:
                return other.rep
            return self.field(other).rep
        if isinstance(other, int):
            return self.field._make_const(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field._add(self.rep, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field._sub(self.rep, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field._sub(o, self.rep))

    def __neg__(self):
        return FFElem(self.field, self.field._neg(self.rep))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field._mul(self.rep, o))

    __rmul__ = __mul__

    def inverse(self) -> "FFElem":
        return FFElem(self.field, self.field._inv(self.rep))

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field._mul(self.rep, self.field._inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field._mul(o, self.field._inv(self.rep)))

    def __pow__(self, k: int):
        if k < 0:
            return FFElem(self.field, self.field._pow(self.field._inv(self.rep), -k))
        return FFElem(self.field, self.field._pow(self.rep, k))

    def __eq__(self, other):
        if isinstance(other, FFElem):
            if other.field is self.field or other.field == self.field:
                return self.rep == other.rep
            try:
                if other.field.is_subfield_of(self.field):
                    return self.rep == self.field(other).rep
                if self.field.is_subfield_of(other.field):
                    return other.field(self).rep == other.rep
            except ValueError:
                return False
            return False
        if isinstance(other, int):
            return self.rep == self.field._make_const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def __bool__(self):
        return self.rep != self.field._zero_rep

    def is_zero(self) -> bool:
        return self.rep == self.field._zero_rep

    def key(self):
        """Canonical sort key (the nested representation itself)."""
        return self.rep

    def coefficients(self) -> list["FFElem"]:
        """Coordinates over the level below (length = top degree)."""
        if not self.field.depth:
            return [self]
        return [FFElem(self.field.base, r) for r in self.rep]

    def restrict(self, field: FiniteFieldTower) -> "FFElem":
        """View an element of an extension as an element of ``field`` (subfield)."""
        rep, depth = self.rep, self.field.depth
        while depth > field.depth:
            if any(r != self.field.subfield(depth - 1)._zero_rep for r in rep[1:]):
                raise ValueError(f"{self} does not lie in {field!r}")
            rep, depth = rep[0], depth - 1
        return FFElem(field, rep)

    def __int__(self):
        if self.field.depth:
            raise TypeError("only prime-field elements convert to int")
        return self.rep

    def __repr__(self):
        return f"FFElem({self}, {self.field!r})"

    def __str__(self):
        return _format_rep(self.field, self.rep)


_VARS = "abcdefghijklmnopqrsuvw"


def _format_rep(field: FiniteFieldTower, rep) -> str:
    if not field.depth:
        return str(rep)
    name = _VARS[(field.depth - 1) % len(_VARS)]
    base = field.base
    terms = []
    for i in range(len(rep) - 1, -1, -1):
        r = rep[i]
        if r == base._zero_rep:
            continue
        s = _format_rep(base, r)
        if i and base.depth and any(ch in s for ch in "+ "):
            s = f"({s})"
        mono = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
        if not mono:
            terms.append(s)
        elif s == "1":
            terms.append(mono)
        else:
            terms.append(f"{s}*{mono}")
    return " + ".join(terms) if terms else "0"
