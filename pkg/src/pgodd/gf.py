"""Finite field arithmetic for GF(p^h), p odd, and its small extensions.

Elements are integers 0..q-1 encoding coefficient vectors over the base
field in little-endian base-``base.q`` digits (base-p for fields built
directly over the prime field).  0 is the zero element and 1 the unit.

Every field is defined by the lexicographically least primitive monic
polynomial over its base field, coefficients compared from the constant
term up, so all downstream enumerations are reproducible.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

ADD_TABLE_CAP = 1024
DEFAULT_ELEMENT_CAP = 10_000_000


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, h) with q = p**h, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    h, m = 0, q
    while m % p == 0:
        m //= p
        h += 1
    if m != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, h


def factorize(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldSpec:
    p: int
    h: int = 1
    modulus: Optional[tuple[int, ...]] = None

    @property
    def q(self) -> int:
        return self.p**self.h

    @classmethod
    def from_q(cls, q: int) -> "FieldSpec":
        p, h = prime_power(q)
        return cls(p, h)

    def validate(self) -> None:
        if not is_prime(self.p):
            raise FieldError(f"p={self.p} is not prime")
        if self.p == 2:
            raise FieldError("even characteristic is not supported")
        if self.h < 1:
            raise FieldError("h must be positive")
        if self.modulus is not None and len(self.modulus) != self.h + 1:
            raise FieldError("modulus must have h+1 coefficients (c0..ch)")


def parse_field_spec(text: str) -> FieldSpec:
    """Parse ``q=<int>`` or ``p=<int>,h=<int>[,modulus=[c0,c1,...]]``."""
    text = text.strip()
    m = re.fullmatch(r"q\s*=\s*(\d+)", text)
    if m:
        return FieldSpec.from_q(int(m.group(1)))
    if re.fullmatch(r"\d+", text):
        return FieldSpec.from_q(int(text))
    kv = dict(re.findall(r"(\w+)\s*=\s*(\[[^\]]*\]|[^,]+)", text))
    if "p" not in kv:
        raise FieldError(f"cannot parse field spec {text!r}")
    mod = None
    if "modulus" in kv:
        mod = tuple(int(c) for c in kv["modulus"].strip("[]").split(",") if c.strip())
    return FieldSpec(int(kv["p"]), int(kv.get("h", 1)), mod)


class FieldTables:
    """Log/exp tables for a finite field of odd characteristic.

    ``base`` is None for fields built over the prime field GF(p); otherwise
    the field is ``base[x]/(modulus)``.  The coset of ``x`` is always a
    generator of the multiplicative group.
    """

    def __init__(
        self,
        p: int,
        degree: int,
        modulus: Sequence[int],
        base: Optional["FieldTables"] = None,
    ):
        self.p = p
        self.base = base
        self.degree = degree
        self.modulus = tuple(int(c) for c in modulus)
        self.sub_q = base.q if base is not None else p
        self.q = self.sub_q**degree
        self.h = degree * (base.h if base is not None else 1)
        exp = _power_sequence(self._base_ops(), self.sub_q, self.modulus)
        if exp is None:
            raise FieldError(f"modulus {self.modulus} is not primitive")
        n = self.q - 1
        self.exp = np.concatenate([exp, exp]).astype(np.int64)
        self.log = np.full(self.q, -1, dtype=np.int64)
        self.log[exp] = np.arange(n)
        self.add_table = None
        if self.q <= ADD_TABLE_CAP:
            a = np.arange(self.q)
            self.add_table = self._add_vec(a[:, None], a[None, :])
            self.neg_table = self._add_vec(np.zeros(1, dtype=np.int64), a, negate=True)
        else:
            self.neg_table = self._add_vec(np.zeros(1, dtype=np.int64), np.arange(self.q), negate=True)

    # -- construction helpers -------------------------------------------------
    def _base_ops(self):
        if self.base is None:
            p = self.p
            return (lambda a, b: (a + b) % p, lambda a, b: (a * b) % p, lambda a: (-a) % p)
        b = self.base
        return (b.add, b.mul, b.neg)

    def digits(self, x):
        x = np.asarray(x, dtype=np.int64)
        return [(x // self.sub_q**i) % self.sub_q for i in range(self.degree)]

    def from_digits(self, ds) -> int:
        return int(sum(int(d) * self.sub_q**i for i, d in enumerate(ds)))

    def _add_vec(self, a, b, negate: bool = False):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = np.zeros(a.shape, dtype=np.int64)
        for i, (da, db) in enumerate(zip(self.digits(a), self.digits(b))):
            if self.base is None:
                s = (da - db) % self.p if negate else (da + db) % self.p
            elif negate:
                s = self.base.add_arr(da, self.base.neg_table[db])
            else:
                s = self.base.add_arr(da, db)
            out += s * self.sub_q**i
        return out

    # -- scalar arithmetic ----------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.add_table is not None:
            return int(self.add_table[a, b])
        return int(self._add_vec(a, b))

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def element_from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(q)."""
        return n % self.p  # prime-subfield elements have code 0..p-1

    @property
    def generator(self) -> int:
        return int(self.exp[1])

    def order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.q - 1
        return n // np.gcd(n, int(self.log[a]))

    def is_square(self, x: int) -> bool:
        if x == 0:
            raise FieldError("is_square is defined on nonzero elements")
        return int(self.log[x]) % 2 == 0

    def squares(self) -> list[int]:
        return sorted(int(x) for x in self.exp[0 : self.q - 1 : 2])

    def nonsquares(self) -> list[int]:
        return sorted(int(x) for x in self.exp[1 : self.q - 1 : 2])

    def least_nonsquare(self) -> int:
        return self.nonsquares()[0]

    def frobenius(self, x: int) -> int:
        return self.pow(x, self.p)

    def subfield(self, order: int) -> list[int]:
        """Elements x with x**order == x (the subfield of that order)."""
        if (self.q - 1) % (order - 1):
            raise FieldError(f"GF({self.q}) has no subfield of order {order}")
        return [0] + [x for x in range(1, self.q) if self.pow(x, order) == x]

    # -- vectorized arithmetic (numpy arrays of element codes) ----------------
    def add_arr(self, a, b):
        if self.add_table is not None:
            return self.add_table[a, b]
        return self._add_vec(a, b)

    def mul_arr(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        zero = (a == 0) | (b == 0)
        out = self.exp[np.where(zero, 0, self.log[a] + self.log[b])]
        return np.where(zero, 0, out)

    def inv_arr(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def describe(self) -> dict:
        d = {"q": self.q, "p": self.p, "h": self.h, "modulus": list(self.modulus)}
        if self.base is not None:
            d["base"] = self.base.describe()
        return d

    def __repr__(self) -> str:
        return f"FieldTables(q={self.q}, modulus={list(self.modulus)})"


def _power_sequence(ops, sub_q: int, modulus: tuple[int, ...]) -> Optional[np.ndarray]:
    """Codes of x^0, x^1, ... x^(n-1) in base[x]/(modulus); None unless x is primitive."""
    add, mul, neg = ops
    deg = len(modulus) - 1
    n = sub_q**deg - 1
    if modulus[-1] != 1 or modulus[0] == 0:
        return None
    red = [neg(c) for c in modulus[:-1]]
    coeffs = [1] + [0] * (deg - 1)
    weights = [sub_q**i for i in range(deg)]
    out = np.empty(n, dtype=np.int64)
    for k in range(n):
        code = sum(c * w for c, w in zip(coeffs, weights))
        if k > 0 and code == 1:
            return None
        out[k] = code
        top = coeffs[-1]
        shifted = [0] + coeffs[:-1]
        if top:
            coeffs = [add(s, mul(top, r)) for s, r in zip(shifted, red)]
        else:
            coeffs = shifted
    if sum(c * w for c, w in zip(coeffs, weights)) != 1:
        return None
    return out


def least_primitive_modulus(ops, sub_q: int, degree: int) -> tuple[int, ...]:
    for low in itertools.product(range(sub_q), repeat=degree):
        if low[0] == 0:
            continue
        mod = tuple(low) + (1,)
        if _power_sequence(ops, sub_q, mod) is not None:
            return mod
    raise FieldError("no primitive polynomial found")  # unreachable for valid inputs


def _prime_ops(p: int):
    return (lambda a, b: (a + b) % p, lambda a, b: (a * b) % p, lambda a: (-a) % p)


def build_field(spec: FieldSpec | int) -> FieldTables:
    """Build GF(p^h) from a spec (or a bare q)."""
    if isinstance(spec, int):
        spec = FieldSpec.from_q(spec)
    spec.validate()
    p, h = spec.p, spec.h
    if spec.modulus is None:
        if h == 1:
            # degree-1 primitive modulus x - g: the least primitive root g
            mod = least_primitive_modulus(_prime_ops(p), p, 1)
        else:
            mod = least_primitive_modulus(_prime_ops(p), p, h)
    else:
        mod = tuple(c % p for c in spec.modulus)
    return FieldTables(p, h, mod)


def build_extension(base: FieldTables, degree: int, element_cap: int = DEFAULT_ELEMENT_CAP) -> FieldTables:
    """GF(q^degree) as base[x]/(least primitive polynomial over base)."""
    if base.q**degree > element_cap:
        raise FieldError(f"GF({base.q}^{degree}) exceeds the element cap {element_cap}")
    ops = (base.add, base.mul, base.neg)
    mod = least_primitive_modulus(ops, base.q, degree)
    return FieldTables(base.p, degree, mod, base=base)


def cube_extension(field: FieldTables, element_cap: int = DEFAULT_ELEMENT_CAP) -> FieldTables:
    """GF(q^3) over GF(q); base elements embed as the constant polynomials."""
    return build_extension(field, 3, element_cap)


@dataclass
class NormGroup:
    """The cyclic group GF(q^2)^x / GF(q)^x of order q+1.

    GF(q^2) is modelled as GF(q)(sqrt d) with d the least non-square; a coset
    is stored by its normalized representative (a, b): b = 1, or (1, 0).
    """

    base: FieldTables
    d: int
    generator: tuple[int, int]
    order: int
    _powers: list[tuple[int, int]] = field(default_factory=list, repr=False)

    def mul(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        F = self.base
        a, b = x
        c, e = y
        re_ = F.add(F.mul(a, c), F.mul(self.d, F.mul(b, e)))
        im = F.add(F.mul(a, e), F.mul(b, c))
        return self.normalize((re_, im))

    def normalize(self, x: tuple[int, int]) -> tuple[int, int]:
        F = self.base
        a, b = x
        if b == 0:
            if a == 0:
                raise FieldError("zero is not in the multiplicative group")
            return (1, 0)
        return (F.div(a, b), 1)

    def power(self, k: int) -> tuple[int, int]:
        return self._powers[k % self.order]

    def log(self, x: tuple[int, int]) -> int:
        return self._powers.index(self.normalize(x))

    def phi(self, s: int, t: int) -> tuple[int, int]:
        """Conic point [s^2 : st : t^2] -> coset of s + t*sqrt(d)."""
        return self.normalize((s, t))

    def psi(self, x: tuple[int, int]) -> tuple[int, int, int]:
        """Coset of a + b*sqrt(d) -> point [d b : a : b] on the line X = dZ."""
        a, b = x
        return (self.base.mul(self.d, b), a, b)


def norm_group(F: FieldTables) -> NormGroup:
    d = F.least_nonsquare()
    n = F.q + 1
    for b0 in range(F.q):
        cand = (b0, 1)
        powers = [(1, 0)]
        g = NormGroup(F, d, cand, n)
        x = cand
        while x != (1, 0):
            powers.append(x)
            x = g.mul(x, cand)
        if len(powers) == n:
            g._powers = powers
            return g
    raise FieldError("norm group generator not found")  # cyclic group: unreachable
