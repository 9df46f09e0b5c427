"""Exact scalars: prime fields, rationals, binary forms and a seeded PRNG.

Prime-field values are stored as plain Python ints reduced into ``[0, p)``;
:class:`FieldElement` wraps one when operator syntax is convenient.
Rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import NotPrime, TooSmall, ZeroForm

Rational = Fraction

DEFAULT_PRIME = 32003
MIN_PRIME = 19

# int64 elimination needs (p - 1)**2 plus one extra addend to stay below 2**63
_INT64_LIMIT = 1 << 31

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24, far beyond any use here)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field F_p (``p`` set) or the rationals (``p is None``)."""

    p: Optional[int] = DEFAULT_PRIME

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    @property
    def dtype(self):
        if self.p is not None and self.p < _INT64_LIMIT:
            return np.int64
        return object

    def __str__(self):
        return f"p={self.p}" if self.p is not None else "rational"

    def reduce(self, value):
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def inv(self, value):
        if self.p is None:
            return 1 / Fraction(value)
        if value % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return pow(int(value), -1, self.p)

    def element(self, value) -> "FieldElement":
        if self.p is None:
            raise TypeError("FieldElement is only defined over prime fields")
        return FieldElement(value, self.p)

    def array(self, data) -> np.ndarray:
        """Build a 2-d (or 1-d) array of reduced entries with the working dtype."""
        if self.p is None:
            arr = np.array(data, dtype=object)
            flat = arr.reshape(-1)
            for i, v in enumerate(flat):
                flat[i] = Fraction(v)
            return arr
        if self.dtype is object:
            arr = np.array(data, dtype=object)
            return arr % self.p
        arr = np.array(data, dtype=object) if _has_big(data) else np.array(data)
        return (arr % self.p).astype(np.int64)

    def reduce_array(self, arr: np.ndarray) -> np.ndarray:
        if self.p is None:
            return arr
        return arr % self.p


def _has_big(data) -> bool:
    try:
        return any(abs(int(v)) >= _INT64_LIMIT for v in np.ravel(np.array(data, dtype=object)))
    except TypeError:
        return True


RATIONALS = FieldSpec(None)


def field_new(p: int) -> FieldSpec:
    """Validate ``p`` and return the prime field F_p."""
    p = int(p)
    if p < MIN_PRIME:
        raise TooSmall(f"p={p} is below {MIN_PRIME}")
    if not is_prime(p):
        raise NotPrime(f"p={p} is not prime")
    return FieldSpec(p)


class FieldElement:
    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = int(value) % p

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError("elements of different fields")
            return other.value
        return int(other) % self.p

    def __add__(self, other):
        return FieldElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FieldElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * FieldElement(self._coerce(other), self.p).inverse()

    def __pow__(self, k: int):
        return FieldElement(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElement({self.value}, p={self.p})"


# ---------------------------------------------------------------------------
# binary forms


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form in (s, t); ``coeffs[i]`` multiplies s^(e-i) t^i.

    The degree is nominal: a leading coefficient of zero is never trimmed.
    """

    coeffs: tuple
    field: FieldSpec

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("a binary form needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(self.field.reduce(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __call__(self, s, t):
        f = self.field
        e = self.degree
        s, t = f.reduce(s), f.reduce(t)
        acc = 0
        for i, c in enumerate(self.coeffs):
            acc += c * s ** (e - i) * t ** i
        return f.reduce(acc)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        if isinstance(other, BinaryForm):
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return BinaryForm(tuple(out), self.field)
        return BinaryForm(tuple(c * other for c in self.coeffs), self.field)

    __rmul__ = __mul__

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return BinaryForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def divide_linear(self, root) -> "BinaryForm":
        """Exact quotient by the linear form vanishing at ``root = (s0, t0)``.

        The divisor is ``t0*s - s0*t``. Raises ValueError if it does not divide.
        """
        f = self.field
        s0, t0 = root
        l0, l1 = f.reduce(t0), f.reduce(-s0)
        e = self.degree
        if e < 1:
            raise ValueError("cannot divide a constant")
        c = self.coeffs
        q = [0] * e
        if l0 != 0:
            inv = f.inv(l0)
            prev = 0
            for i in range(e):
                q[i] = f.reduce((c[i] - prev * l1) * inv)
                prev = q[i]
            ok = f.reduce(q[e - 1] * l1 - c[e]) == 0
        else:
            inv = f.inv(l1)
            for i in range(e):
                q[i] = f.reduce(c[i + 1] * inv)
            ok = c[0] == 0
        if not ok:
            raise ValueError("linear factor does not divide the form")
        return BinaryForm(tuple(q), f)

    @classmethod
    def from_roots(cls, roots: Iterable, field: FieldSpec) -> "BinaryForm":
        out = cls((1,), field)
        for s0, t0 in roots:
            out = out * cls((t0, -s0), field)
        return out


def binary_form_roots(f: BinaryForm, field: Optional[FieldSpec] = None) -> list:
    """All roots (s:t) of ``f`` in P^1(F_p), found by scanning.

    ``(0, 1)`` comes first when it is a root, followed by ``(1, t)`` in increasing t.
    """
    field = field or f.field
    if not field.is_prime:
        raise ValueError("root scanning needs a prime field")
    if f.is_zero():
        raise ZeroForm("the form vanishes identically")
    p = field.p
    roots = []
    if f.coeffs[-1] % p == 0:
        roots.append((0, 1))
    # Horner in t with s = 1; coefficient of t^i is coeffs[i]
    if field.dtype is object:
        ts = np.arange(p, dtype=object)
    else:
        ts = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=ts.dtype)
    for c in reversed(f.coeffs):
        acc = (acc * ts + c) % p
    roots.extend((1, int(t)) for t in np.nonzero(acc == 0)[0])
    return roots


# ---------------------------------------------------------------------------
# univariate polynomials over F_p, coefficient lists low -> high


def poly_trim(a: Sequence[int]) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_eval(a: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int):
    a = poly_trim([c % p for c in a])
    b = poly_trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] * inv % p
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] = (a[i + k] - c * bc) % p
        a = poly_trim(a)
    return q, a


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list:
    """Monic gcd; the gcd of two zero polynomials is ``[]``."""
    a = poly_trim([c % p for c in a])
    b = poly_trim([c % p for c in b])
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def interpolate(xs: Sequence[int], ys: Sequence[int], p: int) -> list:
    """Coefficients (low -> high) of the unique polynomial of degree < len(xs)."""
    n = len(xs)
    coeffs = [0] * n
    for i in range(n):
        basis = [1]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            basis = [(b1 - xs[j] * b0) % p for b0, b1 in zip(basis + [0], [0] + basis)]
            denom = denom * (xs[i] - xs[j]) % p
        scale = ys[i] * pow(denom, -1, p) % p
        for k, b in enumerate(basis):
            coeffs[k] = (coeffs[k] + scale * b) % p
    return coeffs


# ---------------------------------------------------------------------------
# splitmix64

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def prng_next(state: int):
    """One splitmix64 step: returns ``(new_state, output)``."""
    state = (state + GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def split_seed(seed: int, index: int) -> int:
    """Derive an independent child seed for trial ``index``."""
    _, a = prng_next((seed ^ ((index + 1) * 0xD1B54A32D192ED03)) & MASK64)
    return a


class Rng:
    """Mutable convenience wrapper around the pure splitmix64 transition."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state, out = prng_next(self.state)
        return out

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def nonzero(self, p: int) -> int:
        return 1 + self.below(p - 1)

    def sample(self, n: int, k: int) -> list:
        """k distinct indices from range(n), in draw order."""
        if k > n:
            raise ValueError("sample larger than population")
        pool = list(range(n))
        for i in range(k):
            j = i + self.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def shuffle(self, items: list) -> list:
        items = list(items)
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items
