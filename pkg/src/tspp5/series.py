"""Truncated Laurent series with exact integer coefficients.

A :class:`LaurentSeries` stores the coefficients of ``q**min_exp`` up to (but
not including) ``q**prec``.  Every coefficient on that window is known
exactly; nothing is known at or beyond ``prec``.  Operations propagate the
window pessimistically and never report a coefficient they cannot justify.

Coefficients are Python integers.  Optionally a series carries a
``modulus``; its coefficients are then kept reduced to ``[0, modulus)``,
which is the fast path for congruence sweeps.

Large products use Kronecker substitution: both operands are packed into
one big integer, multiplied with GMP, and unpacked.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import NonUnitLeadingCoefficient, PrecisionExceeded

try:  # GMP multiplication is much faster than CPython's Karatsuba at scale
    import gmpy2

    def _bigmul(x: int, y: int) -> int:
        return int(gmpy2.mpz(x) * gmpy2.mpz(y))

except ImportError:  # pragma: no cover

    def _bigmul(x: int, y: int) -> int:
        return x * y


# Below this many elementary multiply-adds the sparse/schoolbook product wins.
KRONECKER_THRESHOLD = 40_000
# Same crossover for series inversion (recurrence vs Newton iteration).
NEWTON_THRESHOLD = 60_000


# ----------------------------------------------------------------------------
# coefficient-list kernels
# ----------------------------------------------------------------------------


def _reduce(coeffs: List[int], modulus: Optional[int]) -> List[int]:
    if modulus is None:
        return coeffs
    return [c % modulus for c in coeffs]


def _nonzero(a: Sequence[int]) -> List[Tuple[int, int]]:
    return [(i, c) for i, c in enumerate(a) if c]


def _sparse_mul(sparse: List[Tuple[int, int]], dense: Sequence[int], n: int) -> List[int]:
    out = [0] * n
    for i, c in sparse:
        if i >= n:
            break
        m = n - i
        seg = dense[:m]
        if c == 1:
            out[i:i + len(seg)] = [x + y for x, y in zip(out[i:], seg)]
        elif c == -1:
            out[i:i + len(seg)] = [x - y for x, y in zip(out[i:], seg)]
        else:
            out[i:i + len(seg)] = [x + c * y for x, y in zip(out[i:], seg)]
    return out


def _pack(a: Sequence[int], width: int) -> int:
    """Evaluate the polynomial ``a`` at ``2**(8*width)`` (signed coefficients allowed)."""
    if width in (1, 2, 4, 8) and min(a) >= 0:
        return int.from_bytes(np.asarray(a, dtype=f"<u{width}").tobytes(), "little")
    pos = b"".join((c if c > 0 else 0).to_bytes(width, "little") for c in a)
    total = int.from_bytes(pos, "little")
    if min(a) < 0:
        neg = b"".join((-c if c < 0 else 0).to_bytes(width, "little") for c in a)
        total -= int.from_bytes(neg, "little")
    return total


def _unpack(value: int, width: int, n: int, signed: bool) -> List[int]:
    raw = (value & ((1 << (8 * width * n)) - 1)).to_bytes(width * n, "little")
    if width in (1, 2, 4, 8):
        digits = np.frombuffer(raw, dtype=f"<u{width}").tolist()
    else:
        digits = [int.from_bytes(raw[k:k + width], "little") for k in range(0, width * n, width)]
    if not signed:
        return digits
    base = 1 << (8 * width)
    half = base >> 1
    out = []
    carry = 0
    for d in digits:
        d += carry
        if d >= half:
            out.append(d - base)
            carry = 1
        else:
            out.append(d)
            carry = 0
    return out


def _kronecker_mul(a: Sequence[int], b: Sequence[int], n: int) -> List[int]:
    amax = max(map(abs, a))
    bmax = max(map(abs, b))
    if not amax or not bmax:
        return [0] * n
    signed = min(a) < 0 or min(b) < 0
    bound = amax * bmax * min(len(a), len(b))
    bits = bound.bit_length() + (2 if signed else 0)
    width = (bits + 7) // 8
    if width <= 8:
        width = 1 << (width - 1).bit_length()
    prod = _bigmul(_pack(a, width), _pack(b, width))
    return _unpack(prod, width, n, signed)


def mul_trunc(a: Sequence[int], b: Sequence[int], n: int, modulus: Optional[int] = None) -> List[int]:
    """First ``n`` coefficients of the product of two coefficient lists."""
    a = a[:n]
    b = b[:n]
    if n <= 0 or not a or not b:
        return [0] * max(n, 0)
    sa = _nonzero(a)
    sb = _nonzero(b)
    if not sa or not sb:
        return [0] * n
    if len(sb) < len(sa):
        sa, sb, a, b = sb, sa, b, a
    if len(sa) * min(n, len(b)) <= KRONECKER_THRESHOLD or len(sa) <= 2:
        out = _sparse_mul(sa, b, n)
    else:
        out = _kronecker_mul(a, b, n)
        out.extend([0] * (n - len(out)))
    return _reduce(out, modulus)


def inv_trunc(a: Sequence[int], n: int, modulus: Optional[int] = None) -> List[int]:
    """First ``n`` coefficients of ``1/a`` where ``a[0]`` is a unit (+1 or -1)."""
    lead = a[0]
    if modulus is not None:
        lead = lead % modulus
        lead = 1 if lead == 1 else (-1 if lead == modulus - 1 else lead)
    if lead not in (1, -1):
        raise NonUnitLeadingCoefficient(f"leading coefficient {a[0]} is not +1 or -1")
    a = list(a[:n])
    nz = [(i, c) for i, c in enumerate(a) if c and i]
    if n * (len(nz) + 1) <= NEWTON_THRESHOLD:
        g = [0] * n
        g[0] = lead
        for k in range(1, n):
            acc = 0
            for i, c in nz:
                if i > k:
                    break
                acc += c * g[k - i]
            g[k] = -lead * acc
            if modulus is not None:
                g[k] %= modulus
        return _reduce(g, modulus)
    g = [lead]
    cur = 1
    while cur < n:
        new = min(2 * cur, n)
        h = mul_trunc(a, g, new, modulus)
        tail = h[cur:new]
        corr = mul_trunc(g, tail, new - cur, modulus)
        g = g + [-c for c in corr]
        g = _reduce(g, modulus)
        cur = new
    return g


# ----------------------------------------------------------------------------
# the series type
# ----------------------------------------------------------------------------


def _common_modulus(m1: Optional[int], m2: Optional[int]) -> Optional[int]:
    if m1 is None:
        return m2
    if m2 is None or m1 == m2:
        return m1
    return math.gcd(m1, m2)


class LaurentSeries:
    """Exact truncated Laurent series ``sum c_k q**(min_exp + k) + O(q**prec)``.

    Instances are immutable.  The canonical form strips leading zeros, so
    ``min_exp`` is the valuation of a nonzero series; the zero series has
    ``min_exp == prec`` and no stored coefficients.
    """

    __slots__ = ("min_exp", "coeffs", "prec", "modulus")

    def __init__(
        self,
        coeffs: Iterable[int] = (),
        min_exp: int = 0,
        prec: Optional[int] = None,
        modulus: Optional[int] = None,
    ):
        coeffs = [int(c) for c in coeffs]
        if prec is None:
            prec = min_exp + len(coeffs)
        width = prec - min_exp
        if width < 0:
            raise ValueError(f"prec {prec} lies below min_exp {min_exp}")
        if len(coeffs) > width:
            del coeffs[width:]
        else:
            coeffs.extend([0] * (width - len(coeffs)))
        if modulus is not None and modulus < 1:
            raise ValueError("modulus must be positive")
        self._init(min_exp, _reduce(coeffs, modulus), prec, modulus)

    def _init(self, min_exp: int, coeffs: List[int], prec: int, modulus: Optional[int]) -> None:
        k = 0
        n = len(coeffs)
        while k < n and not coeffs[k]:
            k += 1
        if k:
            coeffs = coeffs[k:]
        object.__setattr__(self, "min_exp", min_exp + k)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    @classmethod
    def _raw(cls, min_exp: int, coeffs: List[int], prec: int, modulus: Optional[int]) -> "LaurentSeries":
        obj = cls.__new__(cls)
        obj._init(min_exp, coeffs, prec, modulus)
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, prec: int, modulus: Optional[int] = None) -> "LaurentSeries":
        return cls._raw(prec, [], prec, modulus)

    @classmethod
    def one(cls, prec: int, modulus: Optional[int] = None) -> "LaurentSeries":
        return cls.monomial(0, prec, 1, modulus)

    @classmethod
    def monomial(cls, exp: int, prec: int, coeff: int = 1, modulus: Optional[int] = None) -> "LaurentSeries":
        if exp >= prec:
            return cls.zero(prec, modulus)
        return cls([coeff] + [0] * (prec - exp - 1), exp, prec, modulus)

    @classmethod
    def from_dict(cls, terms: Dict[int, int], prec: int, modulus: Optional[int] = None) -> "LaurentSeries":
        keep = {e: c for e, c in terms.items() if e < prec}
        if not keep:
            return cls.zero(prec, modulus)
        lo = min(keep)
        coeffs = [0] * (prec - lo)
        for e, c in keep.items():
            coeffs[e - lo] += c
        return cls(coeffs, lo, prec, modulus)

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self) -> Optional[int]:
        return None if self.is_zero() else self.min_exp

    def coefficient_at(self, n: int) -> int:
        if n >= self.prec:
            raise PrecisionExceeded(f"q^{n} requested from a series known below q^{self.prec}")
        if n < self.min_exp:
            return 0
        return self.coeffs[n - self.min_exp]

    __getitem__ = coefficient_at

    def coefficients(self, start: int, stop: int) -> List[int]:
        """Coefficients of ``q**start .. q**(stop-1)`` as a list."""
        if stop > self.prec:
            raise PrecisionExceeded(f"q^{stop - 1} requested from a series known below q^{self.prec}")
        lo = self.min_exp
        out = [0] * max(0, min(stop, lo) - start)
        a = max(start, lo)
        out.extend(self.coeffs[a - lo:stop - lo])
        return out

    def terms(self) -> Iterator[Tuple[int, int]]:
        for k, c in enumerate(self.coeffs):
            if c:
                yield self.min_exp + k, c

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.prec == other.prec
            and self.min_exp == other.min_exp
            and self.coeffs == other.coeffs
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.min_exp, self.prec, self.coeffs, self.modulus))

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """True if both series coincide on their common window."""
        return (self - other).is_zero()

    def __repr__(self):
        shown = []
        for e, c in list(self.terms())[:8]:
            shown.append(f"{c}*q^{e}")
        if len(self.coeffs) and sum(1 for _ in self.terms()) > 8:
            shown.append("...")
        body = " + ".join(shown) if shown else "0"
        mod = f" mod {self.modulus}" if self.modulus else ""
        return f"LaurentSeries({body} + O(q^{self.prec}){mod})"

    # -- ring operations -----------------------------------------------------

    def _coerce(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, (int, np.integer)):
            return LaurentSeries.monomial(0, max(self.prec, 1), int(other), self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._addsub(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._addsub(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def _addsub(self, other: "LaurentSeries", sign: int) -> "LaurentSeries":
        prec = min(self.prec, other.prec)
        modulus = _common_modulus(self.modulus, other.modulus)
        lo = min(self.min_exp, other.min_exp, prec)
        out = [0] * (prec - lo)
        for k, c in enumerate(self.coeffs[: max(0, prec - self.min_exp)]):
            out[self.min_exp - lo + k] = c
        off = other.min_exp - lo
        for k, c in enumerate(other.coeffs[: max(0, prec - other.min_exp)]):
            out[off + k] += sign * c
        return LaurentSeries._raw(lo, _reduce(out, modulus), prec, modulus)

    def __neg__(self):
        return LaurentSeries._raw(self.min_exp, _reduce([-c for c in self.coeffs], self.modulus), self.prec, self.modulus)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            c = int(other)
            return LaurentSeries._raw(self.min_exp, _reduce([c * x for x in self.coeffs], self.modulus), self.prec, self.modulus)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        modulus = _common_modulus(self.modulus, other.modulus)
        prec = min(self.prec + other.min_exp, other.prec + self.min_exp)
        lo = self.min_exp + other.min_exp
        if self.is_zero() or other.is_zero():
            return LaurentSeries.zero(prec, modulus)
        coeffs = mul_trunc(self.coeffs, other.coeffs, prec - lo, modulus)
        return LaurentSeries._raw(lo, coeffs, prec, modulus)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by ``q**k`` (exact, shifts the window too)."""
        return LaurentSeries._raw(self.min_exp + k, list(self.coeffs), self.prec + k, self.modulus)

    def truncate(self, prec: int) -> "LaurentSeries":
        if prec > self.prec:
            raise PrecisionExceeded(f"cannot widen a series known below q^{self.prec} to q^{prec}")
        if prec <= self.min_exp:
            return LaurentSeries.zero(prec, self.modulus)
        return LaurentSeries._raw(self.min_exp, list(self.coeffs[: prec - self.min_exp]), prec, self.modulus)

    def invert(self) -> "LaurentSeries":
        if self.is_zero():
            raise NonUnitLeadingCoefficient("cannot invert a series that vanishes on its window")
        v = self.min_exp
        width = self.prec - v
        coeffs = inv_trunc(self.coeffs, width, self.modulus)
        return LaurentSeries._raw(-v, coeffs, width - v, self.modulus)

    def __pow__(self, k: int) -> "LaurentSeries":
        if k < 0:
            return self.invert() ** (-k)
        if k == 0:
            return LaurentSeries.one(self.prec - self.min_exp if not self.is_zero() else max(self.prec, 1), self.modulus)
        result = None
        base = self
        while True:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if not k:
                return result
            base = base * base

    def scale(self, t: int) -> "LaurentSeries":
        """Substitute ``q -> q**t``."""
        if t < 1:
            raise ValueError("scale factor must be a positive integer")
        prec = t * self.prec - (t - 1)
        if self.is_zero():
            return LaurentSeries.zero(prec, self.modulus)
        if t == 1:
            return self
        out = [0] * (prec - t * self.min_exp)
        out[::t] = self.coeffs
        return LaurentSeries._raw(t * self.min_exp, out, prec, self.modulus)

    def extract_progression(self, r: int, m: int) -> "LaurentSeries":
        """``sum_n a_{m n + r} q**n`` over every ``m n + r`` in the window."""
        if m < 1:
            raise ValueError("modulus of the progression must be positive")
        prec = -((r - self.prec) // m)
        if self.is_zero():
            return LaurentSeries.zero(prec, self.modulus)
        n0 = -((r - self.min_exp) // m)
        start = m * n0 + r - self.min_exp
        return LaurentSeries._raw(n0, list(self.coeffs[start::m]), prec, self.modulus)

    def reduce_mod(self, m: int) -> "LaurentSeries":
        """Reduce every coefficient to ``[0, m)`` and carry ``m`` from now on."""
        if m < 2:
            raise ValueError("reduction modulus must be at least 2")
        modulus = _common_modulus(self.modulus, m)
        return LaurentSeries._raw(self.min_exp, [c % modulus for c in self.coeffs], self.prec, modulus)

    def lift(self) -> "LaurentSeries":
        """Drop the modulus, keeping the canonical residues as integers."""
        return LaurentSeries._raw(self.min_exp, list(self.coeffs), self.prec, None)

    # -- serialisation -------------------------------------------------------

    def to_json(self) -> dict:
        data = {"minExp": self.min_exp, "prec": self.prec, "coeffs": [str(c) for c in self.coeffs]}
        if self.modulus is not None:
            data["modulus"] = str(self.modulus)
        return data

    @classmethod
    def from_json(cls, data: dict) -> "LaurentSeries":
        modulus = data.get("modulus")
        return cls(
            [int(c) for c in data["coeffs"]],
            int(data["minExp"]),
            int(data["prec"]),
            int(modulus) if modulus is not None else None,
        )


# Module-level spellings of the core operations.


def add(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    return f + g


def mul(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    return f * g


def invert(f: LaurentSeries) -> LaurentSeries:
    return f.invert()


def power(f: LaurentSeries, k: int) -> LaurentSeries:
    return f ** k


def scale(f: LaurentSeries, t: int) -> LaurentSeries:
    return f.scale(t)


def extract_progression(f: LaurentSeries, r: int, m: int) -> LaurentSeries:
    return f.extract_progression(r, m)


def reduce_mod(f: LaurentSeries, m: int) -> LaurentSeries:
    return f.reduce_mod(m)


def coefficient_at(f: LaurentSeries, n: int) -> int:
    return f.coefficient_at(n)


def U5(f: LaurentSeries) -> LaurentSeries:
    """Atkin's operator: keep the coefficients at exponents divisible by 5."""
    return f.extract_progression(0, 5)
