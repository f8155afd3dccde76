"""Eta quotients, Ramanujan's phi(-q) and the two triple products M1, M2.

Every eta quotient here is written as ``q**q_prefix * prod E(q**t)**e`` with
``E(q) = (q; q)_inf``; the ``q**(1/24)`` weights have already been cancelled
into the integer prefix.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

from .errors import InternalIdentityFailure
from .series import LaurentSeries


@dataclass(frozen=True)
class EtaQuotientSpec:
    factors: Tuple[Tuple[int, int], ...]
    q_prefix: int = 0

    def __post_init__(self):
        factors = tuple((int(t), int(e)) for t, e in self.factors)
        scales = [t for t, _ in factors]
        if any(t < 1 for t in scales):
            raise ValueError("eta quotient scales must be positive")
        if scales != sorted(set(scales)):
            raise ValueError("eta quotient scales must be distinct and sorted")
        if any(e == 0 for _, e in factors):
            raise ValueError("eta quotient exponents must be nonzero")
        object.__setattr__(self, "factors", factors)

    def to_json(self) -> dict:
        return {"qPrefix": self.q_prefix, "factors": [{"t": t, "e": e} for t, e in self.factors]}

    @classmethod
    def from_json(cls, data) -> "EtaQuotientSpec":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple((f["t"], f["e"]) for f in data["factors"]), int(data.get("qPrefix", 0)))


XI = EtaQuotientSpec(((1, -2), (2, 3), (25, 2), (50, -3)), -4)
X = EtaQuotientSpec(((1, -4), (2, 2), (5, 4), (10, -2)), 0)
G = EtaQuotientSpec(((1, -2), (2, 3)), 0)
PHI_NEG = EtaQuotientSpec(((1, 2), (2, -1)), 0)

BUILTIN_SPECS = {"xi": XI, "X": X, "g": G, "phi-neg": PHI_NEG}


def pentagonal_terms(prec: int):
    """Yield ``(exponent, sign)`` for the nonzero terms of E(q) below ``prec``."""
    yield 0, 1
    k = 1
    while True:
        sign = -1 if k & 1 else 1
        a = k * (3 * k - 1) // 2
        b = k * (3 * k + 1) // 2
        if a >= prec:
            return
        yield a, sign
        if b < prec:
            yield b, sign
        k += 1


_euler_lock = threading.Lock()


@lru_cache(maxsize=16)
def _euler_cached(prec: int, modulus: Optional[int]) -> LaurentSeries:
    coeffs = [0] * prec
    for e, s in pentagonal_terms(prec):
        coeffs[e] = s
    return LaurentSeries(coeffs, 0, prec, modulus)


def euler_e(prec: int, modulus: Optional[int] = None) -> LaurentSeries:
    """E(q) = prod_{n>=1} (1 - q**n) via the pentagonal number theorem."""
    if prec < 1:
        raise ValueError("prec must be at least 1")
    with _euler_lock:
        return _euler_cached(prec, modulus)


def _eta_power(t: int, e: int, prec: int, modulus: Optional[int]) -> LaurentSeries:
    # Raise at the unscaled precision, then substitute q -> q**t.
    base_prec = -(-(prec + t - 1) // t)
    f = euler_e(base_prec, modulus) ** e
    return f.scale(t).truncate(prec)


@lru_cache(maxsize=32)
def _expand_cached(spec: EtaQuotientSpec, prec: int, modulus: Optional[int]) -> LaurentSeries:
    need = prec - spec.q_prefix
    result = None
    for t, e in spec.factors:
        factor = _eta_power(t, e, need, modulus)
        result = factor if result is None else result * factor
    if result is None:
        result = LaurentSeries.one(need, modulus)
    return result.shift(spec.q_prefix)


def expand(spec: EtaQuotientSpec, prec: int, modulus: Optional[int] = None) -> LaurentSeries:
    """Expand an eta quotient exactly below ``q**prec``."""
    if prec <= spec.q_prefix:
        raise ValueError(f"prec {prec} must exceed the q-prefix {spec.q_prefix}")
    return _expand_cached(spec, prec, modulus)


def phi_neg(prec: int, modulus: Optional[int] = None) -> LaurentSeries:
    """phi(-q) = 1 + 2 sum_{n>=1} (-1)**n q**(n*n), cross-checked against E(q)**2/E(q**2)."""
    if prec < 1:
        raise ValueError("prec must be at least 1")
    terms = {0: 1}
    n = 1
    while n * n < prec:
        terms[n * n] = 2 if n % 2 == 0 else -2
        n += 1
    theta = LaurentSeries.from_dict(terms, prec, modulus)
    if theta != expand(PHI_NEG, prec, modulus):
        raise InternalIdentityFailure("theta sum and eta quotient for phi(-q) disagree")
    return theta


_M_RESIDUES = {1: (3, 7, 10), 2: (1, 9, 10)}


def triple_product_m(which: int, prec: int, modulus: Optional[int] = None) -> LaurentSeries:
    """M1(-q) = (q^3, q^7, q^10; q^10)_inf or M2(-q) = (q, q^9, q^10; q^10)_inf."""
    if which not in _M_RESIDUES:
        raise ValueError("which must be 1 or 2")
    if prec < 1:
        raise ValueError("prec must be at least 1")
    exps = sorted(10 * n + r for r in _M_RESIDUES[which] for n in range(prec // 10 + 1) if 10 * n + r < prec)
    c = [0] * prec
    c[0] = 1
    top = 1  # c vanishes from index `top` on
    for a in exps:
        top = min(prec, top + a)
        c[a:top] = [x - y for x, y in zip(c[a:top], c[: top - a])]
        if modulus is not None:
            c[a:top] = [x % modulus for x in c[a:top]]
    return LaurentSeries(c, 0, prec, modulus)


def named_series(name: str, prec: int, modulus: Optional[int] = None) -> LaurentSeries:
    """Resolve ``xi``, ``X``, ``g``, ``phi-neg``, ``M1`` or ``M2`` to a series."""
    if name == "phi-neg":
        return phi_neg(prec, modulus)
    if name in BUILTIN_SPECS:
        return expand(BUILTIN_SPECS[name], prec, modulus)
    if name in ("M1", "M2"):
        return triple_product_m(int(name[1]), prec, modulus)
    raise KeyError(f"unknown named series {name!r}")
