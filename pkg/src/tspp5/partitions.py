"""Counting tables for s(n) (1-shell TSPPs) and g(n).

s(n) is read off

    1 + sum_{n>=1} q**(3n-2) prod_{i=0}^{n-2} (1 + q**(6i+3)),

and g(n) off E(q**2)**3 / E(q)**2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .etaq import G, expand
from .report import VerificationReport, timed


@dataclass(frozen=True)
class CountTable:
    kind: str  # "S" or "G"
    up_to: int
    values: Sequence[int]
    modulus: Optional[int] = None

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


_REDUCE_EVERY = 32


def s_series(up_to: int, modulus: Optional[int] = None) -> CountTable:
    """s(0..up_to), exactly or reduced mod ``modulus``."""
    if up_to < 0:
        raise ValueError("up_to must be nonnegative")
    if modulus is not None and modulus >= 1 << 24:
        raise ValueError("modular mode supports moduli below 2**24")
    dtype = object if modulus is None else np.int64
    total = np.zeros(up_to + 1, dtype=dtype)
    total[0] = 1
    # running product prod_{i<=n-2} (1 + q^(6i+3)), kept only as far as it can still land
    prod = np.zeros(up_to + 1, dtype=dtype)
    prod[0] = 1
    n = 1
    while 3 * n - 2 <= up_to:
        e = 3 * n - 2
        w = up_to - e + 1
        total[e:] += prod[:w]
        a = 6 * n - 3  # factor joining the product for the next outer index
        w_next = w - 3
        if w_next > a:
            prod[a:w_next] = prod[a:w_next] + prod[: w_next - a]
        if modulus is not None and n % _REDUCE_EVERY == 0:
            # entries at most double per step; int64 headroom allows ~40 steps
            total %= modulus
            prod[:w_next] %= modulus
        n += 1
    if modulus is not None:
        total %= modulus
    return CountTable("S", up_to, [int(v) for v in total], modulus)


def g_series(up_to: int, modulus: Optional[int] = None) -> CountTable:
    """g(0..up_to) from E(q^2)^3 / E(q)^2."""
    if up_to < 0:
        raise ValueError("up_to must be nonnegative")
    f = expand(G, up_to + 1, modulus)
    return CountTable("G", up_to, f.coefficients(0, up_to + 1), modulus)


def check_fg(up_to: int, s_table: Optional[CountTable] = None, g_table: Optional[CountTable] = None) -> VerificationReport:
    """s(6n+1) == g(n) for every 6n+1 <= up_to."""
    report = VerificationReport("s(6n+1)=g(n)", {"upTo": up_to})
    with timed(report):
        n_max = (up_to - 1) // 6
        if s_table is None:
            s_table = s_series(up_to)
        if g_table is None:
            g_table = g_series(max(n_max, 0))
        for n in range(n_max + 1):
            report.checked += 1
            if s_table[6 * n + 1] != g_table[n]:
                report.fail(n, [s_table[6 * n + 1], g_table[n]])
    return report


def check_mod3_vanishing(up_to: int, s_table: Optional[CountTable] = None) -> VerificationReport:
    """s(n) is exactly zero for 1 <= n <= up_to with n = 0, 2 (mod 3)."""
    report = VerificationReport("s(n)=0 for n=0,2 mod 3", {"upTo": up_to})
    with timed(report):
        if s_table is None:
            s_table = s_series(up_to)
        if s_table.modulus is not None:
            raise ValueError("exact vanishing needs an exact table")
        for n in range(1, up_to + 1):
            if n % 3 != 1:
                report.checked += 1
                if s_table[n] != 0:
                    report.fail(n, s_table[n])
    return report
