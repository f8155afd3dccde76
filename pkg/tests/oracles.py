"""Slow, independent reference computations used only by the tests."""

from fractions import Fraction
from math import floor


def poly_mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def euler_product(n):
    """prod_{k=1}^{n} (1 - q^k) truncated below q^n, by literal multiplication."""
    c = [1] + [0] * (n - 1)
    for k in range(1, n):
        c = poly_mul(c, [1] + [0] * (k - 1) + [-1], n)
    return c


def partition_counts(n, colors=1):
    """Number of `colors`-coloured partitions of 0..n-1 by the coin-change DP."""
    p = [1] + [0] * (n - 1)
    for _ in range(colors):
        for part in range(1, n):
            for m in range(part, n):
                p[m] += p[m - part]
    return p


def s_by_dict(up_to):
    """s(0..up_to) by expanding the generating function term by term in dicts."""
    total = {0: 1}
    n = 1
    while 3 * n - 2 <= up_to:
        poly = {3 * n - 2: 1}
        for i in range(n - 1):
            step = 6 * i + 3
            new = dict(poly)
            for e, c in poly.items():
                if e + step <= up_to:
                    new[e + step] = new.get(e + step, 0) + c
            poly = new
        for e, c in poly.items():
            total[e] = total.get(e, 0) + c
        n += 1
    return [total.get(k, 0) for k in range(up_to + 1)]


def triple_product_sum(which, n):
    """M1(-q) = sum (-1)^k q^(5k^2-2k), M2(-q) = sum (-1)^k q^(5k^2-4k) (Jacobi)."""
    lin = 2 if which == 1 else 4
    c = [0] * n
    for k in range(-n, n + 1):
        e = 5 * k * k - lin * k
        if 0 <= e < n:
            c[e] += -1 if k % 2 else 1
    return c


def rational_floor(num, den):
    return floor(Fraction(num, den))


def val5_by_division(n):
    if n == 0:
        return None
    v = 0
    while n % 5 == 0:
        n //= 5
        v += 1
    return v
