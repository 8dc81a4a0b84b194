"""Exact evaluation of every closed-form bound, in base-3 and base-2 ladder
variants, plus the cited external bounds.

Exact values are arbitrary-precision integers assembled from the ladder
product; display forms carry irrational exponents and are evaluated with
mpmath at 60 significant digits, rounded up by one unit in the last place so
that the reported integer stays a sound upper value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from mpmath import mp, mpf, log, ceil as mp_ceil

from .errors import InputError

__all__ = [
    "ceil_log",
    "BoundValue",
    "word_length_bound",
    "height_bound",
    "essential_height_bound",
    "nil_degree_upper",
    "compare_with_nil_degree_upper",
    "nil_degree_lower",
    "height_lower",
    "multilinear_word_bound",
    "external_bounds",
    "crossover_sweep",
]

mp.dps = 60
_ULP_UP = mpf(1) + mpf(10) ** -50


def ceil_log(base: int, x: int) -> int:
    """Smallest integer e >= 0 with base**e >= x (exact, no floating point)."""
    if base < 2 or x < 1:
        raise InputError(f"need base >= 2 and x >= 1, got base={base}, x={x}")
    e, v = 0, 1
    while v < x:
        v *= base
        e += 1
    return e


@dataclass(frozen=True, slots=True)
class BoundValue:
    """An exact integer upper bound next to its closed display form.

    ``covers`` records whether the display form really dominates the exact
    ladder value on this instance; deviations are reported, never silently
    passed.
    """

    exact: int
    display: object  # mpf
    display_int: int
    covers: bool


def _bound_value(exact: int, display) -> BoundValue:
    display = display * _ULP_UP
    return BoundValue(
        exact=exact,
        display=display,
        display_int=int(mp_ceil(display)),
        covers=mpf(exact) <= display,
    )


def _exact_ladder(n: int, d: int, l: int, base: int) -> int:
    p = 4 * n * d - 1
    steps = ceil_log(base, p)
    return (1 + p * l) * (p**base + p) ** steps * p * d * d + d


def word_length_bound(n: int, d: int, l: int, base: int = 3) -> BoundValue:
    """Length above which every word over l letters is n-divisible or carries a
    d-th power: exact ladder product next to the closed display form."""
    if n < 2 or d < n:
        raise InputError(f"need d >= n >= 2, got n={n}, d={d}")
    if l < 1:
        raise InputError(f"need l >= 1, got l={l}")
    if base not in (2, 3):
        raise InputError(f"ladder base must be 2 or 3, got {base}")
    exact = _exact_ladder(n, d, l, base)
    nd = n * d
    if base == 3:
        display = mpf(4) ** (5 + 3 * log(4, 3)) * l * mpf(nd) ** (3 * log(nd, 3) + 5 + 6 * log(4, 3)) * d * d
    else:
        display = 256 * l * mpf(nd) ** (2 * log(nd, 2) + 10) * d * d
    return _bound_value(exact, display)


def essential_height_bound(n: int, l: int) -> int:
    """Cap on the number of distinct periodic fragments: 2 * n^(3*ceil(log3 n) + 4) * l."""
    if n < 2 or l < 1:
        raise InputError(f"need n >= 2 and l >= 1, got n={n}, l={l}")
    return 2 * n ** (3 * ceil_log(3, n) + 4) * l


def height_bound(n: int, l: int, base: int = 3) -> BoundValue:
    """Height cap for words with no n-division: the word-length bound at
    exponent 4n plus five times the essential-height cap, next to the closed
    display form."""
    if n < 2 or l < 1:
        raise InputError(f"need n >= 2 and l >= 1, got n={n}, l={l}")
    if base not in (2, 3):
        raise InputError(f"ladder base must be 2 or 3, got {base}")
    exact = _exact_ladder(n, 4 * n, l, base) + 5 * essential_height_bound(n, l)
    if base == 3:
        e1 = mpf(4) ** (21 * log(4, 3) + 17)
        e2 = 30 * log(4, 3) + 10
        display = e1 * l * mpf(n) ** (e2 + 12 * log(n, 3))
    else:
        display = mpf(2) ** 40 * l * mpf(n) ** (38 + 8 * log(n, 2))
    return _bound_value(exact, display)


def nil_degree_upper(n: int, l: int) -> int:
    """Known nilpotency-degree cap 4 * 2^(n/2) * l in characteristic > n/2,
    rounded up to an integer for odd n."""
    if n < 2 or l < 1:
        raise InputError(f"need n >= 2 and l >= 1, got n={n}, l={l}")
    if n % 2 == 0:
        return 4 * l * 2 ** (n // 2)
    base = 4 * l * 2 ** ((n - 1) // 2)  # times sqrt(2)
    val = isqrt(2 * base * base)
    return val if val * val == 2 * base * base else val + 1


def compare_with_nil_degree_upper(value: int, n: int, l: int) -> int:
    """Exact sign of value - 4*2^(n/2)*l (squared comparison for odd n)."""
    if n % 2 == 0:
        ref = 4 * l * 2 ** (n // 2)
        return (value > ref) - (value < ref)
    lhs = value * value
    rhs = 16 * l * l * 2**n  # (4 * 2^(n/2) * l)^2
    return (lhs > rhs) - (lhs < rhs)


def nil_degree_lower(n: int) -> int:
    """Known strict lower bound (n^2 + n - 2) / 2 on the nilpotency degree."""
    if n < 2:
        raise InputError(f"need n >= 2, got {n}")
    return (n * n + n - 2) // 2


def height_lower(n: int, l: int) -> Fraction:
    """Growth-dimension lower bound (l - 1) n^2 / 4 + 1 on the height."""
    if n < 2 or l < 1:
        raise InputError(f"need n >= 2 and l >= 1, got n={n}, l={l}")
    return Fraction((l - 1) * n * n, 4) + 1


def multilinear_word_bound(m: int, k: int) -> int:
    """Cap (m-1)^(2k) on multilinear words of degree k with no m-term
    decreasing chain."""
    if m < 1 or k < 1:
        raise InputError(f"need m >= 1 and k >= 1, got m={m}, k={k}")
    return (m - 1) ** (2 * k)


def external_bounds(n: int, l: int) -> dict:
    return {
        "lopatin": nil_degree_upper(n, l),
        "kuzmin_lower": nil_degree_lower(n),
        "gk_lower": height_lower(n, l),
    }


def crossover_sweep(l: int, n_max: int = 10**6) -> dict:
    """Logarithmic sweep comparing the exact word-length bound at d = n with
    the known exponential nilpotency cap; reports witnesses for both regimes."""
    small_regime = None  # exponential cap smaller
    large_regime = None  # subexponential bound smaller
    n = 2
    while n <= n_max:
        exact = word_length_bound(n, n, l).exact
        sign = compare_with_nil_degree_upper(exact, n, l)
        if sign > 0 and small_regime is None:
            small_regime = n
        if sign < 0 and large_regime is None:
            large_regime = n
        if small_regime is not None and large_regime is not None:
            break
        n *= 2
    return {"exponential_smaller_at": small_regime, "ladder_smaller_at": large_regime}
