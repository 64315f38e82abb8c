"""Exact counts of merger patterns.

Three independent routes are provided for both the unrestricted count T
(all non-crossing matchings of 2J levels) and the symmetric count P:

* recurrences built bottom-up from the arch decomposition,
* closed forms (Catalan number, central binomial ``C(J, J // 2)``),
* coefficients of the generating functions ``f = 1 + x f**2`` and
  ``g = 1 / (1 - x - x**2 f(x**2))`` expanded as exact power series.

Everything is plain Python ``int``; no floating point is involved.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


def t_table(J_max: int) -> list[int]:
    """``[T(0), ..., T(J_max)]`` from the arch recurrence."""
    if J_max < 0:
        raise ValueError(f"J must be >= 0, got {J_max}")
    t = [1]
    for n in range(1, J_max + 1):
        t.append(sum(t[i] * t[n - 1 - i] for i in range(n)))
    return t


def p_table(J_max: int) -> list[int]:
    """``[P(0), ..., P(J_max)]``.

    Either the outermost levels pair up around a smaller symmetric pattern,
    or level 1 closes an arch of width 2i + 2 whose mirror image sits at the
    other end, leaving a symmetric middle of 2J - 4i - 4 levels.
    """
    t = t_table(J_max // 2)
    p = [1]
    for n in range(1, J_max + 1):
        p.append(p[n - 1] + sum(t[i] * p[n - 2 * i - 2] for i in range(n // 2)))
    return p


def count_T_recurrence(J: int) -> int:
    return t_table(J)[J]


def count_T_closed(J: int) -> int:
    if J < 0:
        raise ValueError(f"J must be >= 0, got {J}")
    return math.factorial(2 * J) // (math.factorial(J + 1) * math.factorial(J))


def count_P_recurrence(J: int) -> int:
    return p_table(J)[J]


def count_P_closed(J: int) -> int:
    if J < 0:
        raise ValueError(f"J must be >= 0, got {J}")
    return math.comb(J, J // 2)


@dataclass(frozen=True)
class Series:
    """Truncated formal power series with integer coefficients.

    ``coefficients[k]`` is the coefficient of ``x**k``; the series is known
    modulo ``x**order``. Arithmetic truncates to the smaller order.
    """

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("a series needs at least one coefficient")

    @classmethod
    def of(cls, coeffs: Sequence[int], order: int | None = None) -> Series:
        order = len(coeffs) if order is None else order
        padded = list(coeffs[:order]) + [0] * (order - len(coeffs))
        return cls(tuple(int(c) for c in padded))

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k]

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.coefficients)

    def truncate(self, order: int) -> Series:
        return Series.of(self.coefficients, order)

    def __add__(self, other: Series | int) -> Series:
        if isinstance(other, int):
            return Series((self[0] + other,) + self.coefficients[1:])
        n = min(self.order, other.order)
        return Series(tuple(a + b for a, b in zip(self.coefficients[:n], other.coefficients[:n])))

    def __neg__(self) -> Series:
        return Series(tuple(-c for c in self.coefficients))

    def __sub__(self, other: Series | int) -> Series:
        return self + (-other)

    def __rsub__(self, other: int) -> Series:
        return (-self) + other

    def __mul__(self, other: Series | int) -> Series:
        if isinstance(other, int):
            return Series(tuple(other * c for c in self.coefficients))
        n = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        return Series(tuple(sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)))

    __rmul__ = __mul__

    def shift(self, k: int) -> Series:
        """Multiply by ``x**k`` keeping the order."""
        return Series.of((0,) * k + self.coefficients, self.order)

    def compose_square(self) -> Series:
        """``s(x**2)`` by interleaving zeros; the order doubles."""
        out = [0] * (2 * self.order)
        out[::2] = self.coefficients
        return Series(tuple(out))

    def inverse(self) -> Series:
        """Reciprocal series; the constant term must be a unit (+1 or -1)."""
        a0 = self[0]
        if a0 not in (1, -1):
            raise ValueError(f"constant term {a0} is not invertible over the integers")
        a = self.coefficients
        h = [a0]
        for n in range(1, self.order):
            h.append(-a0 * sum(a[k] * h[n - k] for k in range(1, n + 1)))
        return Series(tuple(h))


def series_f(order: int) -> Series:
    """Generating function of T to ``order`` terms.

    Newton iteration on ``x f**2 - f + 1 = 0``; each pass doubles the number
    of correct coefficients.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    f = Series((1,))
    n = 1
    while n < order:
        n = min(2 * n, order)
        f = f.truncate(n)
        residual = (f * f).shift(1) - f + 1
        slope = (f * 2).shift(1) - 1
        f = f - residual * slope.inverse()
    return f


def series_g(order: int) -> Series:
    """Generating function of P from ``g (1 - x - x**2 f(x**2)) = 1``."""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    f2 = series_f((order + 1) // 2).compose_square().truncate(order)
    x = Series.of([0, 1], order)
    denominator = 1 - x - f2.shift(2)
    return denominator.inverse()
