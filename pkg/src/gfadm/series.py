"""Truncated power-series arithmetic in a formal parameter.

A :class:`TruncatedSeries` holds the coefficients ``c0..cN`` of a series
``sum c_k lam^k`` truncated (inclusively) at order ``N``.  All operations
require both operands to carry the same order and produce a result of that
order; a mismatch is a hard error rather than an implicit broadcast.
Coefficients are 64-bit floats throughout.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericError, OrderMismatchError, SingularDivisionError

_DIV_TOL = 1e-14


class TruncatedSeries:
    """Coefficients of a power series truncated at a fixed order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise OrderMismatchError("series needs a non-empty 1-d coefficient list")
        self.coeffs = c

    @classmethod
    def constant(cls, value: float, order: int) -> "TruncatedSeries":
        c = np.zeros(order + 1)
        c[0] = value
        return cls(c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, k: int) -> float:
        return float(self.coeffs[k])

    def __repr__(self):
        return f"TruncatedSeries({self.coeffs.tolist()})"

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.order == other.order
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def _check(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise OrderMismatchError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise OrderMismatchError(
                f"order mismatch: {self.order} vs {other.order}"
            )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-self.coeffs)

    def __add__(self, other) -> "TruncatedSeries":
        self._check(other)
        return _finite(TruncatedSeries(self.coeffs + other.coeffs))

    def __sub__(self, other) -> "TruncatedSeries":
        self._check(other)
        return _finite(TruncatedSeries(self.coeffs - other.coeffs))

    def __mul__(self, other) -> "TruncatedSeries":
        self._check(other)
        n = self.order + 1
        full = np.convolve(self.coeffs, other.coeffs)[:n]
        return _finite(TruncatedSeries(full))

    def __truediv__(self, other) -> "TruncatedSeries":
        self._check(other)
        b = other.coeffs
        if abs(b[0]) <= _DIV_TOL:
            raise SingularDivisionError(
                "division by a series with zero constant term"
            )
        # Long division by forward substitution; orders here are small.
        a = self.coeffs
        q = np.empty_like(a)
        q[0] = a[0] / b[0]
        for k in range(1, a.size):
            q[k] = (a[k] - np.dot(b[1 : k + 1], q[k - 1 :: -1])) / b[0]
        return _finite(TruncatedSeries(q))

    def __pow__(self, p: int) -> "TruncatedSeries":
        if not isinstance(p, (int, np.integer)) or p < 0:
            raise OrderMismatchError("series power wants a non-negative integer")
        out = TruncatedSeries.constant(1.0, self.order)
        for _ in range(int(p)):
            out = out * self
        return out


def _finite(s: TruncatedSeries) -> TruncatedSeries:
    if not np.all(np.isfinite(s.coeffs)):
        raise NumericError("non-finite coefficient in series arithmetic")
    return s


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Truncated Cauchy product ``c_k = sum_j a_j b_{k-j}``."""
    return a * b


def series_div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Quotient q with ``q * b == a`` up to the common order."""
    return a / b


def series_pow_int(a: TruncatedSeries, p: int) -> TruncatedSeries:
    """Repeated multiplication; ``p == 0`` gives the unit series."""
    return a**p
