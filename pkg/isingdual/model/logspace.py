"""Log-domain arithmetic: weights are natural logs, zero weight is -inf."""
from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from ..errors import NumericFailure

LogWeight = float

NEG_INF = float("-inf")


def check_log_weight(value: float, what: str = "log weight") -> float:
    if math.isnan(value):
        raise NumericFailure(f"{what} is NaN")
    return value


def logsumexp(values: Sequence[float]) -> float:
    a = np.asarray(values, dtype=np.float64)
    if a.size == 0:
        return NEG_INF
    a_max = float(np.max(a))
    if not math.isfinite(a_max):
        return a_max
    return a_max + math.log(float(np.sum(np.exp(a - a_max))))


def signed_logsumexp(log_abs: Sequence[float], signs: Sequence[float]) -> float:
    """ln(sum(sign_i * exp(log_abs_i))); the sum must come out non-negative."""
    a = np.asarray(log_abs, dtype=np.float64)
    s = np.asarray(signs, dtype=np.float64)
    a_max = float(np.max(a))
    if not math.isfinite(a_max):
        return a_max
    total = float(np.sum(s * np.exp(a - a_max)))
    if total < 0.0:
        raise NumericFailure("signed log-sum-exp of a negative total")
    if total == 0.0:
        return NEG_INF
    return a_max + math.log(total)


class WeightMoments:
    """Streaming count, first and second moment of weights given as logs.

    State is (n, m, s1, s2) with s1 = sum exp(x - m) and s2 = sum exp(2(x - m));
    ``merge`` is associative, so partial results from separate blocks combine
    exactly when merged in a fixed order.
    """

    __slots__ = ('count', '_m', '_s1', '_s2')

    def __init__(self) -> None:
        self.count: int = 0
        self._m: Optional[float] = None
        self._s1: float = 0.0
        self._s2: float = 0.0

    @classmethod
    def of(cls, log_weights: NDArray[np.float64]) -> 'WeightMoments':
        acc = cls()
        acc.update(log_weights)
        return acc

    def update(self, log_weights: NDArray[np.float64]) -> None:
        x = np.asarray(log_weights, dtype=np.float64)
        if x.size == 0:
            return
        if np.any(np.isnan(x)):
            raise NumericFailure("NaN log weight in sample block")
        self.count += int(x.size)
        m2 = float(np.max(x))
        if m2 == NEG_INF:
            return
        z = np.exp(x - m2)
        self._absorb(m2, float(np.sum(z)), float(np.sum(z * z)))

    def _absorb(self, m2: float, s1: float, s2: float) -> None:
        if self._m is None:
            self._m, self._s1, self._s2 = m2, s1, s2
        elif m2 <= self._m:
            r = math.exp(m2 - self._m)
            self._s1 += r * s1
            self._s2 += r * r * s2
        else:
            r = math.exp(self._m - m2)
            self._s1 = r * self._s1 + s1
            self._s2 = r * r * self._s2 + s2
            self._m = m2

    def merge(self, other: 'WeightMoments') -> 'WeightMoments':
        out = WeightMoments()
        out.count = self.count
        out._m, out._s1, out._s2 = self._m, self._s1, self._s2
        out.count += other.count
        if other._m is not None:
            out._absorb(other._m, other._s1, other._s2)
        return out

    def log_mean(self) -> float:
        """ln of the mean weight."""
        if self.count == 0:
            raise ValueError("no weights accumulated")
        if self._m is None or self._s1 == 0.0:
            return NEG_INF
        return self._m + math.log(self._s1 / self.count)

    def chi_square(self) -> float:
        """Sample variance of the weights over their squared mean."""
        if self.count == 0:
            raise ValueError("no weights accumulated")
        if self._m is None or self._s1 == 0.0:
            return math.inf
        if self.count < 2:
            return 0.0
        n = self.count
        var = (self._s2 - self._s1 * self._s1 / n) / (n - 1)
        mean = self._s1 / n
        return max(var, 0.0) / (mean * mean)

    def std_error_log(self) -> float:
        """Delta-method standard error of the log of the sample mean."""
        return math.sqrt(self.chi_square() / self.count)


class LogSumExpAccumulator:
    """Running ln(sum exp(x)) over blocks of values."""

    __slots__ = ('_m', '_s')

    def __init__(self) -> None:
        self._m: Optional[float] = None
        self._s: float = 0.0

    def update(self, x: NDArray[np.float64]) -> None:
        x = np.asarray(x, dtype=np.float64)
        if x.size == 0:
            return
        m2 = float(np.max(x))
        if m2 == NEG_INF:
            return
        s2 = float(np.sum(np.exp(x - m2)))
        self._absorb(m2, s2)

    def _absorb(self, m2: float, s2: float) -> None:
        if self._m is None:
            self._m, self._s = m2, s2
        elif m2 <= self._m:
            self._s += math.exp(m2 - self._m) * s2
        else:
            self._s = math.exp(self._m - m2) * self._s + s2
            self._m = m2

    def merge(self, other: 'LogSumExpAccumulator') -> 'LogSumExpAccumulator':
        out = LogSumExpAccumulator()
        out._m, out._s = self._m, self._s
        if other._m is not None:
            out._absorb(other._m, other._s)
        return out

    def logsumexp(self) -> float:
        if self._m is None:
            return NEG_INF
        return self._m + math.log(self._s)


def masked_log_sum(bits: NDArray, log_factors: NDArray[np.float64]) -> NDArray[np.float64]:
    """Row-wise sum of ``log_factors`` where ``bits`` is set, with 0 * -inf = 0.

    ``bits`` has shape (n, k) or (k,); rows touching a -inf factor come out -inf.
    """
    b = np.asarray(bits, dtype=np.float64)
    f = np.asarray(log_factors, dtype=np.float64)
    finite = np.isfinite(f)
    total = b @ np.where(finite, f, 0.0)
    if not np.all(finite):
        dead = (b @ (~finite).astype(np.float64)) > 0
        total = np.where(dead, NEG_INF, total)
    return total
