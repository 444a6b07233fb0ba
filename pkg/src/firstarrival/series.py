"""Truncated power series, the Hadamard product and series-parallel reductions.

A :class:`PowerSeries` keeps coefficients ``0..N`` of an ordinary
generating function.  Division by ``1 - z`` is a prefix sum and
multiplication by ``1 - z`` a first difference; neither ever needs
polynomial division, so rational coefficients stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple, Sequence

from .errors import DegreeMismatch, NonMonotoneCDF, OrderViolation
from .multigraph import Scalar, mode_of

DEFAULT_TRUNCATION = 256


@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        if not len(coeffs):
            raise ValueError("a power series needs at least the constant term")
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def constant(cls, c, degree: int) -> "PowerSeries":
        return cls([c] + [c * 0] * degree)

    @classmethod
    def monomial(cls, k: int, degree: int, c=Fraction(1)) -> "PowerSeries":
        zero = c * 0
        return cls([c if n == k else zero for n in range(degree + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other: "PowerSeries"):
        if self.degree != other.degree:
            raise DegreeMismatch(f"truncation degrees differ: {self.degree} vs {other.degree}")

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries((self[0] + other,) + self.coeffs[1:])
        self._check(other)
        return PowerSeries([a + b for a, b in zip(self, other)])

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-a for a in self])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return cauchy_mul(self, other)
        return PowerSeries([a * other for a in self])

    def __rmul__(self, other):
        return PowerSeries([other * a for a in self])

    def hadamard(self, other: "PowerSeries") -> "PowerSeries":
        return hadamard(self, other)

    def prefix_sum(self) -> "PowerSeries":
        """Multiply by ``1/(1 - z)``."""
        out, acc = [], self[0] * 0
        for a in self:
            acc += a
            out.append(acc)
        return PowerSeries(out)

    def difference(self) -> "PowerSeries":
        """Multiply by ``1 - z``."""
        c = self.coeffs
        return PowerSeries([c[0]] + [c[n] - c[n - 1] for n in range(1, len(c))])

    def scale_argument(self, a) -> "PowerSeries":
        """``F(a z)``."""
        out, w = [], a ** 0
        for c in self:
            out.append(c * w)
            w *= a
        return PowerSeries(out)

    def evaluate(self, z):
        acc = self[0] * 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def survival(self) -> list:
        """``1 - (c_0 + ... + c_n)`` for every ``n``: the tail probabilities of a pmf."""
        one = self[0] ** 0
        return [one - c for c in self.prefix_sum()]

    @classmethod
    def from_survival(cls, surv: Sequence) -> "PowerSeries":
        one = surv[0] ** 0
        return cls([one - surv[0]] + [surv[n - 1] - surv[n] for n in range(1, len(surv))])


def cauchy_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Ordinary product, truncated at the common degree."""
    a._check(b)
    n = len(a)
    zero = a[0] * 0
    out = [zero] * n
    bz = [k for k in range(n) if b[k]]
    for i, ai in enumerate(a):
        if not ai:
            continue
        for k in bz:
            if i + k >= n:
                break
            out[i + k] += ai * b[k]
    return PowerSeries(out)


def hadamard(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Termwise product."""
    a._check(b)
    return PowerSeries([x * y for x, y in zip(a, b)])


def geometric(degree: int, a=Fraction(1)) -> PowerSeries:
    """``J(a z) = 1/(1 - a z)``, the identity for the Hadamard product when ``a = 1``."""
    return r_geometric(1, a, degree)


def r_geometric(r: int, a, degree: int) -> PowerSeries:
    """``J^r(a z) = (1 - a z)^(-r)``: coefficients ``C(r+k-1, k) a^k``."""
    if r < 1:
        raise ValueError("r must be a positive integer")
    out, w = [], a ** 0
    for k in range(degree + 1):
        out.append(comb(r + k - 1, k) * w)
        w *= a
    return PowerSeries(out)


def hadamard_geometric_closed(m: int, n: int, a, b, degree: int) -> PowerSeries:
    """Closed form of ``J^m(a z) ⊙ J^n(b z)`` for ``m >= n >= 1``.

    Equals ``J^(m+n-1)(ab z)`` times the polynomial
    ``sum_i C(m-1, i) C(n-1, i) (ab z)^i``.
    """
    if n < 1:
        raise ValueError("m and n must be positive")
    if m < n:
        raise OrderViolation(f"need m >= n, got m={m}, n={n}")
    w = a * b
    poly = [comb(m - 1, i) * comb(n - 1, i) * w**i for i in range(n)]
    poly += [w * 0] * (degree + 1 - len(poly))
    return cauchy_mul(r_geometric(m + n - 1, w, degree), PowerSeries(poly[: degree + 1]))


def path_ogf(r: int, q, degree: int) -> PowerSeries:
    """First-arrival OGF of a path with ``r`` edges: ``(p z)^r / (1 - q z)^r``."""
    if r < 1:
        raise ValueError("path length must be positive")
    if not 0 <= q < 1:
        raise ValueError("q must lie in [0, 1)")
    p = 1 - q
    zero = q * 0
    out = []
    for n in range(degree + 1):
        out.append(comb(n - 1, r - 1) * p**r * q ** (n - r) if n >= r else zero)
    return PowerSeries(out)


def series_reduce(phi1: PowerSeries, phi2: PowerSeries) -> PowerSeries:
    """OGF across an articulation vertex: the arrival times add, so the OGFs multiply."""
    return cauchy_mul(phi1, phi2)


def parallel_reduce(phiH: PowerSeries, phiK: PowerSeries) -> PowerSeries:
    """OGF across a separating pair: the arrival time is the minimum of the branches.

    Computed as ``survival_G[n] = survival_H[n] * survival_K[n]`` followed by
    a first difference; this equals
    ``Φ_H + Φ_K - (1 - z)[Φ_H/(1 - z) ⊙ Φ_K/(1 - z)]``.
    """
    phiH._check(phiK)
    sH, sK = phiH.survival(), phiK.survival()
    return PowerSeries.from_survival([x * y for x, y in zip(sH, sK)])


def parallel_reduce_hadamard(phiH: PowerSeries, phiK: PowerSeries) -> PowerSeries:
    """The same reduction written literally with the Hadamard product."""
    cross = hadamard(phiH.prefix_sum(), phiK.prefix_sum()).difference()
    return phiH + phiK - cross


def two_paths_ogf(n: int, m: int, q, degree: int) -> PowerSeries:
    """Closed-form OGF of two internally disjoint s-t paths of lengths ``n <= m``.

    With ``x = q^2 z`` the survival series of the pair is

        sum_{a<n} sum_{b<m} sum_j C(a,j) C(b,j) p^(a+b) q^(a+b-2j) z^(a+b-j) J^(a+b+1)(x)

    (the product of two binomial tails, summed in closed form), and the OGF
    is ``1 - (1 - z)`` times it.
    """
    if n < 1:
        raise ValueError("path lengths must be positive")
    if m < n:
        raise OrderViolation(f"need m >= n, got n={n}, m={m}")
    p = 1 - q
    x = q * q
    zero = q * 0
    surv = [zero] * (degree + 1)
    for a in range(n):
        for b in range(m):
            J = r_geometric(a + b + 1, x, degree)
            for j in range(min(a, b) + 1):
                c = comb(a, j) * comb(b, j) * p ** (a + b) * q ** (a + b - 2 * j)
                shift = a + b - j
                for k in range(degree + 1 - shift):
                    surv[k + shift] += c * J[k]
    return PowerSeries.from_survival(surv)


class SurvivalExpectation(NamedTuple):
    """``value = partial + remainder``; the remainder is the extrapolated tail."""

    value: Scalar
    partial: Scalar
    remainder: Scalar


def expectation_from_survival(phi: PowerSeries, tail_mode: bool = True) -> SurvivalExpectation:
    """Mean of the distribution with OGF ``phi`` via ``sum_n Pr(Z > n)``.

    With ``tail_mode`` the sum beyond the truncation degree is estimated by a
    geometric tail fitted to the last two survival values; the fit is exact
    for geometric tails and an estimate otherwise.
    """
    surv = phi.survival()
    tol = 0 if mode_of(surv[0]) == "rational" else 1e-12
    prev = surv[0] ** 0
    for n, s in enumerate(surv):
        if s > prev + tol:
            raise NonMonotoneCDF(f"survival increases at n={n}")
        prev = s
    partial = sum(surv, surv[0] * 0)
    remainder = surv[0] * 0
    if tail_mode and len(surv) >= 2 and surv[-2] and surv[-1]:
        r = surv[-1] / surv[-2]
        if r < 1:
            remainder = surv[-1] * r / (1 - r)
        else:
            remainder = float("inf")
    return SurvivalExpectation(partial + remainder, partial, remainder)


def pmf_series(probs: Sequence, degree: int | None = None) -> PowerSeries:
    """Wrap a pmf list (e.g. from the exact engine) as a power series."""
    probs = list(probs)
    if degree is not None:
        zero = probs[0] * 0
        probs = (probs + [zero] * (degree + 1))[: degree + 1]
    return PowerSeries(probs)

