"""Generating-function constructors for the polynomial families.

Every family here is Appell: its generating function is ``A(t) e^{xt}`` for an
invertible kernel ``A``.  The degree-n member is therefore

    P_n(x) = sum_j C(n, j) alpha_{n-j} x^j,   alpha_i = i! [t^i] A(t),

and ``alpha_n = P_n(0)`` is the associated number sequence.

Parameter naming: ``nu`` is the Hermite variance parameter and ``r`` is the
exponent ("order") of the Bernoulli and Frobenius-Euler kernels.  Both are
called "order" in the literature; they are unrelated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    AlgebraError,
    Number,
    Polynomial,
    Q,
    TruncatedSeries,
    binomial,
)
from .engine import ShefferPair

FAMILIES = (
    "stirling2",
    "bernoulli_number",
    "bernoulli_order_r",
    "poly_bernoulli",
    "hermite",
    "frobenius_euler",
    "hb_mixed",
)

# CLI spellings that map onto the canonical family tags.
FAMILY_ALIASES = {"hb": "hb_mixed", "bernoulli": "bernoulli_order_r"}


class ZeroNu(AlgebraError):
    pass


class LambdaIsOne(AlgebraError):
    pass


def _check_nu(nu: Fraction) -> None:
    if nu == 0:
        raise ZeroNu("nu must be nonzero")


def _check_lam(lam: Fraction) -> None:
    if lam == 1:
        raise LambdaIsOne("lambda must differ from 1")


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")


@dataclass(frozen=True)
class FamilyParams:
    nu: Fraction = Fraction(1)
    k: int = 1
    r: int = 0
    lam: Fraction = Fraction(2)

    def __post_init__(self):
        object.__setattr__(self, "nu", Q(self.nu))
        object.__setattr__(self, "lam", Q(self.lam))
        _check_nu(self.nu)
        _check_lam(self.lam)
        if self.r < 0:
            raise ValueError("r must be >= 0")


# --- combinatorial numbers -------------------------------------------------

@lru_cache(maxsize=None)
def _stirling2_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling2_row(n - 1) + (0,)
    return tuple((m * prev[m] if m else 0) + (prev[m - 1] if m else 0) for m in range(n + 1))


def stirling2(n: int, m: int) -> int:
    """Stirling number of the second kind; 0 outside 0 <= m <= n."""
    if n < 0 or m < 0 or m > n:
        return 0
    return _stirling2_row(n)[m]


@lru_cache(maxsize=None)
def _bernoulli_numbers(n_max: int) -> tuple[Fraction, ...]:
    # sum_{j<=n} C(n+1, j) B_j = 0 for n >= 1, B_0 = 1
    B = [Fraction(1)]
    for n in range(1, n_max + 1):
        s = sum((binomial(n + 1, j) * B[j] for j in range(n)), Fraction(0))
        B.append(-s / (n + 1))
    return tuple(B)


def bernoulli_number(n: int) -> Fraction:
    """Ordinary Bernoulli number with B_1 = -1/2."""
    _check_n(n)
    return _bernoulli_numbers(_size(n))[n]


# --- kernels ---------------------------------------------------------------

def one_minus_exp_neg(N: int) -> TruncatedSeries:
    """1 - e^{-t}."""
    return TruncatedSeries.one(N) - TruncatedSeries.exp(N, -1)


def _inv_power(m: int, k: int) -> Fraction:
    # 1/m^k for any integer k
    return Fraction(1, m ** k) if k >= 0 else Fraction(m ** (-k))


def polylog_series(k: int, N: int) -> TruncatedSeries:
    """Li_k(1 - e^{-t}) truncated at t^N."""
    u = one_minus_exp_neg(N)
    acc = TruncatedSeries([0], N)
    power = TruncatedSeries.one(N)
    for m in range(1, N + 1):
        power = power * u
        acc = acc + power * _inv_power(m, k)
    return acc


def poly_bernoulli_kernel(k: int, N: int) -> TruncatedSeries:
    """Li_k(1 - e^{-t}) / (1 - e^{-t}) = sum_{m>=0} (1 - e^{-t})^m / (m+1)^k."""
    u = one_minus_exp_neg(N)
    acc = TruncatedSeries.one(N)
    power = TruncatedSeries.one(N)
    for m in range(1, N + 1):
        power = power * u
        acc = acc + power * _inv_power(m + 1, k)
    return acc


def hermite_kernel(nu: Number, N: int) -> TruncatedSeries:
    """e^{-nu t^2 / 2}."""
    nu = Q(nu)
    out = [Fraction(0)] * (N + 1)
    c = Fraction(1)
    for m in range(N // 2 + 1):
        out[2 * m] = c
        c = c * (-nu / 2) / (m + 1)
    return TruncatedSeries(out, N)


def _exp_minus_one_over_t(N: int) -> TruncatedSeries:
    """(e^t - 1) / t."""
    return TruncatedSeries([Fraction(1, math.factorial(i + 1)) for i in range(N + 1)], N)


def bernoulli_kernel(r: int, N: int) -> TruncatedSeries:
    """(t / (e^t - 1))^r."""
    return _exp_minus_one_over_t(N).reciprocal() ** r


def frobenius_euler_kernel(r: int, lam: Number, N: int) -> TruncatedSeries:
    """((1 - lam) / (e^t - lam))^r."""
    lam = Q(lam)
    _check_lam(lam)
    base = (1 - lam) / (TruncatedSeries.exp(N) - lam)
    return base ** r


def hb_kernel(nu: Number, k: int, N: int) -> TruncatedSeries:
    return hermite_kernel(nu, N) * poly_bernoulli_kernel(k, N)


def appell_table(kernel: TruncatedSeries) -> tuple[Polynomial, ...]:
    """Members P_0..P_N of the Appell family generated by kernel(t) e^{xt}."""
    N = kernel.N
    alpha = [c * math.factorial(i) for i, c in enumerate(kernel.coeffs)]
    return tuple(
        Polynomial([binomial(n, j) * alpha[n - j] for j in range(n + 1)])
        for n in range(N + 1)
    )


# --- cached tables ---------------------------------------------------------

def table_size(n: int) -> int:
    """Truncation order used for degree n; blocks of 16 share one cache entry."""
    return 16 * (n // 16 + 1)


_size = table_size


@lru_cache(maxsize=None)
def _hermite_table(nu: Fraction, size: int) -> tuple[Polynomial, ...]:
    return appell_table(hermite_kernel(nu, size))


@lru_cache(maxsize=None)
def _poly_bernoulli_table(k: int, size: int) -> tuple[Polynomial, ...]:
    return appell_table(poly_bernoulli_kernel(k, size))


@lru_cache(maxsize=None)
def _bernoulli_table(r: int, size: int) -> tuple[Polynomial, ...]:
    return appell_table(bernoulli_kernel(r, size))


@lru_cache(maxsize=None)
def _frobenius_euler_table(r: int, lam: Fraction, size: int) -> tuple[Polynomial, ...]:
    return appell_table(frobenius_euler_kernel(r, lam, size))


@lru_cache(maxsize=None)
def _hb_table(nu: Fraction, k: int, size: int) -> tuple[Polynomial, ...]:
    return appell_table(hb_kernel(nu, k, size))


def hermite(n: int, nu: Number) -> Polynomial:
    """H_n^{(nu)}(x), generated by e^{-nu t^2/2} e^{xt}."""
    _check_n(n)
    nu = Q(nu)
    _check_nu(nu)
    return _hermite_table(nu, _size(n))[n]


def poly_bernoulli(n: int, k: int) -> Polynomial:
    """B_n^{(k)}(x), generated by Li_k(1 - e^{-t}) / (1 - e^{-t}) e^{xt}."""
    _check_n(n)
    return _poly_bernoulli_table(k, _size(n))[n]


def bernoulli_poly(n: int, r: int = 1) -> Polynomial:
    """Bernoulli polynomial of order r, generated by (t/(e^t - 1))^r e^{xt}."""
    _check_n(n)
    if r < 0:
        raise ValueError("r must be >= 0")
    return _bernoulli_table(r, _size(n))[n]


def frobenius_euler(n: int, r: int, lam: Number) -> Polynomial:
    """H_n^{(r)}(x | lam), generated by ((1 - lam)/(e^t - lam))^r e^{xt}."""
    _check_n(n)
    lam = Q(lam)
    _check_lam(lam)
    if r < 0:
        raise ValueError("r must be >= 0")
    return _frobenius_euler_table(r, lam, _size(n))[n]


def hb(n: int, nu: Number, k: int) -> Polynomial:
    """Hermite / poly-Bernoulli mixed-type polynomial HB_n^{(nu,k)}(x)."""
    _check_n(n)
    nu = Q(nu)
    _check_nu(nu)
    return _hb_table(nu, k, _size(n))[n]


def hermite_number(n: int, nu: Number) -> Fraction:
    return hermite(n, nu)[0]


def poly_bernoulli_number(n: int, k: int) -> Fraction:
    return poly_bernoulli(n, k)[0]


def hb_number(n: int, nu: Number, k: int) -> Fraction:
    return hb(n, nu, k)[0]


# --- Sheffer pairs ---------------------------------------------------------
# All pairs are Appell (f = t).  g is the reciprocal kernel, assembled from its
# own factors rather than by inverting the kernel series above.

def _li_over_u(k: int, N: int) -> TruncatedSeries:
    """(1 - e^{-t}) / Li_k(1 - e^{-t}), both factors divided by t first."""
    u = one_minus_exp_neg(N + 1).shift_down(1)
    li = polylog_series(k, N + 1).shift_down(1)
    return u / li


@lru_cache(maxsize=None)
def hermite_pair(nu: Number, N: int) -> ShefferPair:
    nu = Q(nu)
    _check_nu(nu)
    return ShefferPair(hermite_kernel(-nu, N), TruncatedSeries.t(N))


@lru_cache(maxsize=None)
def poly_bernoulli_pair(k: int, N: int) -> ShefferPair:
    return ShefferPair(_li_over_u(k, N), TruncatedSeries.t(N))


@lru_cache(maxsize=None)
def bernoulli_pair(r: int, N: int) -> ShefferPair:
    return ShefferPair(_exp_minus_one_over_t(N) ** r, TruncatedSeries.t(N))


@lru_cache(maxsize=None)
def frobenius_euler_pair(r: int, lam: Number, N: int) -> ShefferPair:
    lam = Q(lam)
    _check_lam(lam)
    return ShefferPair(((TruncatedSeries.exp(N) - lam) / (1 - lam)) ** r, TruncatedSeries.t(N))


def hb_log_derivative(nu: Number, k: int, N: int) -> TruncatedSeries:
    """g'/g for the mixed-type pair, via its logarithmic-derivative expansion

        nu t + e^{-t}/(1 - e^{-t}) (1 - Li_{k-1}/Li_k)
            = nu t + e^{-t} (Li_k - Li_{k-1}) / ((1 - e^{-t}) Li_k).

    Numerator and denominator both have valuation 2 and are divided by t^2.
    """
    nu = Q(nu)
    M = N + 2
    u = one_minus_exp_neg(M)
    li_k = polylog_series(k, M)
    li_km1 = polylog_series(k - 1, M)
    num = (TruncatedSeries.exp(M, -1) * (li_k - li_km1)).shift_down(2)
    den = (u * li_k).shift_down(2)
    return num / den + TruncatedSeries([0, nu], N)


@lru_cache(maxsize=None)
def hb_pair(nu: Number, k: int, N: int) -> ShefferPair:
    nu = Q(nu)
    _check_nu(nu)
    g = hermite_kernel(-nu, N) * _li_over_u(k, N)
    return ShefferPair(g, TruncatedSeries.t(N), log_derivative=hb_log_derivative(nu, k, N - 1))
