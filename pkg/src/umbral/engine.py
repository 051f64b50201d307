"""Umbral pairing, operator action, and Sheffer sequences.

A series ``f(t) = sum c_i t^i`` acts on polynomials in two ways:

* as a linear functional, ``<t^k | x^n> = n! [k == n]``;
* as an operator, ``t^k p(x) = p^{(k)}(x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import (
    AlgebraError,
    NotDeltaSeries,
    Polynomial,
    TruncatedSeries,
    compose,
    reversion,
)

LinearFunctional = TruncatedSeries


class InsufficientTruncation(AlgebraError):
    pass


def _need(series: TruncatedSeries, degree: int, what: str) -> None:
    if series.N < degree:
        raise InsufficientTruncation(
            f"{what}: series known to t^{series.N} cannot act on degree {degree}"
        )


def pair(f: LinearFunctional, p: Polynomial) -> Fraction:
    """<f(t) | p(x)>."""
    _need(f, p.degree, "pair")
    acc = Fraction(0)
    fact = 1
    for i, pc in enumerate(p.coeffs):
        if i:
            fact *= i
        if pc and f.coeffs[i]:
            acc += f.coeffs[i] * fact * pc
    return acc


def apply(f: TruncatedSeries, p: Polynomial) -> Polynomial:
    """f(t) p(x) with t acting as d/dx."""
    _need(f, p.degree, "apply")
    pc, fc = p.coeffs, f.coeffs
    n = len(pc)
    out = []
    for j in range(n):
        acc = Fraction(0)
        # (j+k)!/j! accumulated as k grows
        w = 1
        for k in range(n - j):
            if k:
                w *= j + k
            if fc[k] and pc[j + k]:
                acc += fc[k] * w * pc[j + k]
        out.append(acc)
    return Polynomial(out)


@dataclass(frozen=True)
class ShefferPair:
    """(g, f) with g invertible and f a delta series.

    ``log_derivative`` optionally supplies g'/g computed by some other route;
    when absent it is obtained as g'(t)/g(t).
    """

    g: TruncatedSeries
    f: TruncatedSeries
    log_derivative: TruncatedSeries | None = None

    def __post_init__(self):
        if self.g.coeffs[0] == 0:
            raise AlgebraError("g must be invertible (nonzero constant term)")
        if self.f.N < 1 or self.f.coeffs[0] != 0 or self.f.coeffs[1] == 0:
            raise NotDeltaSeries("f must be a delta series")

    @property
    def N(self) -> int:
        return min(self.g.N, self.f.N)

    @property
    def is_appell(self) -> bool:
        return all(c == (1 if i == 1 else 0) for i, c in enumerate(self.f.coeffs))

    def inverse_f(self) -> TruncatedSeries:
        return reversion(self.f.truncate(self.N))

    def g_log_derivative(self) -> TruncatedSeries:
        if self.log_derivative is not None:
            return self.log_derivative
        return self.g.derivative() / self.g.truncate(self.N - 1)


def _check_degree(sp: ShefferPair, n: int) -> None:
    if n < 0:
        raise ValueError("n must be >= 0")
    if sp.N < n + 1:
        raise InsufficientTruncation(
            f"Sheffer pair known to t^{sp.N} is too short for degree {n} (need {n + 1})"
        )


def _exp_bivariate(fbar: TruncatedSeries, n: int) -> list[Polynomial]:
    """Coefficients (polynomials in y) of exp(y fbar(t)) up to t^n.

    Uses E' = y fbar' E, i.e. m E_m = y sum_k k fbar_k E_{m-k}.
    """
    E = [Polynomial([1])]
    for m in range(1, n + 1):
        acc = Polynomial()
        for k in range(1, m + 1):
            c = fbar.coeffs[k]
            if c:
                acc = acc + E[m - k] * (k * c)
        E.append(acc.mul_x() / m)
    return E


def sheffer_poly(sp: ShefferPair, n: int, method: str = "generating") -> Polynomial:
    """The degree-n member of the Sheffer sequence for ``sp``.

    ``generating`` reads it off ``exp(y fbar(t)) / g(fbar(t))``; ``conjugate``
    evaluates each monomial coefficient as ``<g(fbar)^-1 fbar^j | x^n> / j!``.
    """
    _check_degree(sp, n)
    fbar = sp.inverse_f().truncate(n)
    ginv = compose(sp.g.truncate(n), fbar).reciprocal()
    if method == "generating":
        E = _exp_bivariate(fbar, n)
        acc = Polynomial()
        for i in range(n + 1):
            if ginv.coeffs[i]:
                acc = acc + E[n - i] * ginv.coeffs[i]
        return acc * math.factorial(n)
    if method == "conjugate":
        xn = Polynomial.monomial(n)
        coeffs = []
        power = TruncatedSeries.one(n)
        for j in range(n + 1):
            coeffs.append(pair(ginv * power, xn) / math.factorial(j))
            power = power * fbar
        return Polynomial(coeffs)
    raise ValueError(f"unknown method {method!r}")


def sheffer_table(sp: ShefferPair, n_max: int, method: str = "generating") -> list[Polynomial]:
    return [sheffer_poly(sp, n, method) for n in range(n_max + 1)]


def sheffer_recurrence_step(sp: ShefferPair, s_n: Polynomial, n: int) -> Polynomial:
    """s_{n+1} = (x - g'(t)/g(t)) (1/f'(t)) s_n."""
    _check_degree(sp, n)
    if s_n.degree != n:
        raise ValueError(f"expected a degree-{n} polynomial, got degree {s_n.degree}")
    q = s_n
    if not sp.is_appell:
        q = apply(sp.f.derivative().reciprocal(), q)
    return q.mul_x() - apply(sp.g_log_derivative(), q)


def expand_in_sheffer_basis(p: Polynomial, sp: ShefferPair) -> list[Fraction]:
    """Coefficients c_k with p = sum c_k s_k, from c_k = <g f^k | p> / k!."""
    d = p.degree
    if d < 0:
        return []
    _check_degree(sp, d)
    g = sp.g.truncate(d)
    f = sp.f.truncate(d)
    out = []
    power = g
    for k in range(d + 1):
        out.append(pair(power, p) / math.factorial(k))
        power = power * f
    return out


@dataclass(frozen=True)
class ConnectionMatrix:
    """Lower-triangular C with s_n = sum_m C[n][m] r_m."""

    rows: tuple[tuple[Fraction, ...], ...]
    source: ShefferPair | None = None
    target: ShefferPair | None = None

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def __getitem__(self, nm: tuple[int, int]) -> Fraction:
        n, m = nm
        if m > n:
            return Fraction(0)
        return self.rows[n][m]

    def __matmul__(self, other: ConnectionMatrix) -> ConnectionMatrix:
        size = min(len(self.rows), len(other.rows))
        rows = []
        for n in range(size):
            rows.append(tuple(
                sum((self.rows[n][j] * other.rows[j][m] for j in range(m, n + 1)), Fraction(0))
                for m in range(n + 1)
            ))
        return ConnectionMatrix(tuple(rows), self.source, other.target)

    def is_identity(self) -> bool:
        return all(c == (1 if m == n else 0) for n, row in enumerate(self.rows) for m, c in enumerate(row))

    def resum(self, n: int, basis: Sequence[Polynomial]) -> Polynomial:
        acc = Polynomial()
        for m, c in enumerate(self.rows[n]):
            if c:
                acc = acc + basis[m] * c
        return acc


def connection_matrix(source: ShefferPair, target: ShefferPair, n_max: int) -> ConnectionMatrix:
    """C[n][m] = (1/m!) <h(fbar)/g(fbar) l(fbar)^m | x^n> for source (g, f), target (h, l)."""
    _check_degree(source, n_max)
    _check_degree(target, n_max)
    N = n_max
    fbar = source.inverse_f().truncate(N)
    g_f = compose(source.g.truncate(N), fbar)
    h_f = compose(target.g.truncate(N), fbar)
    l_f = compose(target.f.truncate(N), fbar)
    base = h_f / g_f
    cols = []
    power = base
    for m in range(N + 1):
        cols.append(power)
        power = power * l_f
    rows = []
    for n in range(N + 1):
        nf = math.factorial(n)
        rows.append(tuple(cols[m].coeffs[n] * nf / math.factorial(m) for m in range(n + 1)))
    return ConnectionMatrix(tuple(rows), source, target)
