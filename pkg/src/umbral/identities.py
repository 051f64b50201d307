"""Executable exact-equality checks for the mixed-type polynomial identities.

Each identity builds a left and a right side as polynomials in ``x``; scalar
identities use constant polynomials.  A few checks bundle several polynomial
equalities into one report by stacking them: component ``i`` is placed at
``x**(i * stride)``, which is injective as long as every component has degree
below ``stride``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import families as fam
from .algebra import Polynomial, Q, TruncatedSeries, binomial
from .engine import apply, pair
from .families import FamilyParams, hb, hermite, poly_bernoulli, stirling2

IDENTITY_TAGS = (
    "prop26",
    "thm27",
    "thm28",
    "thm29",
    "thm30",
    "addition31",
    "recurrence39",
    "rearranged40",
    "recurrence43",
    "evaluation46",
    "bernoulli_connection50",
    "frobenius_connection54",
    "lowering25",
    "biorthogonality",
    "eq14_duality",
)


class OutOfStatedRange(ValueError):
    pass


def _B(n: int) -> Fraction:
    return fam.bernoulli_number(n)


def _inv_pow(m: int, k: int) -> Fraction:
    return Fraction(1, m ** k) if k >= 0 else Fraction(m ** (-k))


def _stack(parts: Sequence[Polynomial], stride: int) -> Polynomial:
    coeffs: list[Fraction] = []
    for i, p in enumerate(parts):
        if p.degree >= stride:
            raise ValueError("stacked component does not fit its stride")
        coeffs.extend(p.coeffs)
        coeffs.extend([Fraction(0)] * (stride - len(p.coeffs)))
    return Polynomial(coeffs)


def _lincomb(terms: Iterable[tuple[Fraction | int, Polynomial]]) -> Polynomial:
    acc = Polynomial()
    for c, p in terms:
        if c:
            acc = acc + p * c
    return acc


# --- recipes ---------------------------------------------------------------
# Each recipe maps (n, params) to (lhs, rhs).

def _prop26(n, p):
    rhs = _lincomb(
        (binomial(n, 2 * m) * Fraction(math.factorial(2 * m), math.factorial(m)) * (-p.nu / 2) ** m,
         poly_bernoulli(n - 2 * m, p.k))
        for m in range(n // 2 + 1)
    )
    return hb(n, p.nu, p.k), rhs


@lru_cache(maxsize=None)
def _hermite_shifted(n: int, nu: Fraction, j: int) -> Polynomial:
    """H_n^{(nu)}(x - j)."""
    return hermite(n, nu).shift(-j)


@lru_cache(maxsize=None)
def _monomial_shifted(d: int, j: int) -> Polynomial:
    """(x - j)^d."""
    return Polynomial([binomial(d, i) * (-j) ** (d - i) for i in range(d + 1)])


def _thm27_rhs(n, nu, k, m_max):
    # sum_m (m+1)^-k sum_{j<=m} C(m,j) (-1)^j H_n(x-j), collected per j
    return _lincomb(
        ((-1) ** j * sum((binomial(m, j) * _inv_pow(m + 1, k) for m in range(j, m_max + 1)), Fraction(0)),
         _hermite_shifted(n, nu, j))
        for j in range(m_max + 1)
    )


def _thm27(n, p):
    return hb(n, p.nu, p.k), _thm27_rhs(n, p.nu, p.k, n)


def _thm28(n, p):
    inner = [sum((binomial(m, j) * _inv_pow(m + 1, p.k) for m in range(j, n + 1)), Fraction(0))
             for j in range(n + 1)]
    rhs = Polynomial()
    for l in range(n // 2 + 1):
        lead = binomial(n, 2 * l) * Fraction(math.factorial(2 * l), math.factorial(l)) * (-p.nu / 2) ** l
        for j in range(n + 1):
            c = inner[j] * lead * (-1) ** j
            if c:
                rhs = rhs + _monomial_shifted(n - 2 * l, j) * c
    return hb(n, p.nu, p.k), rhs


def _thm29(n, p):
    rhs = Polynomial()
    for a in range(n + 1):
        c = sum(
            ((-1) ** (a + m) * math.factorial(m) * _inv_pow(m + 1, p.k) * stirling2(n - a, m)
             for m in range(n - a + 1)),
            Fraction(0),
        )
        rhs = rhs + hermite(a, p.nu) * (c * binomial(n, a))
    return hb(n, p.nu, p.k), rhs * (-1) ** n


def _thm30_coeffs(n, nu, k):
    out = []
    for j in range(n + 1):
        c = Fraction(0)
        for l in range((n - j) // 2 + 1):
            c += (binomial(n, j) * binomial(n - j, 2 * l)
                  * Fraction(math.factorial(2 * l), math.factorial(l)) * (-nu / 2) ** l
                  * fam.poly_bernoulli_number(n - j - 2 * l, k))
        out.append(c)
    return Polynomial(out)


def _thm30(n, p):
    return hb(n, p.nu, p.k), _thm30_coeffs(n, p.nu, p.k)


ADDITION_SAMPLES = (Fraction(-1), Fraction(1, 2), Fraction(3), Fraction(-7, 5))


def _addition31(n, p):
    """Stacks the sampled-y checks followed by the flattened bivariate table."""
    H = [hb(j, p.nu, p.k) for j in range(n + 1)]
    stride = n + 1
    lhs_parts, rhs_parts = [], []
    for y in ADDITION_SAMPLES:
        lhs_parts.append(H[n].shift(y))
        rhs_parts.append(_lincomb((binomial(n, j) * y ** (n - j), H[j]) for j in range(n + 1)))
    # Bivariate: [x^i y^s] of HB_n(x + y) against C(n, n-s) [x^i] HB_{n-s}(x).
    for s in range(n + 1):
        lhs_parts.append(H[n].derivative(s) / math.factorial(s))
        rhs_parts.append(H[n - s] * binomial(n, s))
    return _stack(lhs_parts, stride), _stack(rhs_parts, stride)


def _recurrence39(n, p):
    nu, k = p.nu, p.k
    rhs = hb(n, nu, k).mul_x()
    if n >= 1:
        rhs = rhs - hb(n - 1, nu, k) * (nu * n)
    tail = _lincomb(
        (binomial(n + 1, l) * _B(l), hb(n + 1 - l, nu, k) - hb(n + 1 - l, nu, k - 1))
        for l in range(n + 2)
    )
    return hb(n + 1, nu, k), rhs - tail / (n + 1)


def _rearranged40(n, p):
    nu, k = p.nu, p.k
    lhs = _lincomb((binomial(n, l) * _B(l), hb(n - l, nu, k - 1)) for l in range(n + 1))
    rhs = hb(n, nu, k) * (n + 1)
    if n >= 1:
        rhs = rhs - (hb(n - 1, nu, k).mul_x() + hb(n - 1, nu, k) / 2) * n
    if n >= 2:
        rhs = rhs + hb(n - 2, nu, k) * (n * (n - 1) * (nu + Fraction(1, 12)))
    rhs = rhs + _lincomb((binomial(n, l) * _B(n - l), hb(l, nu, k)) for l in range(n - 2))
    return lhs, rhs


def _recurrence43(n, p):
    nu, k = p.nu, p.k
    rhs = hb(n - 1, nu, k).mul_x() - hb(n - 2, nu, k) * (nu * (n - 1))
    tail = _lincomb(
        (binomial(n, l) * _B(l), hb(n - l, nu, k - 1) - hb(n - l, nu, k))
        for l in range(n + 1)
    )
    return hb(n, nu, k), rhs + tail / n


def _evaluation46(n, p):
    nu, k = p.nu, p.k
    lhs = sum(
        ((-1) ** (n - m) * binomial(n + 1, m) * fam.hb_number(m, nu, k) for m in range(n + 1)),
        Fraction(0),
    )
    rhs = Fraction(0)
    for m in range(n + 1):
        bm = fam.poly_bernoulli_number(m, k - 1)
        for l in range(m, n + 1):
            rhs += (-1) ** (l - m) * binomial(l, m) * binomial(n + 1, l + 1) * bm * fam.hermite_number(n - l, nu)
    return Polynomial([lhs]), Polynomial([rhs])


def _bernoulli_connection50(n, p):
    nu, k, r = p.nu, p.k, p.r
    rhs = Polynomial()
    for m in range(n + 1):
        c = sum(
            (Fraction(binomial(n - m, l), binomial(l + r, r)) * stirling2(l + r, r)
             * fam.hb_number(n - m - l, nu, k) for l in range(n - m + 1)),
            Fraction(0),
        )
        rhs = rhs + fam.bernoulli_poly(m, r) * (c * binomial(n, m))
    return hb(n, nu, k), rhs


@lru_cache(maxsize=None)
def _hb_at(n: int, nu: Fraction, k: int, y: int) -> Fraction:
    return hb(n, nu, k)(y)


def _frobenius_connection54(n, p):
    nu, k, r, lam = p.nu, p.k, p.r, p.lam
    rhs = Polynomial()
    for m in range(n + 1):
        c = sum((binomial(r, l) * (-lam) ** (r - l) * _hb_at(n - m, nu, k, l) for l in range(r + 1)),
                Fraction(0))
        rhs = rhs + fam.frobenius_euler(m, r, lam) * (c * binomial(n, m))
    return hb(n, nu, k), rhs / (1 - lam) ** r


def _lowering25(n, p):
    """Stacked: poly-Bernoulli, Hermite, mixed-type."""
    nu, k = p.nu, p.k
    t = TruncatedSeries.t(max(n, 1))
    fams = [
        lambda m: poly_bernoulli(m, k),
        lambda m: hermite(m, nu),
        lambda m: hb(m, nu, k),
    ]
    lhs = [apply(t, f(n)) for f in fams]
    rhs = [f(n - 1) * n if n else Polynomial() for f in fams]
    return _stack(lhs, n + 1), _stack(rhs, n + 1)


_PAIR_SOURCES = {
    "hb": (fam.hb_pair, hb),
    "poly_bernoulli": (fam.poly_bernoulli_pair, poly_bernoulli),
    "hermite": (fam.hermite_pair, hermite),
    "bernoulli_order_r": (fam.bernoulli_pair, fam.bernoulli_poly),
    "frobenius_euler": (fam.frobenius_euler_pair, fam.frobenius_euler),
}


def concrete_pairs(p: FamilyParams) -> list[tuple[str, tuple]]:
    """The five concrete Appell pairs at one parameter point, as (family, args)."""
    return [
        ("hb", (p.nu, p.k)),
        ("poly_bernoulli", (p.k,)),
        ("hermite", (p.nu,)),
        ("bernoulli_order_r", (p.r,)),
        ("frobenius_euler", (p.r, p.lam)),
    ]


def sheffer_pair_for(family: str, args: tuple, N: int):
    return _PAIR_SOURCES[family][0](*args, N)


def family_member(family: str, args: tuple, n: int) -> Polynomial:
    return _PAIR_SOURCES[family][1](n, *args)


@lru_cache(maxsize=None)
def _pairing_row(family: str, args: tuple, n: int) -> Polynomial:
    # sum_j <g t^j | s_n> x^j
    sp = sheffer_pair_for(family, args, fam.table_size(n))
    s_n = family_member(family, args, n)
    g = list(sp.g.coeffs[: n + 1])
    return Polynomial([pair(TruncatedSeries([0] * j + g[: n + 1 - j], n), s_n) for j in range(n + 1)])


def _biorthogonality(n, p):
    """sum_j <g t^j | s_n> x^j == n! x^n, stacked over the concrete pairs."""
    pairs = concrete_pairs(p)
    lhs = [_pairing_row(family, args, n) for family, args in pairs]
    rhs = [Polynomial.monomial(n, math.factorial(n))] * len(pairs)
    return _stack(lhs, n + 1), _stack(rhs, n + 1)


def _eq14_duality(n, p):
    """<F | x p> == <F' | p> with F the mixed-type kernel times e^{t}, p = H_n."""
    F = fam.hb_kernel(p.nu, p.k, n + 1) * TruncatedSeries.exp(n + 1)
    q = hermite(n, p.nu)
    return Polynomial([pair(F, q.mul_x())]), Polynomial([pair(F.derivative(), q)])


@dataclass(frozen=True)
class Identity:
    tag: str
    recipe: Callable[[int, FamilyParams], tuple[Polynomial, Polynomial]]
    axes: tuple[str, ...] = ("nu", "k")
    floor: int = 0


IDENTITIES: dict[str, Identity] = {
    i.tag: i
    for i in (
        Identity("prop26", _prop26),
        Identity("thm27", _thm27),
        Identity("thm28", _thm28),
        Identity("thm29", _thm29),
        Identity("thm30", _thm30),
        Identity("addition31", _addition31),
        Identity("recurrence39", _recurrence39),
        Identity("rearranged40", _rearranged40, floor=3),
        Identity("recurrence43", _recurrence43, floor=2),
        Identity("evaluation46", _evaluation46),
        Identity("bernoulli_connection50", _bernoulli_connection50, axes=("nu", "k", "r")),
        Identity("frobenius_connection54", _frobenius_connection54, axes=("nu", "k", "r", "lam")),
        Identity("lowering25", _lowering25),
        Identity("biorthogonality", _biorthogonality, axes=("nu", "k", "r", "lam")),
        Identity("eq14_duality", _eq14_duality),
    )
}
assert tuple(IDENTITIES) == IDENTITY_TAGS


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    n: int
    params: FamilyParams
    lhs: Polynomial
    rhs: Polynomial
    informational: bool = False
    diff: Polynomial = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "diff", self.lhs - self.rhs)

    @property
    def equal(self) -> bool:
        return not self.diff

    def param_dict(self) -> dict[str, int | str]:
        out: dict[str, int | str] = {"n": self.n}
        for axis in IDENTITIES[self.identity].axes:
            v = getattr(self.params, axis)
            out["lambda" if axis == "lam" else axis] = v if isinstance(v, int) else str(v)
        return out

    def to_json(self) -> dict:
        rec = {
            "identity": self.identity,
            "params": self.param_dict(),
            "equal": self.equal,
            "diff_coefficients": self.diff.to_strings(),
        }
        if self.informational:
            rec["informational"] = True
        return rec

    def describe(self) -> str:
        ps = " ".join(f"{k}={v}" for k, v in self.param_dict().items())
        return f"{self.identity} {ps}"


def check_identity(tag: str, n: int, params: FamilyParams, *, enforce_range: bool = True) -> IdentityReport:
    try:
        ident = IDENTITIES[tag]
    except KeyError:
        raise KeyError(f"unknown identity {tag!r}") from None
    if n < 0:
        raise OutOfStatedRange(f"{tag}: n must be >= 0")
    below = n < ident.floor
    if below and enforce_range:
        raise OutOfStatedRange(f"{tag} is stated for n >= {ident.floor}, got n = {n}")
    lhs, rhs = ident.recipe(n, params)
    return IdentityReport(tag, n, params, lhs, rhs, informational=below)


@dataclass(frozen=True)
class Grid:
    n_values: tuple[int, ...]
    nus: tuple[Fraction, ...]
    ks: tuple[int, ...]
    rs: tuple[int, ...]
    lams: tuple[Fraction, ...]

    def points(self, tag: str) -> list[tuple[int, FamilyParams]]:
        axes = IDENTITIES[tag].axes
        nus = self.nus
        ks = self.ks
        rs = self.rs if "r" in axes else self.rs[:1]
        lams = self.lams if "lam" in axes else self.lams[:1]
        out = []
        for nu, k, r, lam in itertools.product(nus, ks, rs, lams):
            params = FamilyParams(nu=nu, k=k, r=r, lam=lam)
            out.extend((n, params) for n in self.n_values)
        return out


PROFILES = {
    "quick": Grid(
        n_values=tuple(range(13)),
        nus=(Fraction(1), Fraction(1, 2)),
        ks=tuple(range(-2, 3)),
        rs=(0, 1, 2),
        lams=(Fraction(2), Fraction(-1)),
    ),
    "full": Grid(
        n_values=tuple(range(25)),
        nus=(Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(3)),
        ks=tuple(range(-3, 4)),
        rs=tuple(range(5)),
        lams=(Fraction(2), Fraction(-1), Fraction(1, 3), Fraction(5, 7)),
    ),
}


def verify_grid(ids: Iterable[str], grid: Grid | str = "quick", *, informational: bool = False) -> list[IdentityReport]:
    """Run every identity over its grid points, in a fixed order.

    Points below an identity's stated floor are skipped, or reported with
    ``informational=True`` when requested.  Below-floor points whose terms
    would need a negative index are always skipped.
    """
    if isinstance(grid, str):
        grid = PROFILES[grid]
    wanted = set(ids)
    unknown = wanted - set(IDENTITY_TAGS)
    if unknown:
        raise KeyError(f"unknown identities: {sorted(unknown)}")
    reports = []
    for tag in IDENTITY_TAGS:
        if tag not in wanted:
            continue
        floor = IDENTITIES[tag].floor
        for n, params in grid.points(tag):
            if n < floor:
                if not informational:
                    continue
                try:
                    reports.append(check_identity(tag, n, params, enforce_range=False))
                except ValueError:
                    pass
                continue
            reports.append(check_identity(tag, n, params))
    return reports


def hb_four_ways(n: int, nu, k: int) -> tuple[Polynomial, Polynomial, Polynomial, Polynomial]:
    """The mixed-type polynomial from its series, and the prop26, thm27, thm30 sums."""
    p = FamilyParams(nu=Q(nu), k=k)
    return (
        hb(n, p.nu, k),
        _prop26(n, p)[1],
        _thm27(n, p)[1],
        _thm30(n, p)[1],
    )


def thm27_extended(n: int, nu, k: int, extra: int) -> Polynomial:
    """thm27's right side with the outer sum run to n + extra."""
    return _thm27_rhs(n, Q(nu), k, n + extra)
