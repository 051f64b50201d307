"""Exact rational polynomials and truncated power series.

Scalars are :class:`fractions.Fraction`.  Polynomials are dense in ``x`` and
series are dense in ``t``, both stored as ascending coefficient tuples.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:/(\d+))?\s*$")


class AlgebraError(ValueError):
    pass


class DivisionByNonInvertible(AlgebraError, ZeroDivisionError):
    pass


class NonDeltaInner(AlgebraError):
    pass


class NotDeltaSeries(AlgebraError):
    pass


class NegativeArgument(AlgebraError):
    pass


def Q(value: Number | str) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer literal.  Decimals and floats are rejected."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not an exact rational literal: {text!r}")
    num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(q: Number) -> str:
    return str(Fraction(q))


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise NegativeArgument(f"binomial({n}, {k})")
    return math.comb(n, k)


def falling(n: int, k: int) -> int:
    """Falling factorial n(n-1)...(n-k+1); zero when k > n."""
    if n < 0 or k < 0:
        raise NegativeArgument(f"falling({n}, {k})")
    return math.perm(n, k)


def _trim(coeffs: Iterable[Number]) -> tuple[Fraction, ...]:
    out = [Q(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class Polynomial:
    """Dense univariate polynomial with Fraction coefficients, lowest degree first.

    Instances are immutable and always trimmed, so equality is structural.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, n: int, c: Number = 1) -> Polynomial:
        return cls([0] * n + [c])

    @classmethod
    def constant(cls, c: Number) -> Polynomial:
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial([{', '.join(map(str, self.coeffs))}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}" if mono else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __add__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial()
            return Polynomial([c * other for c in self.coeffs])
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> Polynomial:
        return self * (1 / Fraction(other))

    def __pow__(self, e: int) -> Polynomial:
        if e < 0:
            raise NegativeArgument("negative polynomial power")
        out = Polynomial([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, x0: Number) -> Fraction:
        return self.evaluate(x0)

    def evaluate(self, x0: Number) -> Fraction:
        acc = Fraction(0)
        x0 = Q(x0)
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def shift(self, c: Number) -> Polynomial:
        """Return p(x + c)."""
        c = Q(c)
        if c == 0 or len(self.coeffs) <= 1:
            return self
        # Taylor shift by repeated synthetic division.
        out = list(self.coeffs)
        n = len(out)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                out[j] += c * out[j + 1]
        return Polynomial(out)

    def derivative(self, k: int = 1) -> Polynomial:
        if k < 0:
            raise NegativeArgument("negative derivative order")
        if k == 0:
            return self
        return Polynomial(
            [falling(i, k) * c for i, c in enumerate(self.coeffs) if i >= k]
        )

    def mul_x(self) -> Polynomial:
        if not self.coeffs:
            return self
        return Polynomial((Fraction(0),) + self.coeffs)

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> Polynomial:
        return cls(parse_rational(s) for s in items)


X = Polynomial([0, 1])


class TruncatedSeries:
    """Formal power series in ``t`` known exactly up to ``t**N``.

    ``coeffs[i]`` is the ordinary coefficient of ``t**i`` and there are always
    ``N + 1`` of them.  Binary operations truncate to the smaller ``N``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number], N: int | None = None):
        cs = [Q(c) for c in coeffs]
        if N is None:
            if not cs:
                raise ValueError("empty series needs an explicit truncation order")
        else:
            if N < 0:
                raise NegativeArgument("truncation order must be >= 0")
            cs = cs[: N + 1] + [Fraction(0)] * (N + 1 - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def _raw(cls, coeffs: list[Fraction]) -> TruncatedSeries:
        obj = cls.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(coeffs))
        return obj

    @classmethod
    def one(cls, N: int) -> TruncatedSeries:
        return cls([1], N)

    @classmethod
    def t(cls, N: int) -> TruncatedSeries:
        return cls([0, 1], N)

    @classmethod
    def exp(cls, N: int, scale: Number = 1) -> TruncatedSeries:
        """e^{scale*t}."""
        scale = Q(scale)
        out, term = [], Fraction(1)
        for i in range(N + 1):
            out.append(term)
            term = term * scale / (i + 1)
        return cls._raw(out)

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        raise IndexError(f"coefficient t^{i} is beyond truncation order {self.N}")

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"TruncatedSeries([{', '.join(map(str, self.coeffs))}], N={self.N})"

    def truncate(self, N: int) -> TruncatedSeries:
        if N > self.N:
            raise ValueError(f"cannot extend a series known to t^{self.N} up to t^{N}")
        return TruncatedSeries._raw(list(self.coeffs[: N + 1]))

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if all vanish."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def _coerce(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([other], self.N)
        return NotImplemented

    def __add__(self, other) -> TruncatedSeries:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.N, other.N) + 1
        return TruncatedSeries._raw([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])])

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries._raw([-c for c in self.coeffs])

    def __sub__(self, other) -> TruncatedSeries:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> TruncatedSeries:
        return (-self) + other

    def __mul__(self, other) -> TruncatedSeries:
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries._raw([c * other for c in self.coeffs])
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        N = min(self.N, other.N)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (N + 1)
        for i in range(N + 1):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(N + 1 - i):
                out[i + j] += ai * b[j]
        return TruncatedSeries._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> TruncatedSeries:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByNonInvertible("division by zero scalar")
            return self * (1 / Fraction(other))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        b = other.coeffs
        if b[0] == 0:
            raise DivisionByNonInvertible("divisor has zero constant term")
        N = min(self.N, other.N)
        a = self.coeffs
        inv_b0 = 1 / b[0]
        q: list[Fraction] = []
        for i in range(N + 1):
            acc = a[i]
            for j in range(1, i + 1):
                if b[j]:
                    acc -= b[j] * q[i - j]
            q.append(acc * inv_b0)
        return TruncatedSeries._raw(q)

    def __rtruediv__(self, other) -> TruncatedSeries:
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([other], self.N) / self
        return NotImplemented

    def reciprocal(self) -> TruncatedSeries:
        return TruncatedSeries.one(self.N) / self

    def __pow__(self, e: int) -> TruncatedSeries:
        if e < 0:
            return self.reciprocal() ** (-e)
        out = TruncatedSeries.one(self.N)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def derivative(self) -> TruncatedSeries:
        """d/dt; the result is known one order less far."""
        if self.N == 0:
            raise ValueError("derivative of an order-0 truncation carries no information")
        return TruncatedSeries._raw([i * c for i, c in enumerate(self.coeffs) if i > 0])

    def shift_down(self, j: int) -> TruncatedSeries:
        """Exact division by t**j; the first j coefficients must vanish."""
        if j > self.N:
            raise ValueError(f"cannot divide a series known to t^{self.N} by t^{j}")
        if any(self.coeffs[:j]):
            raise DivisionByNonInvertible(f"series is not divisible by t^{j}")
        return TruncatedSeries._raw(list(self.coeffs[j:]))

    def __call__(self, inner: TruncatedSeries) -> TruncatedSeries:
        return compose(self, inner)


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """outer(inner(t)); ``inner`` must have zero constant term."""
    if inner.coeffs[0] != 0:
        raise NonDeltaInner("inner series has a nonzero constant term")
    N = min(outer.N, inner.N)
    acc = TruncatedSeries([outer.coeffs[N]], N)
    for i in range(N - 1, -1, -1):
        acc = acc * inner + outer.coeffs[i]
    return acc


def reversion(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of a delta series by Lagrange inversion.

    ``[t^n] fbar = (1/n) [t^(n-1)] (t / f(t))^n``.
    """
    if f.coeffs[0] != 0 or f.N < 1 or f.coeffs[1] == 0:
        raise NotDeltaSeries("reversion needs zero constant term and nonzero t coefficient")
    N = f.N
    if f.coeffs[2:] == (Fraction(0),) * (N - 1) and f.coeffs[1] == 1:
        return f
    h = f.shift_down(1).reciprocal()  # t/f, known to t^(N-1)
    out = [Fraction(0)] * (N + 1)
    hp = TruncatedSeries.one(N - 1)
    for n in range(1, N + 1):
        hp = hp * h
        out[n] = hp.coeffs[n - 1] / n
    return TruncatedSeries._raw(out)
