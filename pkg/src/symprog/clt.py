"""Local limit theorem for sums of steps uniform on {0, e_1, ..., e_ell}.

The exact point probability is a multinomial over (ell+1)^n, so the Gaussian
main term can be compared against it at any n.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import InputError, multinomial


@dataclass(frozen=True)
class CltQuery:
    ell: int
    n: int
    w: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        if self.ell < 1 or self.n < 1:
            raise InputError("need ell >= 1 and n >= 1")
        if len(self.w) != self.ell:
            raise InputError(f"w must have {self.ell} entries")

    @property
    def d(self) -> tuple[Fraction, ...]:
        c = Fraction(self.n, self.ell + 1)
        return tuple(x - c for x in self.w)


def exact_prob(qr: CltQuery) -> Fraction:
    rest = qr.n - sum(qr.w)
    if rest < 0 or min(qr.w) < 0:
        return Fraction(0)
    return Fraction(multinomial((rest, *qr.w)), (qr.ell + 1) ** qr.n)


def _quadratic(qr: CltQuery) -> Fraction:
    d = qr.d
    return sum(x * x for x in d) + sum(d) ** 2


def log_leading_term(qr: CltQuery) -> float:
    ell, n = qr.ell, qr.n
    return (
        (ell + 1) / 2 * math.log(ell + 1)
        - ell / 2 * math.log(2 * math.pi)
        - ell / 2 * math.log(n)
        - float(Fraction(ell + 1, 2 * n) * _quadratic(qr))
    )


def leading_term(qr: CltQuery) -> float:
    """Gaussian main term
    (ell+1)^((ell+1)/2) / (2 pi)^(ell/2) / n^(ell/2)
    * exp(-(ell+1)/(2n) * (|d|^2 + (sum d)^2))."""
    return math.exp(log_leading_term(qr))


def limit_constant(ell: int) -> float:
    """Value of n^(ell/2) * leading term at d = 0."""
    return (ell + 1) ** ((ell + 1) / 2) / (2 * math.pi) ** (ell / 2)


def center(ell: int, n: int) -> tuple[int, ...]:
    c = round(n / (ell + 1))
    return (c,) * ell


def scaled_prob(qr: CltQuery) -> float:
    """n^(ell/2) * Pr[sum = w], rounded once at the end."""
    p = exact_prob(qr) * qr.n ** (qr.ell // 2)
    return float(p) * (math.sqrt(qr.n) if qr.ell % 2 else 1.0)


def scaled_center(ell: int, n: int) -> float:
    return scaled_prob(CltQuery(ell, n, center(ell, n)))


def relative_error(qr: CltQuery) -> float:
    exact = exact_prob(qr)
    if exact == 0:
        return math.inf
    # both sides in log space; exact may underflow a float
    log_exact = math.log(exact.numerator) - math.log(exact.denominator)
    return abs(math.expm1(log_leading_term(qr) - log_exact))


@dataclass(frozen=True)
class ScanRow:
    n: int
    w: tuple[int, ...]
    exact: Fraction = field(repr=False)
    leading: float
    rel_err: float


def window(ell: int, n: int, radius: float, points: int = 7) -> list[tuple[int, ...]]:
    """Grid of lattice points with |d|_inf <= radius * sqrt(n), ``points``
    offsets per axis (all of them if the window is narrower)."""
    c = center(ell, n)[0]
    half = int(math.floor(radius * math.sqrt(n)))
    if half == 0:
        offsets = [0]
    elif 2 * half + 1 <= points:
        offsets = list(range(-half, half + 1))
    else:
        offsets = sorted({round(-half + 2 * half * i / (points - 1)) for i in range(points)})
    out = []
    for off in itertools.product(offsets, repeat=ell):
        w = tuple(c + o for o in off)
        if min(w) >= 0 and sum(w) <= n:
            out.append(w)
    return out


def compare(ell: int, n: int, w: Sequence[int]) -> ScanRow:
    qr = CltQuery(ell, n, tuple(w))
    return ScanRow(n, qr.w, exact_prob(qr), leading_term(qr), relative_error(qr))


def error_scan(ell: int, n_list: Sequence[int], radius: float, points: int = 7) -> list[ScanRow]:
    """Per n, the window point with the largest relative error."""
    rows = []
    for n in n_list:
        worst = max((compare(ell, n, w) for w in window(ell, n, radius, points)), key=lambda r: r.rel_err)
        rows.append(worst)
    return rows


def sandwich_constant(ell: int, n_list: Sequence[int], radius: float, points: int = 7) -> float:
    """Smallest C with C^-1 n^(-ell/2) exp(-C |d|^2 / n) <= Pr <= C n^(-ell/2)
    over the scanned window points."""
    best = 1.0
    for n in n_list:
        for w in window(ell, n, radius, points):
            qr = CltQuery(ell, n, w)
            r = scaled_prob(qr)
            t = float(sum(x * x for x in qr.d)) / n
            best = max(best, r)
            lo, hi = 1e-12, 1.0
            while math.exp(-hi * t) / hi > r:
                hi *= 2
            if math.exp(-lo * t) / lo > r:
                for _ in range(200):
                    mid = (lo + hi) / 2
                    if math.exp(-mid * t) / mid > r:
                        lo = mid
                    else:
                        hi = mid
                best = max(best, hi)
    return best
