"""Full F_p progressions: the linear system W = A M and its integer solutions.

Index conventions (fixed here, used by every matrix in this module):

* pattern columns ``(a, d)`` for a, d in F_p, lexicographic, with ``(p-1, 0)``
  omitted: p^2 - 1 columns;
* weight rows ``(j, b)`` for j = 1..p and b = 0..p-2, lexicographic:
  p(p-1) rows.

Row ``(j, b)`` of ``A`` has a one in column ``(a, d)`` iff ``a + (j-1)d = b``.
The omitted pattern ``(p-1, 0)`` never contributes to a kept weight, which is
why the shifted system holds for every n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .core import (
    ContractError,
    InputError,
    SymmetricSet,
    full_convention,
    is_prime,
    multinomial,
)


class ExactMatrix:
    """Dense matrix of Fractions; arithmetic never rounds."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if len({len(r) for r in rows}) > 1:
            raise InputError("ragged matrix")
        self.rows = rows

    @classmethod
    def identity(cls, k: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(k)] for i in range(k)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"ExactMatrix({self.shape[0]}x{self.shape[1]})"

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.shape[1] != other.shape[0]:
                raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.transpose().rows
            return ExactMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])
        vec = [Fraction(x) for x in other]
        if len(vec) != self.shape[1]:
            raise InputError("vector length mismatch")
        return [sum(a * b for a, b in zip(r, vec)) for r in self.rows]

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "ExactMatrix":
        c = Fraction(c)
        return ExactMatrix([[c * a for a in r] for r in self.rows])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.rows)))

    def column(self, j: int) -> list[Fraction]:
        return [r[j] for r in self.rows]

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def is_integer(self) -> bool:
        return all(a.denominator == 1 for r in self.rows for a in r)

    def to_ints(self) -> list[list[int]]:
        if not self.is_integer():
            raise ContractError("matrix has non-integer entries")
        return [[int(a) for a in r] for r in self.rows]

    def rank(self) -> int:
        work = [list(r) for r in self.rows]
        rank = 0
        ncols = self.shape[1]
        for col in range(ncols):
            pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
            if pivot is None:
                continue
            work[rank], work[pivot] = work[pivot], work[rank]
            pr = work[rank]
            for i in range(len(work)):
                if i != rank and work[i][col] != 0:
                    f = work[i][col] / pr[col]
                    work[i] = [a - f * b for a, b in zip(work[i], pr)]
            rank += 1
        return rank


def _check_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise InputError(f"p must be a prime >= 3, got {p}")


def pattern_index(p: int) -> list[tuple[int, int]]:
    return [(a, d) for a in range(p) for d in range(p) if (a, d) != (p - 1, 0)]


def weight_index(p: int) -> list[tuple[int, int]]:
    return [(j, b) for j in range(1, p + 1) for b in range(p - 1)]


def build_A(p: int) -> ExactMatrix:
    _check_prime(p)
    return ExactMatrix([
        [int((a + (j - 1) * d) % p == b) for a, d in pattern_index(p)]
        for j, b in weight_index(p)
    ])


def build_K(p: int) -> ExactMatrix:
    """Kernel basis of A; column d' (d' = 1..p-1) is -1 on every (b, 0) and
    +1 on every (b, d')."""
    _check_prime(p)
    rows = []
    for b, d in pattern_index(p):
        rows.append([-1 if d == 0 else int(d == dp) for dp in range(1, p)])
    return ExactMatrix(rows)


def _scaled_particular(p: int, j: int, a: int) -> list[int]:
    # p times the particular solution of A m = e_(j,a)
    col = []
    for b, d in pattern_index(p):
        if d == 0:
            col.append(-(p - 2) if b == a else -(p - 1))
        else:
            c = (b + (j - 1) * d) % p
            col.append(2 if c == a else 0 if c == p - 1 else 1)
    return col


def build_B(p: int) -> tuple[ExactMatrix, ExactMatrix]:
    """Return (B', B), both with A @ B = p * Id.

    B is B' with a kernel combination subtracted from every column so that
    rows (0, d), d != 0, vanish.
    """
    _check_prime(p)
    cols = [_scaled_particular(p, j, a) for j, a in weight_index(p)]
    b_prime = ExactMatrix(list(zip(*cols)))
    pats = pattern_index(p)
    K = build_K(p)
    zero_rows = [pats.index((0, d)) for d in range(1, p)]
    fixed = []
    for col in cols:
        alpha = [col[r] for r in zero_rows]
        shift = K @ alpha
        fixed.append([int(c - s) for c, s in zip(col, shift)])
    return b_prime, ExactMatrix(list(zip(*fixed)))


@lru_cache(maxsize=None)
def _int_B(p: int) -> tuple[tuple[int, ...], ...]:
    return tuple(map(tuple, build_B(p)[1].to_ints()))


def _check_w(w: Sequence[int], p: int) -> list[int]:
    w = [int(x) for x in w]
    if len(w) != p * (p - 1):
        raise InputError(f"weight vector for p = {p} needs {p * (p - 1)} entries, got {len(w)}")
    return w


def has_integer_solution(w: Sequence[int], p: int) -> bool:
    """Whether A m = w has an integer solution: every entry of B w is
    divisible by p."""
    _check_prime(p)
    w = _check_w(w, p)
    return all(sum(b * x for b, x in zip(row, w)) % p == 0 for row in _int_B(p))


def particular_solution(w: Sequence[int], p: int) -> list[int]:
    """The integer solution (1/p) B w; it is zero on rows (0, d), d != 0."""
    if not has_integer_solution(w, p):
        raise ContractError(f"A m = w has no integer solution for w = {list(w)}")
    w = _check_w(w, p)
    return [sum(b * x for b, x in zip(row, w)) // p for row in _int_B(p)]


def kernel_combination(v: Sequence[int], p: int) -> list[int]:
    """K @ v as integers."""
    out = []
    total = sum(v)
    for b, d in pattern_index(p):
        out.append(-total if d == 0 else v[d - 1])
    return out


def solve_lattice(w: Sequence[int], p: int, bound: int) -> list[tuple[int, ...]]:
    """All integer m with A m = w and max|m| <= bound."""
    m0 = particular_solution(w, p)
    sols = []
    # m(0, d) = v_d, so |v_d| <= bound is necessary
    for v in itertools.product(range(-bound, bound + 1), repeat=p - 1):
        m = tuple(x + y for x, y in zip(m0, kernel_combination(v, p)))
        if max(abs(x) for x in m) <= bound:
            sols.append(m)
    return sols


def lattice_search_solvable(w: Sequence[int], p: int, radius: int) -> bool:
    """Bounded search for an integer point of the real solution space
    (1/p) B' w + K t, never touching B or the divisibility test.

    Integer points have integer coordinates (0, d); each choice z of those in
    [-radius, radius]^(p-1) fixes t, and the remaining coordinates are tested.
    Everything is carried scaled by p so the arithmetic stays integral.
    """
    _check_prime(p)
    w = _check_w(w, p)
    b_prime, K = _int_b_prime_and_k(p)
    base = b_prime @ np.array(w, dtype=np.int64)
    pats = pattern_index(p)
    free = [pats.index((0, d)) for d in range(1, p)]
    grid = np.array(list(itertools.product(range(-radius, radius + 1), repeat=p - 1)), dtype=np.int64)
    # p*t = p*z - base[free]; p*m = base + K (p*t)
    pt = p * grid - base[free][None, :]
    pm = base[None, :] + pt @ K.T
    return bool(np.any(np.all(pm % p == 0, axis=1)))


@lru_cache(maxsize=None)
def _int_b_prime_and_k(p: int) -> tuple[np.ndarray, np.ndarray]:
    b_prime, _ = build_B(p)
    return np.array(b_prime.to_ints(), dtype=np.int64), np.array(build_K(p).to_ints(), dtype=np.int64)


def shifted_weight_vector(arrangement, p: int, n: int) -> list[int]:
    """Flatten full unshifted tuples into the shifted (j, b) row order."""
    s = full_convention(p, n).shift
    return [t[b] - s for t in arrangement for b in range(p - 1)]


# --- congruence classes and removal ------------------------------------------


@dataclass(frozen=True)
class CongruenceClass:
    v: tuple[int, ...]
    p: int

    def __post_init__(self):
        if any(not 0 <= x < self.p for x in self.v):
            raise InputError("class residues must lie in [0, p)")


def congruence_class(w_shifted: Sequence[int], p: int) -> CongruenceClass:
    return CongruenceClass(tuple(int(x) % p for x in w_shifted), p)


def class_of_tuple(t: Sequence[int], p: int, n: int) -> CongruenceClass:
    s = full_convention(p, n).shift
    return congruence_class([t[a] - s for a in range(p - 1)], p)


@dataclass(frozen=True)
class RemovalReport:
    sets: tuple[SymmetricSet, ...]
    removed: tuple[tuple[tuple[CongruenceClass, Fraction], ...], ...]
    removed_density: tuple[Fraction, ...]
    threshold: Fraction


def class_densities(s: SymmetricSet) -> dict[CongruenceClass, Fraction]:
    p, n = s.params.q, s.params.n
    sizes: dict[CongruenceClass, int] = {}
    for t in s.tuples:
        c = class_of_tuple(t, p, n)
        sizes[c] = sizes.get(c, 0) + multinomial(t)
    return {c: Fraction(k, p**n) for c, k in sizes.items()}


def removal_procedure(sets: Sequence[SymmetricSet], mu) -> RemovalReport:
    """Drop every congruence class of density at most mu / (2 p^(p-1))."""
    mu = Fraction(mu)
    if not 0 < mu <= 1:
        raise InputError(f"mu must lie in (0, 1], got {mu}")
    if not sets:
        raise InputError("need at least one set")
    p, n = sets[0].params.q, sets[0].params.n
    _check_prime(p)
    if any((s.params.q, s.params.n) != (p, n) for s in sets):
        raise InputError("all sets must share p and n")
    threshold = mu / (2 * p ** (p - 1))
    pruned, removed, densities = [], [], []
    for s in sets:
        dens = class_densities(s)
        gone = sorted((c for c, d in dens.items() if d <= threshold), key=lambda c: c.v)
        gone_set = set(gone)
        keep = frozenset(t for t in s.tuples if class_of_tuple(t, p, n) not in gone_set)
        pruned.append(SymmetricSet(s.params, keep))
        removed.append(tuple((c, dens[c]) for c in gone))
        densities.append(sum((dens[c] for c in gone), Fraction(0)))
    return RemovalReport(tuple(pruned), tuple(removed), tuple(densities), threshold)


def coordinate_sum_mod(t: Sequence[int], p: int) -> int:
    """sum_i x_i mod p for any x with weight tuple t."""
    return sum(a * c for a, c in enumerate(t)) % p


def trivial_split(sets: Sequence[SymmetricSet], p: int) -> tuple[SymmetricSet, ...]:
    """Keep coordinate sum 0 in the first p-1 sets and 1 in the last one;
    the resulting product contains no full progression."""
    _check_prime(p)
    if len(sets) != p:
        raise InputError(f"need {p} sets")
    out = []
    for j, s in enumerate(sets):
        target = 1 if j == p - 1 else 0
        out.append(SymmetricSet(s.params, frozenset(t for t in s.tuples if coordinate_sum_mod(t, p) == target)))
    return tuple(out)
