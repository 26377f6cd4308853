"""Feasibility of weight arrangements of restricted progressions.

Arrangements are checked in the restricted shifted convention: each
element contributes ``(W_1, ..., W_{q-1})`` with ``W_a = w_a - 2*floor(n/2q)``.
Given the first two tuples the rest are forced by the linear recurrence

    W_1^(j) = sum_{a>=1} W_a^(j-2) - sum_{a>=2} W_a^(j-1)
    W_a^(j) = -W_{a-1}^(j-2) + W_{a-1}^(j-1) + W_a^(j-1)      (a >= 2)

so the feasible arrangements over Z_N number exactly N^(2(q-1)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import (
    InputError,
    WeightArrangement,
    check_budget,
    restricted_convention,
)


@dataclass(frozen=True)
class ModArrangement:
    """q shifted tuples of length q-1 with entries in Z_N."""

    values: tuple[int, ...]
    N: int
    q: int

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != self.q * (self.q - 1):
            raise InputError(f"mod arrangement needs {self.q * (self.q - 1)} residues")
        if any(not 0 <= v < self.N for v in values):
            raise InputError(f"residues must lie in [0, {self.N})")

    @property
    def tuples(self) -> tuple[tuple[int, ...], ...]:
        k = self.q - 1
        return tuple(self.values[j * k:(j + 1) * k] for j in range(self.q))

    @classmethod
    def from_tuples(cls, tuples, N: int) -> "ModArrangement":
        flat = tuple(int(v) % N for t in tuples for v in t)
        return cls(flat, N, len(tuples))


def _next_tuple(prev2: Sequence[int], prev1: Sequence[int]) -> list[int]:
    # index 0 of these lists holds W_1, index q-2 holds W_{q-1}
    k = len(prev1)
    nxt = [sum(prev2) - sum(prev1[1:])]
    for a in range(1, k):
        nxt.append(-prev2[a - 1] + prev1[a - 1] + prev1[a])
    return nxt


def derive_tail(w1: Sequence[int], w2: Sequence[int], q: int | None = None, N: int | None = None):
    """Unique feasible arrangement starting with shifted tuples ``w1, w2``.

    With ``N`` given, works over Z_N and returns a :class:`ModArrangement`;
    otherwise returns the list of q integer tuples.
    """
    w1, w2 = list(w1), list(w2)
    if len(w1) != len(w2):
        raise InputError("first two tuples differ in length")
    q = len(w1) + 1 if q is None else q
    if len(w1) != q - 1:
        raise InputError(f"shifted tuples for q = {q} have {q - 1} entries")
    out = [w1, w2]
    for _ in range(2, q):
        nxt = _next_tuple(out[-2], out[-1])
        if N is not None:
            nxt = [v % N for v in nxt]
        out.append(nxt)
    if N is not None:
        return ModArrangement.from_tuples(out, N)
    return [tuple(t) for t in out]


def complete_arrangement(w1: Sequence[int], w2: Sequence[int], n: int) -> tuple[tuple[int, ...], ...] | None:
    """Feasible completion of two full unshifted tuples, or None if some
    derived tuple has a negative entry."""
    q = len(w1)
    conv = restricted_convention(q, n)
    s = conv.shift
    shifted = derive_tail([w1[a] - s for a in range(1, q)], [w2[a] - s for a in range(1, q)], q)
    out = []
    for t in shifted:
        tail = [v + s for v in t]
        full = (n - sum(tail), *tail)
        if min(full) < 0:
            return None
        out.append(full)
    return tuple(out)


def is_feasible(arr) -> bool:
    """Feasibility of a full-tuple :class:`WeightArrangement`, a
    :class:`ModArrangement`, or a sequence of already shifted integer tuples."""
    if isinstance(arr, ModArrangement):
        tuples = arr.tuples
        return derive_tail(tuples[0], tuples[1], arr.q, arr.N).values == arr.values
    if isinstance(arr, WeightArrangement):
        tuples = arr.shifted(restricted_convention(arr.params.q, arr.params.n))
    else:
        tuples = [tuple(t) for t in arr]
        lengths = {len(t) for t in tuples}
        if len(lengths) != 1 or lengths.pop() != len(tuples) - 1:
            raise InputError("shifted arrangement must be q tuples of length q-1")
    return derive_tail(tuples[0], tuples[1], len(tuples)) == [tuple(t) for t in tuples]


def feasible_q3_check(x0: int, x1: int, y0: int, y1: int, z0: int, z1: int) -> bool:
    """q = 3 test in the (w_0, w_1) convention: Z is forced by X and Y."""
    return (z0, z1) == (x0 + x1 - y1, y0 + y1 - x0)


def enumerate_feasible(q: int, N: int, budget: int | None = None) -> Iterator[ModArrangement]:
    if q < 3 or N < 1:
        raise InputError("need q >= 3 and N >= 1")
    check_budget("feasible enumeration", N ** (2 * (q - 1)), budget)
    for head in itertools.product(range(N), repeat=2 * (q - 1)):
        yield derive_tail(head[: q - 1], head[q - 1:], q, N)


def feasible_count(q: int, N: int, budget: int | None = None) -> int:
    return sum(1 for _ in enumerate_feasible(q, N, budget))


def q3_from_arrangement(arr: WeightArrangement) -> tuple[int, ...]:
    """The six (w_0, w_1) coordinates, each shifted by n/3, for q = 3."""
    if arr.params.q != 3:
        raise InputError("q3 convention needs q = 3")
    s = arr.params.n // 3
    return tuple(t[a] - s for t in arr.tuples for a in (0, 1))

