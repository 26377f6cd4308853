"""Weight tuples, shift conventions and exact multinomial primitives.

Everything downstream works on *full unshifted* weight tuples
``(w_0, ..., w_{q-1})`` with nonnegative entries summing to ``n``.  The
shifted forms used by the various reductions are views produced by
:func:`shift` and undone by :func:`unshift`.
"""

from __future__ import annotations

import json
import math
import os
import sys
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

DEFAULT_BUDGET = 10**8


class InputError(ValueError):
    """Malformed input (bad symbol, bad parameters, unparsable file)."""


class ContractError(ValueError):
    """An operation was called outside its precondition."""


class BudgetExceeded(RuntimeError):
    """Refusal to enumerate a space larger than the configured budget."""

    def __init__(self, what: str, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(f"{what}: needs {required} steps, budget is {budget}")


def default_budget() -> int:
    raw = os.environ.get("SYMPROG_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"SYMPROG_BUDGET must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise InputError("SYMPROG_BUDGET must be positive")
    return value


def check_budget(what: str, required: int, budget: int | None = None) -> None:
    budget = default_budget() if budget is None else budget
    if required > budget:
        raise BudgetExceeded(what, required, budget)


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    return all(k % d for d in range(2, math.isqrt(k) + 1))


@dataclass(frozen=True)
class SpaceParams:
    q: int
    n: int
    prime_required: bool = False

    def __post_init__(self):
        if self.q < 3:
            raise InputError(f"alphabet size q must be >= 3, got {self.q}")
        if self.n < 1:
            raise InputError(f"dimension n must be >= 1, got {self.n}")
        if self.prime_required and not is_prime(self.q):
            raise InputError(f"q = {self.q} must be prime here")


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-tuples of nonnegative integers summing to n, lexicographic."""
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def num_compositions(n: int, k: int) -> int:
    return math.comb(n + k - 1, k - 1)


@dataclass(frozen=True)
class WeightTuple:
    """Symbol counts ``(w_0, ..., w_{q-1})`` of one element of Z_q^n."""

    counts: tuple[int, ...]
    params: SpaceParams

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if len(counts) != self.params.q:
            raise InputError(f"weight tuple needs {self.params.q} entries, got {len(counts)}")
        if any(c < 0 for c in counts):
            raise InputError(f"negative weight in {counts}")
        if sum(counts) != self.params.n:
            raise InputError(f"weights {counts} do not sum to n = {self.params.n}")

    def __iter__(self):
        return iter(self.counts)

    def __getitem__(self, a):
        return self.counts[a]

    def __len__(self):
        return len(self.counts)


def weights_of(x: Sequence[int], q: int) -> WeightTuple:
    counts = [0] * q
    for symbol in x:
        if not 0 <= symbol < q:
            raise InputError(f"symbol {symbol} outside Z_{q}")
        counts[symbol] += 1
    return WeightTuple(tuple(counts), SpaceParams(q, len(x)))


def multinomial(counts: Iterable[int]) -> int:
    """Exact ``(sum counts)! / prod(c!)``; zero if any count is negative."""
    result = 1
    total = 0
    for c in counts:
        if c < 0:
            return 0
        total += c
        result *= math.comb(total, c)
    return result


def multinomial_count(w: WeightTuple | Sequence[int]) -> int:
    """Number of x in Z_q^n with weight tuple ``w``."""
    return multinomial(w.counts if isinstance(w, WeightTuple) else w)


def weight_simplex(q: int, n: int) -> list[tuple[int, ...]]:
    """Every valid weight tuple for (q, n)."""
    return list(compositions(n, q))


# --- shift conventions -------------------------------------------------------


@dataclass(frozen=True)
class ShiftConvention:
    """Which q-1 weights are kept and the constant subtracted from each."""

    kept_indices: tuple[int, ...]
    shift: int
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        kept = tuple(self.kept_indices)
        object.__setattr__(self, "kept_indices", kept)
        if len(set(kept)) != len(kept):
            raise InputError(f"kept indices {kept} repeat")
        if self.shift < 0:
            raise InputError("shift must be nonnegative")

    @property
    def q(self) -> int:
        return len(self.kept_indices) + 1

    @property
    def dropped_index(self) -> int:
        (missing,) = set(range(self.q)) - set(self.kept_indices)
        return missing


def triangle_convention(n: int) -> ShiftConvention:
    """q = 3 graph reduction: keep (w_0, w_1), subtract n/3."""
    return ShiftConvention((0, 1), n // 3, "triangle")


def restricted_convention(q: int, n: int) -> ShiftConvention:
    """Restricted progressions: keep (w_1, ..., w_{q-1}), subtract 2*floor(n/2q)."""
    return ShiftConvention(tuple(range(1, q)), 2 * (n // (2 * q)), "restricted")


def full_convention(p: int, n: int) -> ShiftConvention:
    """Full F_p progressions: keep (w_0, ..., w_{p-2}), subtract p*floor(n/p^2)."""
    return ShiftConvention(tuple(range(p - 1)), p * (n // (p * p)), "full")


@dataclass(frozen=True)
class ShiftedWeightTuple:
    values: tuple[int, ...]
    convention: ShiftConvention
    params: SpaceParams

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.params.q - 1:
            raise InputError(f"shifted tuple needs {self.params.q - 1} entries")
        if self.convention.q != self.params.q:
            raise InputError("convention does not match alphabet size")

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)


def shift(w: WeightTuple, c: ShiftConvention) -> ShiftedWeightTuple:
    if c.q != w.params.q:
        raise InputError(f"convention is for q = {c.q}, tuple has q = {w.params.q}")
    return ShiftedWeightTuple(tuple(w.counts[a] - c.shift for a in c.kept_indices), c, w.params)


def unshift(sw: ShiftedWeightTuple) -> WeightTuple:
    c, params = sw.convention, sw.params
    counts = [0] * params.q
    for a, v in zip(c.kept_indices, sw.values):
        counts[a] = v + c.shift
    counts[c.dropped_index] = params.n - sum(counts)
    if any(x < 0 for x in counts):
        raise ValueError(f"shifted tuple {sw.values} does not come from a valid weight tuple")
    return WeightTuple(tuple(counts), params)


# --- sets and arrangements ---------------------------------------------------


def _as_counts(t) -> tuple[int, ...]:
    if isinstance(t, WeightTuple):
        return t.counts
    return tuple(int(x) for x in t)


@dataclass(frozen=True)
class SymmetricSet:
    """A symmetric subset of Z_q^n, held as its set of weight tuples.

    ``tuples`` holds plain count tuples; :meth:`weight_tuples` wraps them.
    """

    params: SpaceParams
    tuples: frozenset = frozenset()

    def __post_init__(self):
        tuples = frozenset(_as_counts(t) for t in self.tuples)
        for t in tuples:
            WeightTuple(t, self.params)
        object.__setattr__(self, "tuples", tuples)

    def __contains__(self, t) -> bool:
        return _as_counts(t) in self.tuples

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self):
        return iter(sorted(self.tuples))

    def weight_tuples(self) -> list[WeightTuple]:
        return [WeightTuple(t, self.params) for t in sorted(self.tuples)]

    def size(self) -> int:
        """Number of points of Z_q^n in the set."""
        return sum(multinomial(t) for t in self.tuples)

    @classmethod
    def full(cls, params: SpaceParams) -> "SymmetricSet":
        return cls(params, frozenset(compositions(params.n, params.q)))

    def to_json(self) -> dict:
        return {"q": self.params.q, "n": self.params.n, "tuples": [list(t) for t in self]}

    @classmethod
    def from_json(cls, obj: dict) -> "SymmetricSet":
        try:
            params = SpaceParams(int(obj["q"]), int(obj["n"]))
            return cls(params, frozenset(tuple(t) for t in obj["tuples"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad symmetric set JSON: {exc}") from exc


@dataclass(frozen=True)
class WeightArrangement:
    """The q full weight tuples of the q elements of a progression."""

    tuples: tuple[tuple[int, ...], ...]
    params: SpaceParams

    def __post_init__(self):
        tuples = tuple(_as_counts(t) for t in self.tuples)
        object.__setattr__(self, "tuples", tuples)
        if len(tuples) != self.params.q:
            raise InputError(f"arrangement needs {self.params.q} tuples, got {len(tuples)}")
        for t in tuples:
            WeightTuple(t, self.params)

    def __iter__(self):
        return iter(self.tuples)

    def __getitem__(self, j):
        return self.tuples[j]

    def __len__(self):
        return len(self.tuples)

    def shifted(self, c: ShiftConvention) -> list[tuple[int, ...]]:
        return [tuple(t[a] - c.shift for a in c.kept_indices) for t in self.tuples]

    def to_json(self) -> list:
        return [list(t) for t in self.tuples]

    @classmethod
    def from_json(cls, obj, n: int | None = None) -> "WeightArrangement":
        try:
            tuples = tuple(tuple(int(x) for x in t) for t in obj)
            q = len(tuples)
            n = sum(tuples[0]) if n is None else n
        except (TypeError, ValueError, IndexError) as exc:
            raise InputError(f"bad arrangement JSON: {exc}") from exc
        return cls(tuples, SpaceParams(q, n))


def arrangement(tuples, n: int | None = None) -> WeightArrangement:
    """Coerce a sequence of count sequences into a validated arrangement."""
    if isinstance(tuples, WeightArrangement):
        return tuples
    tuples = tuple(_as_counts(t) for t in tuples)
    if n is None:
        n = sum(tuples[0])
    return WeightArrangement(tuples, SpaceParams(len(tuples[0]), n))


def dump_bigint(value: int) -> str:
    """Decimal string of any size (lifts the interpreter's digit cap)."""
    value = int(value)
    limit = getattr(sys, "get_int_max_str_digits", lambda: 0)()
    if not limit:
        return str(value)
    sys.set_int_max_str_digits(0)
    try:
        return str(value)
    finally:
        sys.set_int_max_str_digits(limit)


def dump_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return dump_bigint(value.numerator)
    return f"{dump_bigint(value.numerator)}/{dump_bigint(value.denominator)}"


def dump_float(x: float) -> str:
    """Shortest round-tripping digits, always positional."""
    return format(Decimal(repr(float(x))), "f")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
