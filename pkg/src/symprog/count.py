"""Exact progression counts per weight arrangement, without enumeration.

Each coordinate of a progression follows one of finitely many patterns
(2q for restricted progressions, p^2 for full ones).  The histogram of
patterns determines the weight arrangement, and the number of progressions
with a given histogram is a multinomial coefficient.  Counting an
arrangement therefore reduces to summing multinomials over the integer
points of an affine family of pattern histograms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import (
    InputError,
    SpaceParams,
    SymmetricSet,
    WeightArrangement,
    arrangement,
    check_budget,
    compositions,
    is_prime,
    multinomial,
    num_compositions,
    weight_simplex,
)
from .feasible import complete_arrangement
from .modp import has_integer_solution, particular_solution, pattern_index, shifted_weight_vector
from .oracle import FULL, RESTRICTED


@dataclass(frozen=True)
class RestrictedPatternCounts:
    """``same[a]``: coordinates reading a, a, ..., a; ``cycle[a]``: coordinates
    reading a, a+1, ..., a+q-1.  Counts are unshifted."""

    same: tuple[int, ...]
    cycle: tuple[int, ...]
    params: SpaceParams

    def __post_init__(self):
        q, n = self.params.q, self.params.n
        if len(self.same) != q or len(self.cycle) != q:
            raise InputError(f"pattern counts need {q} entries each")
        if min(self.same + self.cycle) < 0 or sum(self.same) + sum(self.cycle) != n:
            raise InputError("pattern counts must be nonnegative and sum to n")

    def shifted(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        s = self.params.n // (2 * self.params.q)
        return tuple(x - s for x in self.same), tuple(x - s for x in self.cycle)


@dataclass(frozen=True)
class FullPatternCounts:
    """``m[a][d]``: coordinates with start symbol a and difference d."""

    m: tuple[tuple[int, ...], ...]
    params: SpaceParams

    def __post_init__(self):
        p, n = self.params.q, self.params.n
        m = tuple(tuple(int(x) for x in row) for row in self.m)
        object.__setattr__(self, "m", m)
        if len(m) != p or any(len(row) != p for row in m):
            raise InputError(f"pattern matrix must be {p}x{p}")
        flat = [x for row in m for x in row]
        if min(flat) < 0 or sum(flat) != n:
            raise InputError("pattern counts must be nonnegative and sum to n")


@dataclass(frozen=True)
class SolutionFamily:
    """Pattern histograms ``base + sum_i v_i * directions[i]`` for v in
    ``valid_range``; every one of them realises the same arrangement.

    For restricted progressions vectors are ``same + cycle`` (length 2q) and
    v is the single integer k; for full progressions vectors are the p x p
    matrix flattened row-major and v ranges over integer (p-1)-tuples.
    """

    base: tuple[int, ...]
    directions: tuple[tuple[int, ...], ...]
    valid_range: tuple

    def point(self, v) -> tuple[int, ...]:
        if isinstance(v, int):
            v = (v,)
        return tuple(
            b + sum(vi * d[i] for vi, d in zip(v, self.directions))
            for i, b in enumerate(self.base)
        )

    def solutions(self) -> Iterator[tuple[int, ...]]:
        for v in self.valid_range:
            yield self.point(v)

    def __len__(self) -> int:
        return len(self.valid_range)

    def __bool__(self) -> bool:
        return len(self.valid_range) > 0


EMPTY_FAMILY = SolutionFamily((), (), ())


def _restricted_weights(same: Sequence[int], cycle: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    q = len(same)
    return tuple(tuple(same[b] + cycle[(b - j) % q] for b in range(q)) for j in range(q))


def _full_weights(m: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    p = len(m)
    out = []
    for j in range(p):
        w = [0] * p
        for a in range(p):
            row = m[a]
            for d in range(p):
                w[(a + j * d) % p] += row[d]
        out.append(tuple(w))
    return tuple(out)


def patterns_to_arrangement(pc: RestrictedPatternCounts | FullPatternCounts) -> WeightArrangement:
    if isinstance(pc, RestrictedPatternCounts):
        return WeightArrangement(_restricted_weights(pc.same, pc.cycle), pc.params)
    if isinstance(pc, FullPatternCounts):
        return WeightArrangement(_full_weights(pc.m), pc.params)
    raise InputError(f"not a pattern count: {type(pc).__name__}")


def _k_range(base, direction, n) -> range:
    lo, hi = -(10**18), 10**18
    for b, d in zip(base, direction):
        # need 0 <= b + k*d <= n with d in {-1, +1}
        if d == 1:
            lo, hi = max(lo, -b), min(hi, n - b)
        elif d == -1:
            lo, hi = max(lo, b - n), min(hi, b)
        elif not 0 <= b <= n:
            return range(0)
    return range(lo, hi + 1) if lo <= hi else range(0)


def solve_restricted_patterns(arr) -> SolutionFamily:
    """One-parameter family of (same, cycle) histograms realising ``arr``.

    With k = cycle[0], the remaining entries follow by back substitution:
    same[a] = w^(2)_a - cycle[a-1] and cycle[a] = w^(1)_a - same[a] for
    a = 1..q-1, then same[0] = w^(1)_0 - k.  The family is empty when the
    forced histogram disagrees with w^(3), ..., w^(q).
    """
    arr = arrangement(arr)
    q, n = arr.params.q, arr.params.n
    w1, w2 = arr[0], arr[1]

    def at(k):
        same, cycle = [0] * q, [0] * q
        cycle[0] = k
        for a in range(1, q):
            same[a] = w2[a] - cycle[a - 1]
            cycle[a] = w1[a] - same[a]
        same[0] = w1[0] - k
        return same + cycle

    base, one = at(0), at(1)
    if _restricted_weights(base[:q], base[q:]) != arr.tuples:
        return EMPTY_FAMILY
    direction = tuple(y - x for x, y in zip(base, one))
    ks = _k_range(base, direction, n)
    if not ks:
        return EMPTY_FAMILY
    return SolutionFamily(tuple(base), (direction,), tuple(ks))


def count_arrangement_restricted(arr) -> int:
    """Number of restricted progressions whose elements have the given full
    weight tuples, as a sum of multinomials over the solution family."""
    return sum(multinomial(m) for m in solve_restricted_patterns(arr).solutions())


def solve_full_patterns(arr, p: int | None = None) -> SolutionFamily:
    """Lattice family of p x p pattern matrices realising ``arr``.

    The shifted system A m = w is solved as m = (1/p) B w + K v; because
    (1/p) B w vanishes on coordinates (0, d), those coordinates equal v_d,
    which bounds v to a finite box.
    """
    arr = arrangement(arr)
    p = arr.params.q if p is None else p
    n = arr.params.n
    if p != arr.params.q or not is_prime(p):
        raise InputError(f"full counting needs prime p equal to q = {arr.params.q}")
    w = shifted_weight_vector(arr.tuples, p, n)
    if not has_integer_solution(w, p):
        return EMPTY_FAMILY
    f = n // (p * p)
    pats = pattern_index(p)
    pos = {(a, d): a * p + d for a in range(p) for d in range(p)}
    m0 = particular_solution(w, p)
    base = [0] * (p * p)
    for (a, d), x in zip(pats, m0):
        base[pos[a, d]] = x + f
    base[pos[p - 1, 0]] = n - sum(base)
    directions = []
    for dp in range(1, p):
        vec = [0] * (p * p)
        for a, d in pats:
            vec[pos[a, d]] = -1 if d == 0 else int(d == dp)
        vec[pos[p - 1, 0]] = -sum(vec)
        directions.append(tuple(vec))
    fam = SolutionFamily(tuple(base), tuple(directions), ())
    valid = []
    # coordinate (0, d) equals v_d + f
    for v in itertools.product(range(-f, n - f + 1), repeat=p - 1):
        pt = fam.point(v)
        if min(pt) >= 0 and max(pt) <= n:
            valid.append(v)
    return SolutionFamily(fam.base, fam.directions, tuple(valid))


def count_arrangement_full(arr, p: int | None = None) -> int:
    return sum(multinomial(m) for m in solve_full_patterns(arr, p).solutions())


def _product_params(sets: Sequence[SymmetricSet]) -> SpaceParams:
    if not sets:
        raise InputError("need at least one set")
    params = sets[0].params
    if any((s.params.q, s.params.n) != (params.q, params.n) for s in sets):
        raise InputError("all sets must share q and n")
    if len(sets) != params.q:
        raise InputError(f"need exactly q = {params.q} sets, got {len(sets)}")
    return params


def product_arrangements(sets: Sequence[SymmetricSet], kind: str, budget: int | None = None) -> dict:
    """Per-arrangement progression counts for arrangements in the product
    (zero-count arrangements omitted)."""
    params = _product_params(sets)
    q, n = params.q, params.n
    if any(len(s) == 0 for s in sets):
        return {}
    out = {}
    if kind == RESTRICTED:
        check_budget("restricted product", len(sets[0]) * len(sets[1]), budget)
        for w1 in sets[0]:
            for w2 in sets[1]:
                arr = complete_arrangement(w1, w2, n)
                if arr is None or not all(t in s.tuples for t, s in zip(arr[2:], sets[2:])):
                    continue
                c = count_arrangement_restricted(WeightArrangement(arr, params))
                if c:
                    out[arr] = c
        return out
    if kind == FULL:
        if not is_prime(q):
            raise InputError(f"full progressions need prime p, got {q}")
        check_budget("pattern compositions", num_compositions(n, q * q), budget)
        members = [s.tuples for s in sets]
        for comp in compositions(n, q * q):
            m = [comp[a * q:(a + 1) * q] for a in range(q)]
            arr = _full_weights(m)
            if all(t in s for t, s in zip(arr, members)):
                out[arr] = out.get(arr, 0) + multinomial(comp)
        return out
    raise InputError(f"unknown progression kind {kind!r}")


def count_product_hits(sets: Sequence[SymmetricSet], kind: str, budget: int | None = None) -> int:
    """Number of progressions with j-th element in ``sets[j]``."""
    return sum(product_arrangements(sets, kind, budget).values())


def arrangement_table(params: SpaceParams, kind: str, budget: int | None = None) -> dict:
    """Counts for every realised arrangement of the whole space."""
    full = SymmetricSet(params, frozenset(weight_simplex(params.q, params.n)))
    return product_arrangements([full] * params.q, kind, budget)
