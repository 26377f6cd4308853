"""Brute-force ground truth: enumerate every progression of Z_q^n.

Two progression families are covered:

* restricted progressions ``x, x+d, ..., x+(q-1)d`` with ``d`` in {0,1}^n,
  (2q)^n of them;
* full progressions of F_p^n with any ``d`` in F_p^n, p^(2n) of them.

Progressions are identified with their ``(x, d)`` pairs, so two pairs giving
the same multiset of elements still count twice.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .core import (
    InputError,
    SpaceParams,
    SymmetricSet,
    check_budget,
    is_prime,
)

RESTRICTED = "restricted"
FULL = "full"
KINDS = (RESTRICTED, FULL)

_CHUNK = 1 << 18


@dataclass(frozen=True)
class RestrictedProgression:
    start: tuple[int, ...]
    diff: tuple[int, ...]
    q: int

    def __post_init__(self):
        if any(d not in (0, 1) for d in self.diff):
            raise InputError(f"restricted difference must be 0/1, got {self.diff}")

    @property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple((x + j * d) % self.q for x, d in zip(self.start, self.diff))
            for j in range(self.q)
        )


@dataclass(frozen=True)
class FullProgression:
    start: tuple[int, ...]
    diff: tuple[int, ...]
    p: int

    @property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple((x + j * d) % self.p for x, d in zip(self.start, self.diff))
            for j in range(self.p)
        )


def _weights(x: Sequence[int], q: int) -> tuple[int, ...]:
    counts = [0] * q
    for s in x:
        counts[s] += 1
    return tuple(counts)


def progression_arrangement(prog) -> tuple[tuple[int, ...], ...]:
    q = prog.q if isinstance(prog, RestrictedProgression) else prog.p
    return tuple(_weights(e, q) for e in prog.elements)


def total_progressions(params: SpaceParams, kind: str) -> int:
    if kind == RESTRICTED:
        return (2 * params.q) ** params.n
    if kind == FULL:
        return params.q ** (2 * params.n)
    raise InputError(f"unknown progression kind {kind!r}")


def enumerate_restricted(params: SpaceParams, budget: int | None = None) -> Iterator[RestrictedProgression]:
    q, n = params.q, params.n
    check_budget("restricted enumeration", (2 * q) ** n, budget)
    for x in itertools.product(range(q), repeat=n):
        for d in itertools.product((0, 1), repeat=n):
            yield RestrictedProgression(x, d, q)


def enumerate_full(params: SpaceParams, budget: int | None = None) -> Iterator[FullProgression]:
    p, n = params.q, params.n
    if not is_prime(p):
        raise InputError(f"full progressions need prime p, got {p}")
    check_budget("full enumeration", p ** (2 * n), budget)
    for x in itertools.product(range(p), repeat=n):
        for d in itertools.product(range(p), repeat=n):
            yield FullProgression(x, d, p)


def _digits(idx: np.ndarray, base: int, n: int) -> np.ndarray:
    out = np.empty((idx.shape[0], n), dtype=np.int64)
    rest = idx.copy()
    for i in range(n - 1, -1, -1):
        out[:, i] = rest % base
        rest //= base
    return out


def _histogram(q: int, n: int, diff_alphabet: int) -> dict:
    """Vectorized brute force over all (x, d) with d_i in range(diff_alphabet).

    Pairs are indexed by a mixed radix integer; elements x + j*d are formed
    explicitly and their symbol counts tallied.
    """
    base = q * diff_alphabet
    total = base**n
    hist: Counter = Counter()
    for lo in range(0, total, _CHUNK):
        idx = np.arange(lo, min(lo + _CHUNK, total), dtype=np.int64)
        digits = _digits(idx, base, n)
        x = digits // diff_alphabet
        d = digits % diff_alphabet
        cols = []
        for j in range(q):
            elem = (x + j * d) % q
            for b in range(q):
                cols.append((elem == b).sum(axis=1))
        rows = np.stack(cols, axis=1)
        uniq, counts = np.unique(rows, axis=0, return_counts=True)
        for row, c in zip(uniq.tolist(), counts.tolist()):
            key = tuple(tuple(row[j * q:(j + 1) * q]) for j in range(q))
            hist[key] += c
    return dict(hist)


@lru_cache(maxsize=32)
def _cached_histogram(q: int, n: int, kind: str) -> dict:
    return _histogram(q, n, 2 if kind == RESTRICTED else q)


def arrangement_histogram(params: SpaceParams, kind: str, budget: int | None = None) -> dict:
    """Map from weight arrangement to number of progressions realising it."""
    if kind == FULL and not is_prime(params.q):
        raise InputError(f"full progressions need prime p, got {params.q}")
    required = total_progressions(params, kind)
    check_budget(f"{kind} oracle", required, budget)
    return dict(_cached_histogram(params.q, params.n, kind))


def oracle_count(sets: Sequence[SymmetricSet], kind: str, budget: int | None = None) -> tuple[int, dict]:
    """Exact number of progressions with j-th element in ``sets[j]``.

    Returns the count and the per-arrangement histogram restricted to the
    product of the sets.
    """
    params = _shared_params(sets)
    if any(len(s) == 0 for s in sets):
        check_budget(f"{kind} oracle", total_progressions(params, kind), budget)
        return 0, {}
    hist = arrangement_histogram(params, kind, budget)
    hits = {
        arr: c for arr, c in hist.items()
        if all(t in s.tuples for t, s in zip(arr, sets))
    }
    return sum(hits.values()), hits


def _shared_params(sets: Sequence[SymmetricSet]) -> SpaceParams:
    if not sets:
        raise InputError("need at least one set")
    qs = {(s.params.q, s.params.n) for s in sets}
    if len(qs) != 1:
        raise InputError("all sets must share q and n")
    params = sets[0].params
    if len(sets) != params.q:
        raise InputError(f"need exactly q = {params.q} sets, got {len(sets)}")
    return params


__all__ = [
    "FULL",
    "KINDS",
    "RESTRICTED",
    "FullProgression",
    "RestrictedProgression",
    "arrangement_histogram",
    "enumerate_full",
    "enumerate_restricted",
    "oracle_count",
    "progression_arrangement",
    "total_progressions",
]
