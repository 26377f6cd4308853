"""The acceptance checks, runnable from the CLI (``verify all``) and pytest.

Each check returns a :class:`CheckResult`; on failure ``detail`` carries the
first counterexample found.  Tolerances are exact unless stated.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .clt import limit_constant, scaled_center
from .core import SpaceParams, SymmetricSet, WeightArrangement, weight_simplex
from .count import (
    arrangement_table,
    count_arrangement_full,
    count_arrangement_restricted,
    count_product_hits,
    product_arrangements,
)
from .encode import (
    build_hypergraph,
    build_tripartite,
    count_triangles,
    edge_disjoint,
    enumerate_simplices,
    feasible_in_product,
    group_by_labels,
    triangle_edges,
    triangle_is_feasible,
    witness_triangles,
)
from .feasible import ModArrangement, enumerate_feasible, is_feasible
from .generate import random_box_set, random_label_sets, random_set_tuple
from .modp import (
    ExactMatrix,
    build_A,
    build_B,
    build_K,
    has_integer_solution,
    lattice_search_solvable,
    pattern_index,
    removal_procedure,
    trivial_split,
)
from .oracle import FULL, RESTRICTED, arrangement_histogram, oracle_count

QUICK, FULL_TIER = "quick", "full"


@dataclass
class CheckResult:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.number:2d} {self.name} ({self.seconds:.1f}s): {self.detail}"


class _Fail(Exception):
    pass


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise _Fail(msg)


# 1 ---------------------------------------------------------------------------


def restricted_oracle_equivalence(tier: str = FULL_TIER) -> str:
    grid = [(3, n) for n in range(2, 9)] + [(4, n) for n in range(2, 6)]
    instances = 0
    for q, n in grid:
        for seed in range(20):
            sets = random_set_tuple(q, n, seed)
            total, hist = oracle_count(sets, RESTRICTED)
            fast = product_arrangements(sets, RESTRICTED)
            _require(count_product_hits(sets, RESTRICTED) == total,
                     f"q={q} n={n} seed={seed}: product count {sum(fast.values())} != oracle {total}")
            _require(fast == hist, f"q={q} n={n} seed={seed}: per-arrangement table differs from oracle")
            for arr, c in hist.items():
                _require(count_arrangement_restricted(arr) == c,
                         f"q={q} n={n}: arrangement {arr} counted differently from oracle {c}")
            instances += 1
    return f"{instances} seeded instances exact"


# 2 ---------------------------------------------------------------------------


def full_oracle_equivalence(tier: str = FULL_TIER) -> str:
    p = 3
    instances = 0
    for n in range(2, 7):
        params = SpaceParams(p, n)
        hist = arrangement_histogram(params, FULL)
        # every arrangement of the whole weight simplex, realised or not
        simplex = weight_simplex(p, n)
        for arr in itertools.product(simplex, repeat=p):
            got = count_arrangement_full(WeightArrangement(arr, params))
            _require(got == hist.get(arr, 0), f"n={n}: arrangement {arr}: {got} != oracle {hist.get(arr, 0)}")
        for seed in range(20):
            sets = random_set_tuple(p, n, seed)
            total, sub = oracle_count(sets, FULL)
            _require(count_product_hits(sets, FULL) == total, f"n={n} seed={seed}: product count != oracle {total}")
            _require(product_arrangements(sets, FULL) == sub, f"n={n} seed={seed}: per-arrangement table differs")
            instances += 1
    return f"{instances} seeded instances exact, all arrangements for n<=6 exact"


# 3 ---------------------------------------------------------------------------


def progression_total_identity(tier: str = FULL_TIER) -> str:
    for q in (3, 4):
        for n in range(1, 7):
            total = sum(arrangement_table(SpaceParams(q, n), RESTRICTED).values())
            _require(total == (2 * q) ** n, f"q={q} n={n}: {total} != {(2 * q) ** n}")
    return "sum of arrangement counts = (2q)^n for q in {3,4}, n <= 6"


# 4 ---------------------------------------------------------------------------


def _brute_feasible_count(q: int, N: int) -> int:
    k = q * (q - 1)
    return sum(1 for v in itertools.product(range(N), repeat=k) if is_feasible(ModArrangement(v, N, q)))


def feasible_total_identity(tier: str = FULL_TIER) -> str:
    notes = []
    for q in (3, 4):
        for N in (2, 3, 5):
            arrs = list(enumerate_feasible(q, N))
            _require(len(arrs) == N ** (2 * (q - 1)), f"q={q} N={N}: {len(arrs)} != {N ** (2 * (q - 1))}")
            _require(len({a.values for a in arrs}) == len(arrs), f"q={q} N={N}: duplicates")
            _require(all(is_feasible(a) for a in arrs), f"q={q} N={N}: non-feasible output")
            if N ** (q * (q - 1)) <= 10**6 and (tier == FULL_TIER or N ** (q * (q - 1)) <= 10**5):
                brute = _brute_feasible_count(q, N)
                _require(brute == len(arrs), f"q={q} N={N}: brute-force count {brute} != {len(arrs)}")
                notes.append(f"({q},{N})")
    return "|E(q,N)| = N^(2(q-1)); brute-force confirmed for " + ",".join(notes)


# 5 ---------------------------------------------------------------------------


def b_prime_census(p: int) -> list[Counter]:
    """Per column of B', the multiset of entries (as multiples of 1/p)."""
    b_prime, _ = build_B(p)
    return [Counter(int(x) for x in b_prime.column(c)) for c in range(b_prime.shape[1])]


def matrix_suite(tier: str = FULL_TIER) -> str:
    for p in (3, 5, 7):
        A, K = build_A(p), build_K(p)
        b_prime, B = build_B(p)
        pid = ExactMatrix.identity(p * (p - 1)).scale(p)
        _require(A.shape == (p * (p - 1), p * p - 1), f"p={p}: A shape {A.shape}")
        _require(A @ B == pid, f"p={p}: A B != p Id")
        _require(A @ b_prime == pid, f"p={p}: A B' != p Id")
        _require((A @ K).is_zero(), f"p={p}: A K != 0")
        _require(A.rank() == p * (p - 1), f"p={p}: rank(A) = {A.rank()}")
        _require(K.rank() == p - 1, f"p={p}: rank(K) = {K.rank()}")
        expected = Counter({-(p - 2): 1, -(p - 1): p - 2, 2: p - 1, 1: (p - 1) * (p - 2), 0: p - 1})
        for c, census in enumerate(b_prime_census(p)):
            _require(census == expected, f"p={p}: column {c} of B' has census {dict(census)}")
        pats = pattern_index(p)
        for d in range(1, p):
            r = pats.index((0, d))
            _require(all(x == 0 for x in B.rows[r]), f"p={p}: B row (0,{d}) non-zero")
        _require((B - b_prime).is_integer(), f"p={p}: B - B' not integer")
        _require((A @ (B - b_prime)).is_zero(), f"p={p}: B - B' leaves the kernel")
    return "A B = p Id, A K = 0, full rank, B' census, B rows (0,d) zero for p in {3,5,7}"


# 6 ---------------------------------------------------------------------------


def solvability_predicate(tier: str = FULL_TIER) -> str:
    p = 3
    solvable = 0
    for w in itertools.product(range(-2, 3), repeat=p * (p - 1)):
        fast = has_integer_solution(w, p)
        _require(fast == lattice_search_solvable(w, p, 6), f"w={w}: predicate {fast} disagrees with lattice search")
        solvable += fast
    rng = random.Random(6)
    for _ in range(10**4):
        w = [rng.randint(-20, 20) for _ in range(6)]
        w2 = [x + p * rng.randint(-10, 10) for x in w]
        _require(has_integer_solution(w, p) == has_integer_solution(w2, p), f"mod-p invariance fails at {w}, {w2}")
    return f"15625 vectors agree with lattice search ({solvable} solvable); 10^4 congruent pairs invariant"


# 7 ---------------------------------------------------------------------------


def hypergraph_simplex_structure(tier: str = FULL_TIER) -> str:
    grid = [(3, 3), (3, 5), (4, 2), (4, 3)]
    simplices_seen = 0
    hypergraphs = 0
    for q, N in grid:
        per = N ** ((q - 1) * (q - 2))
        # quick tier samples the largest cell only lightly
        seeds = 2 if tier == QUICK and (q, N) == (4, 3) else 10
        for seed in range(seeds):
            hypergraphs += 1
            H = build_hypergraph(random_label_sets(q, N, 0.5, seed), q, N)
            scanned = enumerate_simplices(H, "scan")
            simplices_seen += len(scanned)
            for s in scanned:
                arr = ModArrangement.from_tuples(s.labels, N)
                _require(is_feasible(arr), f"q={q} N={N} seed={seed}: simplex {s.vertices} has infeasible labels")
                _require(all(t in r for t, r in zip(s.labels, H.R)), f"q={q} N={N}: labels outside product")
            groups = group_by_labels(scanned)
            expected = {a.tuples for a in feasible_in_product(H)}
            _require(set(groups) == expected,
                     f"q={q} N={N} seed={seed}: simplex labels != feasible arrangements in product")
            for labels, fam in groups.items():
                _require(len(fam) == per, f"q={q} N={N} seed={seed}: {labels} has {len(fam)} simplices, want {per}")
                _require(edge_disjoint(fam), f"q={q} N={N} seed={seed}: family {labels} shares an edge")
            extended = enumerate_simplices(H, "extend")
            _require({s.vertices for s in extended} == {s.vertices for s in scanned},
                     f"q={q} N={N} seed={seed}: extension disagrees with scan")
    return f"{simplices_seen} simplices checked over {hypergraphs} hypergraphs"


# 8 ---------------------------------------------------------------------------


def triangle_witnesses(tier: str = FULL_TIER) -> str:
    N = 2
    total = 0
    for seed in range(10):
        R = random_box_set(N, 0.5 + 0.05 * (seed % 5), seed)
        _require(len(R) >= 0.5 * (2 * N + 1) ** 2, f"seed={seed}: density below 0.5")
        G = build_tripartite(R, N)
        count, triangles = count_triangles(G)
        found = {(t.i, t.j, t.k) for t in triangles}
        for t in triangles:
            _require(triangle_is_feasible(t), f"seed={seed}: triangle {t} has infeasible points")
            _require(all(pt in R for pt in t.points), f"seed={seed}: triangle points outside R")
        witnesses = []
        for pt in sorted(R):
            ws = witness_triangles(G, pt)
            _require(len({(t.i, t.j, t.k) for t in ws}) == (2 * N + 1) ** 2, f"seed={seed}: {pt} witness count")
            _require(all((t.i, t.j, t.k) in found for t in ws), f"seed={seed}: witness for {pt} is not a triangle")
            witnesses.extend(ws)
        edges = [e for t in witnesses for e in triangle_edges(t)]
        _require(len(edges) == len(set(edges)), f"seed={seed}: witness triangles share an edge")
        _require(count >= len(R) * (2 * N + 1) ** 2, f"seed={seed}: too few triangles")
        total += count
    return f"{total} triangles enumerated across 10 sets; witnesses exact and edge-disjoint"


# 9 ---------------------------------------------------------------------------


def clt_convergence(tier: str = FULL_TIER) -> str:
    ns = (300, 3000, 30000)
    vals = [scaled_center(2, n) for n in ns]
    limit = limit_constant(2)
    _require(all(a < b for a, b in zip(vals, vals[1:])), f"not strictly increasing: {vals}")
    _require(all(v < limit for v in vals), f"overshoots the limit {limit}: {vals}")
    gap = abs(limit - vals[-1]) / limit
    _require(gap < 0.01, f"final relative gap {gap}")
    return "n*Pr(centre) = " + ", ".join(f"{v:.6f}" for v in vals) + f" -> {limit:.6f} (gap {gap:.2e})"


# 10 --------------------------------------------------------------------------


def progression_free_constructions(tier: str = FULL_TIER) -> str:
    for p in (3, 5):
        params = SpaceParams(p, 2)
        full = SymmetricSet.full(params)
        split = trivial_split([full] * p, p)
        _require(oracle_count(list(split), FULL)[0] == 0, f"p={p}: split of the full space has progressions")
        for seed in range(5):
            sets = random_set_tuple(p, 2, seed)
            _require(oracle_count(list(trivial_split(sets, p)), FULL)[0] == 0, f"p={p} seed={seed}: split not free")
    mus = [Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(9, 10)]
    for seed in range(20):
        p, n = ((3, 9), (5, 4), (3, 6), (5, 6))[seed % 4]
        mu = mus[seed % len(mus)]
        sets = random_set_tuple(p, n, seed)
        report = removal_procedure(sets, mu)
        for j, dens in enumerate(report.removed_density):
            _require(dens <= mu / 2, f"seed={seed} set {j}: removed {dens} > mu/2 = {mu / 2}")
    return "split products progression-free (p in {3,5}, n=2); removal <= mu/2 on 20 instances"


CHECKS: list[tuple[int, str, Callable[[str], str]]] = [
    (1, "restricted oracle equivalence", restricted_oracle_equivalence),
    (2, "full-progression oracle equivalence", full_oracle_equivalence),
    (3, "|P(q,n)| = (2q)^n", progression_total_identity),
    (4, "|E(q,N)| = N^(2(q-1))", feasible_total_identity),
    (5, "matrix suite A, B', B, K", matrix_suite),
    (6, "solvability predicate", solvability_predicate),
    (7, "hypergraph simplex structure", hypergraph_simplex_structure),
    (8, "triangle witnesses", triangle_witnesses),
    (9, "CLT convergence", clt_convergence),
    (10, "progression-free constructions", progression_free_constructions),
]


def run_check(number: int, tier: str = FULL_TIER) -> CheckResult:
    _, name, fn = next(c for c in CHECKS if c[0] == number)
    start = time.perf_counter()
    try:
        detail, ok = fn(tier), True
    except _Fail as exc:
        detail, ok = str(exc), False
    return CheckResult(number, name, ok, detail, time.perf_counter() - start)


def run_all(tier: str = QUICK) -> list[CheckResult]:
    return [run_check(number, tier) for number, _, _ in CHECKS]
