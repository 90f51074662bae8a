"""Exhaustive search over small monoids and small algebras."""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .algebra import FiniteAlgebra, endomorphisms, make_algebra
from .errors import BudgetExceeded, OrderLimitExceeded
from .monoid import FiniteMonoid, canonical_right_mset, canonical_table, idempotents_commute
from .props import bridge_check, check_ri, full_report

MAX_ORDER = 6
LONG_MAX_ORDER = 7


@dataclass
class SearchConfig:
    max_order: int
    predicate: str = "counterexample"  # or "ri_gap"
    workers: int = 1
    allow_long: bool = False
    progress: Callable | None = None  # called with (order, stats) after each order
    sink: Callable | None = None  # called with each counterexample as it is found

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError("max_order must be at least 1")
        if self.predicate not in ("counterexample", "ri_gap"):
            raise ValueError(f"unknown predicate {self.predicate!r}")


# -- enumeration -------------------------------------------------------------------------

def _consistent(T, n, i, j) -> bool:
    """Associativity on every fully known triple that uses the cell (i, j)."""
    v = T[i][j]
    Ti, Tj, Tv = T[i], T[j], T[v]
    for c in range(n):
        # (i j) c == i (j c)
        jc = Tj[c]
        if jc >= 0:
            lhs, rhs = Tv[c], Ti[jc]
            if lhs >= 0 and rhs >= 0 and lhs != rhs:
                return False
    for a in range(n):
        # a (i j) == (a i) j
        ai = T[a][i]
        if ai >= 0:
            lhs, rhs = T[a][v], T[ai][j]
            if lhs >= 0 and rhs >= 0 and lhs != rhs:
                return False
    for a in range(n):
        Ta = T[a]
        for b in range(n):
            # a b == i:  v == (a b) j == a (b j)
            if Ta[b] == i:
                bj = T[b][j]
                if bj >= 0 and Ta[bj] >= 0 and Ta[bj] != v:
                    return False
            # a b == j:  v == i (a b) == (i a) b
            if Ta[b] == j:
                ia = Ti[a]
                if ia >= 0 and T[ia][b] >= 0 and T[ia][b] != v:
                    return False
    return True


def _fill(n: int, first_value: int | None = None) -> list:
    """Canonical tables of all order-n monoids (identity 0), optionally with T[1][1] fixed."""
    T = [[-1] * n for _ in range(n)]
    for x in range(n):
        T[0][x] = x
        T[x][0] = x
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    out = []

    def rec(k):
        if k == len(cells):
            flat = tuple(x for row in T for x in row)
            if canonical_table(FiniteMonoid(n, flat)) == flat:
                out.append(flat)
            return
        i, j = cells[k]
        values = range(n) if (k > 0 or first_value is None) else (first_value,)
        for v in values:
            T[i][j] = v
            if _consistent(T, n, i, j):
                rec(k + 1)
        T[i][j] = -1

    if n == 1:
        return [(0,)]
    rec(0)
    return out


def enumerate_monoids(n: int, workers: int = 1, allow_long: bool = False) -> list:
    """All monoids of order n up to isomorphism, as canonical tables, sorted by table."""
    limit = LONG_MAX_ORDER if allow_long else MAX_ORDER
    if n < 1 or n > limit:
        raise OrderLimitExceeded(f"order {n} is outside [1, {limit}]")
    if n == 1 or workers <= 1:
        tables = _fill(n)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_fill, [n] * n, range(n))
            tables = [t for part in parts for t in part]
    return [FiniteMonoid(n, t) for t in sorted(tables)]


# -- counterexamples ---------------------------------------------------------------------

def is_counterexample(M: FiniteMonoid) -> bool:
    """M acting on itself satisfies RI, UR, RI*, UR* but its idempotents do not commute."""
    if idempotents_commute(M).holds:
        return False
    A = canonical_right_mset(M)
    return full_report(A, limit=None).is_counterexample


@dataclass
class SearchResult:
    found: list
    stats: dict = field(default_factory=dict)
    elapsed: float = 0.0


def find_counterexamples(cfg: SearchConfig) -> SearchResult:
    if cfg.predicate != "counterexample":
        raise ValueError("find_counterexamples needs predicate 'counterexample'")
    limit = LONG_MAX_ORDER if cfg.allow_long else MAX_ORDER
    if cfg.max_order > limit:
        raise OrderLimitExceeded(f"max order {cfg.max_order} exceeds {limit}")
    start = time.perf_counter()
    found, stats = [], {}
    for k in range(1, cfg.max_order + 1):
        t0 = time.perf_counter()
        monoids = enumerate_monoids(k, workers=cfg.workers, allow_long=cfg.allow_long)
        hits = []
        for M in monoids:
            if is_counterexample(M):
                hits.append(M)
                if cfg.sink:
                    cfg.sink(M)
        found.extend(hits)
        stats[k] = {"monoids": len(monoids), "counterexamples": len(hits),
                    "seconds": round(time.perf_counter() - t0, 3)}
        if cfg.progress:
            cfg.progress(k, stats[k])
    return SearchResult(found, stats, time.perf_counter() - start)


# -- RI non-transfer ---------------------------------------------------------------------

@dataclass
class RiGapResult:
    witness: tuple | None  # (algebra, algebra report, canonical-set report)
    checked: int
    exhaustive: bool


def _algebras(n: int, n_unary: int, n_const: int):
    names = [f"u{i}" for i in range(n_unary)] + [f"c{i}" for i in range(n_const)]
    unary = itertools.product(itertools.product(range(n), repeat=n), repeat=n_unary)
    for tabs in unary:
        for consts in itertools.product(range(n), repeat=n_const):
            ops = [(nm, 1, list(t)) for nm, t in zip(names, tabs)]
            ops += [(nm, 0, [c]) for nm, c in zip(names[n_unary:], consts)]
            yield make_algebra(n, ops)


def _random_algebra(rng: random.Random, n: int, n_unary: int, n_const: int) -> FiniteAlgebra:
    ops = [(f"u{i}", 1, [rng.randrange(n) for _ in range(n)]) for i in range(n_unary)]
    ops += [(f"c{i}", 0, [rng.randrange(n)]) for i in range(n_const)]
    return make_algebra(n, ops)


def _ri_gap(A: FiniteAlgebra):
    end = endomorphisms(A, limit=None)
    if check_ri(A, end).holds:
        return None
    X = canonical_right_mset(end.monoid)
    rep_x = full_report(X, limit=None)
    if not rep_x.ri.holds:
        return None
    audit = bridge_check(A, limit=None)  # raises on any stated-direction violation
    return (A, audit.algebra_report, rep_x)


def find_ri_gap_witness(max_size: int = 3, max_unary: int = 3, max_constants: int = 2,
                        max_candidates: int = 20000, seed: int | None = None) -> RiGapResult:
    """Look for a finite algebra failing RI whose endomorphism monoid, acting on
    itself, satisfies RI.

    Signatures with at most ``max_unary`` unary operations and ``max_constants``
    constants are scanned size by size; a (size, signature) slice is enumerated
    exhaustively when it fits in the remaining candidate budget and sampled
    with ``seed`` otherwise.
    """
    if max_size > 6 or max_unary > 3 or max_constants > 2:
        raise BudgetExceeded("budget is capped at size 6, 3 unary operations, 2 constants")
    rng = random.Random(seed)
    checked = 0
    exhaustive = True
    for n in range(1, max_size + 1):
        for u in range(max_unary + 1):
            for c in range(max_constants + 1):
                space = n ** (n * u + c)
                remaining = max_candidates - checked
                if remaining <= 0:
                    return RiGapResult(None, checked, False)
                if space <= remaining:
                    candidates = _algebras(n, u, c)
                else:
                    exhaustive = False
                    share = max(1, remaining // 4)
                    candidates = (_random_algebra(rng, n, u, c) for _ in range(share))
                for A in candidates:
                    checked += 1
                    hit = _ri_gap(A)
                    if hit is not None:
                        return RiGapResult(hit, checked, exhaustive)
    return RiGapResult(None, checked, exhaustive)
