"""Generators for the example families: sets, pointed sets, G-sets, abelian groups,
monoids acting on themselves, plus a few named builtins.

Every generator validates the equational laws of its family before returning.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .algebra import FiniteAlgebra, make_algebra
from .errors import AlgebraError, FitzError
from .monoid import FiniteMonoid, canonical_right_mset, load_monoid


@dataclass(frozen=True)
class AbelianGroup:
    name: str
    order: int
    add: tuple  # flat table
    labels: tuple

    def plus(self, a: int, b: int) -> int:
        return self.add[a * self.order + b]

    def neg(self, a: int) -> int:
        return next(b for b in range(self.order) if self.plus(a, b) == 0)


def cyclic_product(*moduli: int) -> AbelianGroup:
    """Z/m1 x ... x Z/mk with elements in mixed-radix (row-major) order."""
    moduli = tuple(moduli) or (1,)
    elems = list(itertools.product(*[range(m) for m in moduli]))
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    add = []
    for a in elems:
        for b in elems:
            add.append(index[tuple((x + y) % m for x, y, m in zip(a, b, moduli))])
    name = "x".join(f"Z{m}" for m in moduli)
    labels = tuple("".join(str(x) for x in e) if len(moduli) > 1 else str(e[0]) for e in elems)
    return AbelianGroup(name, n, tuple(add), labels)


ABELIAN_GROUPS = {
    "Z1": (1,),
    "Z2": (2,),
    "Z3": (3,),
    "Z4": (4,),
    "Z2xZ2": (2, 2),
    "Z5": (5,),
    "Z6": (6,),
    "Z7": (7,),
    "Z8": (8,),
    "Z2xZ4": (2, 4),
    "Z2xZ2xZ2": (2, 2, 2),
}

GSET_GROUPS = ("Z2", "Z3", "Z4", "Z2xZ2")


def group(name: str) -> AbelianGroup:
    try:
        return cyclic_product(*ABELIAN_GROUPS[name])
    except KeyError:
        raise FitzError(f"unknown group {name!r}; known: {', '.join(ABELIAN_GROUPS)}") from None


def subgroups(G: AbelianGroup) -> list:
    """All subgroups as sorted tuples, ordered by (size, members)."""
    out = set()
    for gens in itertools.chain.from_iterable(
        itertools.combinations(range(G.order), r) for r in range(min(3, G.order) + 1)
    ):
        H = {0}
        frontier = set(gens)
        while frontier:
            H |= frontier
            frontier = {G.plus(a, b) for a in H for b in H} - H
        out.add(tuple(sorted(H)))
    return sorted(out, key=lambda h: (len(h), h))


# -- law validators --------------------------------------------------------------------

def check_group_laws(A: FiniteAlgebra) -> None:
    n = A.size
    add, neg, zero = A.op("+"), A.op("-"), int(A.op("0"))
    r = range(n)
    for a, b, c in itertools.product(r, r, r):
        if add[add[a, b], c] != add[a, add[b, c]]:
            raise AlgebraError(f"+ is not associative at {(a, b, c)}")
    for a, b in itertools.product(r, r):
        if add[a, b] != add[b, a]:
            raise AlgebraError(f"+ is not commutative at {(a, b)}")
    for a in r:
        if add[a, zero] != a or add[a, neg[a]] != zero:
            raise AlgebraError(f"0 or - misbehaves at {a}")


def check_action_laws(A: FiniteAlgebra, M: FiniteMonoid, opnames) -> None:
    """x * 1 = x and (x * m) * k = x * (m k), one unary operation per monoid element."""
    ops = [A.op(nm) for nm in opnames]
    for x in range(A.size):
        if ops[0][x] != x:
            raise AlgebraError(f"identity does not act trivially on {x}")
        for m, k in itertools.product(range(M.order), repeat=2):
            if ops[k][ops[m][x]] != ops[M.mul(m, k)][x]:
                raise AlgebraError(f"action law fails at x={x}, m={m}, k={k}")


# -- generators -------------------------------------------------------------------------

def gen_set(n: int) -> FiniteAlgebra:
    return make_algebra(n, [], names=[chr(ord("a") + i) for i in range(n)])


def gen_pointed_set(n: int) -> FiniteAlgebra:
    if n < 1:
        raise AlgebraError("a pointed set needs its point")
    names = ["*"] + [chr(ord("a") + i) for i in range(n - 1)]
    return make_algebra(n, [("*", 0, [0])], names=names)


def group_as_monoid(G: AbelianGroup) -> FiniteMonoid:
    return FiniteMonoid(G.order, G.add, G.labels)


def gen_gset(G: AbelianGroup | str, stabilizers) -> FiniteAlgebra:
    """Disjoint union of the orbits G/H for the given stabilizer subgroups H.

    Each stabilizer may be a subgroup (tuple of element indices) or an orbit
    size, which is accepted when exactly one subgroup has that index.
    """
    if isinstance(G, str):
        G = group(G)
    subs = subgroups(G)
    elements, names = [], []
    for k, H in enumerate(stabilizers):
        if isinstance(H, int):
            match = [S for S in subs if G.order // len(S) == H]
            if len(match) != 1:
                raise AlgebraError(f"orbit size {H} is ambiguous or impossible for {G.name}; give the stabilizer")
            H = match[0]
        H = tuple(sorted(H))
        if H not in subs:
            raise AlgebraError(f"{H} is not a subgroup of {G.name}")
        cosets = []
        for g in range(G.order):
            c = frozenset(G.plus(g, h) for h in H)
            if c not in cosets:
                cosets.append(c)
        for c in cosets:
            elements.append((k, c))
            names.append(f"{G.labels[min(c)]}+H{k}")
    index = {e: i for i, e in enumerate(elements)}
    ops = []
    for g in range(G.order):
        tab = [index[(k, frozenset(G.plus(x, g) for x in c))] for k, c in elements]
        ops.append((G.labels[g], 1, tab))
    A = make_algebra(len(elements), ops, names=names)
    check_action_laws(A, group_as_monoid(G), [G.labels[g] for g in range(G.order)])
    return A


def all_gsets(G: AbelianGroup | str, max_size: int):
    """Every G-set with at most ``max_size`` points, up to isomorphism (size 0 included)."""
    if isinstance(G, str):
        G = group(G)
    subs = subgroups(G)
    idx = {H: G.order // len(H) for H in subs}
    # multisets of orbit types with total size <= max_size
    def rec(start, remaining):
        yield ()
        for i in range(start, len(subs)):
            s = idx[subs[i]]
            if s <= remaining:
                for rest in rec(i, remaining - s):
                    yield (subs[i],) + rest
    for combo in rec(0, max_size):
        yield combo, gen_gset(G, list(combo))


def gen_abelian(G: AbelianGroup | str) -> FiniteAlgebra:
    if isinstance(G, str):
        G = group(G)
    n = G.order
    A = make_algebra(
        n,
        [("+", 2, list(G.add)), ("-", 1, [G.neg(a) for a in range(n)]), ("0", 0, [0])],
        names=list(G.labels),
    )
    check_group_laws(A)
    return A


def gen_canonical_mset(M: FiniteMonoid) -> FiniteAlgebra:
    A = canonical_right_mset(M)
    check_action_laws(A, M, A.signature.names)
    return A


# -- builtins ----------------------------------------------------------------------------

def shipped_monoid() -> FiniteMonoid:
    text = resources.files("fitzprops").joinpath("data/fitzgerald_s.json").read_text(encoding="utf-8")
    return load_monoid(text)


def two_element_semilattice() -> FiniteMonoid:
    return FiniteMonoid(2, (0, 1, 1, 1), ("1", "z"))


def builtin(name: str) -> FiniteAlgebra:
    if name == "fitzgerald":
        return gen_canonical_mset(shipped_monoid())
    if name == "singleton":
        return make_algebra(1, [], names=["a"])
    if name == "empty":
        return gen_set(0)
    raise FitzError(f"unknown builtin {name!r}; known: fitzgerald, singleton, empty")


BUILTINS = ("fitzgerald", "singleton", "empty")


def parse_corpus_spec(spec: str) -> FiniteAlgebra:
    """``set:N``, ``pointed_set:N``, ``abelian:G``, ``gset:G:ORBITS`` (comma-separated
    orbit sizes, or ``size@k`` to pick the k-th subgroup of that index)."""
    parts = spec.split(":")
    family = parts[0]
    try:
        if family == "set":
            return gen_set(int(parts[1]))
        if family == "pointed_set":
            return gen_pointed_set(int(parts[1]))
        if family == "abelian":
            return gen_abelian(parts[1])
        if family == "gset":
            G = group(parts[1])
            orbits = []
            if len(parts) > 2 and parts[2]:
                subs = subgroups(G)
                for tok in parts[2].split(","):
                    if "@" in tok:
                        size, k = (int(x) for x in tok.split("@"))
                        orbits.append([S for S in subs if G.order // len(S) == size][k])
                    else:
                        orbits.append(int(tok))
            return gen_gset(G, orbits)
    except (IndexError, ValueError) as exc:
        raise FitzError(f"bad corpus spec {spec!r}: {exc}") from None
    raise FitzError(f"unknown corpus family {family!r}")


def _orbit_token(G: AbelianGroup, H) -> str:
    size = G.order // len(H)
    same = [S for S in subgroups(G) if G.order // len(S) == size]
    return f"{size}@{same.index(tuple(H))}"


def corpus(max_size: int = 4, include_monoids: bool = False):
    """Yield (label, algebra) for every family member of size <= max_size."""
    for n in range(0, max_size + 1):
        yield f"set:{n}", gen_set(n)
    for n in range(1, max_size + 1):
        yield f"pointed_set:{n}", gen_pointed_set(n)
    for gname in GSET_GROUPS:
        G = group(gname)
        for combo, A in all_gsets(G, max_size):
            if combo:
                desc = ",".join(_orbit_token(G, H) for H in combo)
                yield f"gset:{gname}:{desc}", A
    for gname, mods in ABELIAN_GROUPS.items():
        if int(np.prod(mods)) <= max_size:
            yield f"abelian:{gname}", gen_abelian(gname)
    for b in BUILTINS:
        A = builtin(b)
        if A.size <= max_size:
            yield f"builtin:{b}", A
    if include_monoids:
        from .search import enumerate_monoids
        for n in range(1, max_size + 1):
            for i, M in enumerate(enumerate_monoids(n)):
                yield f"mset:{n}:{i}", gen_canonical_mset(M)
