"""Finite monoids stored as flat multiplication tables.

Element 0 is always the identity.  ``table[i * order + j]`` is the product
``i * j``.  For endomorphism monoids the product ``s * t`` is the composite
map ``x -> s(t(x))``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .errors import IndexOutOfRange, MonoidError, NoIdentity, NotAssociative, ParentMismatch


class Verdict(NamedTuple):
    holds: bool
    witness: object = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    order: int
    table: tuple
    names: tuple | None = None

    identity = 0

    def __eq__(self, other):
        if not isinstance(other, FiniteMonoid):
            return NotImplemented
        return self.order == other.order and self.table == other.table

    def __hash__(self):
        return hash((self.order, self.table))

    def __repr__(self):
        return f"FiniteMonoid(order={self.order})"

    def mul(self, i: int, j: int) -> int:
        return self.table[i * self.order + j]

    def product(self, *elements: int) -> int:
        x = 0
        for y in elements:
            x = self.table[x * self.order + y]
        return x

    def power(self, x: int, n: int) -> int:
        p = 0
        for _ in range(n):
            p = self.table[p * self.order + x]
        return p

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.table, dtype=np.int64).reshape(self.order, self.order)
        a.flags.writeable = False
        return a

    def name(self, i: int) -> str:
        if self.names is not None:
            return self.names[i]
        return "1" if i == 0 else f"m{i}"

    def index(self, name: str) -> int:
        if self.names is not None and name in self.names:
            return self.names.index(name)
        if name == "1":
            return 0
        return int(name.lstrip("m"))

    @property
    def rows(self) -> list:
        n = self.order
        return [list(self.table[i * n:(i + 1) * n]) for i in range(n)]


def verify_monoid_axioms(table: Sequence, order: int | None = None, names=None) -> FiniteMonoid:
    """Validate a multiplication table and wrap it as a FiniteMonoid.

    ``table`` may be flat (length ``order**2``) or a list of rows.  Raises the
    first violated axiom: range, then identity, then associativity (with the
    lexicographically least failing triple).
    """
    flat = list(table)
    if flat and isinstance(flat[0], (list, tuple, np.ndarray)):
        flat = [int(x) for row in flat for x in row]
    else:
        flat = [int(x) for x in flat]
    if order is None:
        order = int(round(len(flat) ** 0.5))
    if order < 1:
        raise MonoidError("a monoid needs at least one element")
    if len(flat) != order * order:
        raise MonoidError(f"table has {len(flat)} entries, expected {order * order}")
    for pos, v in enumerate(flat):
        if not 0 <= v < order:
            raise IndexOutOfRange(pos, v, order)
    t = np.array(flat, dtype=np.int64).reshape(order, order)
    for i in range(order):
        if t[0, i] != i or t[i, 0] != i:
            raise NoIdentity(i)
    left = t[t, :]  # left[i, j, k] = t[t[i, j], k]
    right = t[np.arange(order)[:, None, None], t[None, :, :]]  # t[i, t[j, k]]
    bad = np.argwhere(left != right)
    if bad.size:
        i, j, k = (int(x) for x in bad[0])
        raise NotAssociative(i, j, k)
    if names is not None:
        names = tuple(str(x) for x in names)
        if len(names) != order:
            raise MonoidError(f"{len(names)} names given for {order} elements")
    return FiniteMonoid(order, tuple(flat), names)


def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(1, (0,), ("1",))


def idempotents(M: FiniteMonoid) -> list:
    return [x for x in range(M.order) if M.mul(x, x) == x]


def idempotents_commute(M: FiniteMonoid) -> Verdict:
    """True iff all idempotents commute; otherwise the least non-commuting pair."""
    ids = idempotents(M)
    for x, y in itertools.combinations(ids, 2):
        if M.mul(x, y) != M.mul(y, x):
            return Verdict(False, (x, y))
    return Verdict(True, None)


@dataclass(frozen=True)
class IdealSubset:
    parent: FiniteMonoid
    members: frozenset
    side: str
    generator: int

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members


def ideal(M: FiniteMonoid, a: int, side: str = "right") -> IdealSubset:
    """The principal ideal aM (side='right') or Ma (side='left')."""
    if not 0 <= a < M.order:
        raise IndexOutOfRange(a, a, M.order)
    if side == "right":
        members = frozenset(M.mul(a, s) for s in range(M.order))
    elif side == "left":
        members = frozenset(M.mul(s, a) for s in range(M.order))
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return IdealSubset(M, members, side, a)


def intersect_ideals(x: IdealSubset, y: IdealSubset) -> frozenset:
    if x.parent != y.parent:
        raise ParentMismatch("ideals belong to different monoids")
    if x.side != y.side:
        raise ParentMismatch(f"cannot intersect a {x.side} ideal with a {y.side} ideal")
    return x.members & y.members


class RiSufficiency(NamedTuple):
    holds: bool
    exponents: dict  # (x, y) with x <= y idempotent -> least n, or None

    def __bool__(self):
        return self.holds


def ri_sufficient(M: FiniteMonoid) -> RiSufficiency:
    """For each pair of idempotents x <= y, find the least n with (xy)^n == (yx)^n.

    The pair sequence ((xy)^n, (yx)^n) is eventually periodic with
    preperiod + period <= order**2, so a search up to that bound is
    exhaustive; it stops early once a pair repeats.
    """
    ids = idempotents(M)
    bound = M.order * M.order
    exponents = {}
    for x, y in itertools.combinations_with_replacement(ids, 2):
        a, b = M.mul(x, y), M.mul(y, x)
        pa, pb = a, b
        found = None
        seen = set()
        for n in range(1, bound + 1):
            if pa == pb:
                found = n
                break
            if (pa, pb) in seen:
                break
            seen.add((pa, pb))
            pa, pb = M.mul(pa, a), M.mul(pb, b)
        exponents[(x, y)] = found
    return RiSufficiency(all(v is not None for v in exponents.values()), exponents)


def canonical_right_mset(M: FiniteMonoid):
    """M acting on itself by right multiplication: one unary operation per element."""
    from .algebra import FiniteAlgebra, Signature

    n = M.order
    t = M.array
    opnames = tuple("*" + M.name(m) for m in range(n))
    sig = Signature(tuple((nm, 1) for nm in opnames))
    tables = tuple(tuple(int(v) for v in t[:, m]) for m in range(n))
    names = tuple(M.name(i) for i in range(n))
    return FiniteAlgebra(n, sig, tables, names)


# -- isomorphism and canonical forms -----------------------------------------

def _element_invariants(M: FiniteMonoid) -> list:
    t = M.array
    n = M.order
    inv = []
    for x in range(n):
        right = len(set(t[x].tolist()))
        left = len(set(t[:, x].tolist()))
        # index + period of the cyclic subsemigroup generated by x
        seen = {}
        p, k = x, 1
        while p not in seen:
            seen[p] = k
            p = int(t[p, x])
            k += 1
        inv.append((int(t[x, x]) == x, right, left, len(seen), k - seen[p]))
    return inv


def monoid_isomorphic(M: FiniteMonoid, N: FiniteMonoid) -> Verdict:
    """Decide M ~= N; the witness is a tuple phi with phi[x] in N for x in M."""
    if M.order != N.order:
        return Verdict(False, None)
    n = M.order
    im, iN = _element_invariants(M), _element_invariants(N)
    if sorted(im) != sorted(iN):
        return Verdict(False, None)
    tm, tn = M.array.tolist(), N.array.tolist()
    # assign high-information (rare invariant) elements first
    freq = {}
    for v in im:
        freq[v] = freq.get(v, 0) + 1
    order = sorted(range(1, n), key=lambda x: (freq[im[x]], x))
    phi = [-1] * n
    phi[0] = 0
    used = [False] * n
    used[0] = True
    assigned = [0]

    def consistent(x):
        px = phi[x]
        for y in assigned:
            py = phi[y]
            for a, b, pa, pb in ((x, y, px, py), (y, x, py, px)):
                z = tm[a][b]
                if phi[z] >= 0 and phi[z] != tn[pa][pb]:
                    return False
        return True

    def extend(pos):
        if pos == len(order):
            return True
        x = order[pos]
        for c in range(1, n):
            if used[c] or iN[c] != im[x]:
                continue
            phi[x] = c
            used[c] = True
            assigned.append(x)
            if consistent(x) and extend(pos + 1):
                return True
            assigned.pop()
            used[c] = False
            phi[x] = -1
        return False

    if extend(0):
        return Verdict(True, tuple(phi))
    return Verdict(False, None)


@lru_cache(maxsize=None)
def _identity_fixing_perms(n: int) -> np.ndarray:
    perms = [(0,) + p for p in itertools.permutations(range(1, n))]
    return np.array(perms, dtype=np.int64).reshape(len(perms), n)


def canonical_table(M: FiniteMonoid) -> tuple:
    """Shortlex-least flattened table over all identity-fixing relabelings.

    A permutation p lists old elements in their new order, so the relabeled
    table is ``new[i, j] = inv[old[p[i], p[j]]]``.
    """
    n = M.order
    if n <= 2:
        return M.table
    P = _identity_fixing_perms(n)
    inv = np.argsort(P, axis=1)
    t = M.array
    rel = t[P[:, :, None], P[:, None, :]]  # old products in new positions
    rel = np.take_along_axis(inv, rel.reshape(len(P), -1), axis=1)
    best = rel[np.lexsort(rel.T[::-1])[0]]
    return tuple(int(v) for v in best)


def canonical_form(M: FiniteMonoid) -> FiniteMonoid:
    return FiniteMonoid(M.order, canonical_table(M))


def is_canonical(M: FiniteMonoid) -> bool:
    return canonical_table(M) == M.table


# -- JSON --------------------------------------------------------------------

def monoid_to_dict(M: FiniteMonoid) -> dict:
    d = {"order": M.order, "identity": 0, "table": list(M.table)}
    if M.names is not None:
        d["names"] = list(M.names)
    return d


def dump_monoid(M: FiniteMonoid) -> str:
    return json.dumps(monoid_to_dict(M))


def monoid_from_dict(d: dict) -> FiniteMonoid:
    if d.get("identity", 0) != 0:
        raise MonoidError("identity must be element 0")
    try:
        return verify_monoid_axioms(d["table"], int(d["order"]), d.get("names"))
    except KeyError as exc:
        raise MonoidError(f"monoid JSON is missing key {exc}") from None


def load_monoid(text: str) -> FiniteMonoid:
    return monoid_from_dict(json.loads(text))
