"""Finite algebras over finitary signatures.

An operation of arity k on a carrier of size n is stored as a flat table of
length n**k; the tuple (a1, ..., ak) sits at index sum(ai * n**(k - i)), i.e.
numpy C order.  Homomorphisms and endomorphisms are tuples of images.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    AlgebraError,
    EmptyCarrierWithConstants,
    EntryOutOfRange,
    IncompatiblePartition,
    NotASubalgebra,
    ParentMismatch,
    SignatureMismatch,
    SizeLimitExceeded,
    TableLengthMismatch,
)
from .monoid import FiniteMonoid, Verdict

DEFAULT_ENDO_LIMIT = 10


@dataclass(frozen=True)
class Signature:
    operations: tuple  # ((name, arity), ...)

    def __post_init__(self):
        ops = tuple((str(nm), int(k)) for nm, k in self.operations)
        object.__setattr__(self, "operations", ops)
        names = [nm for nm, _ in ops]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate operation names in signature: {names}")
        if any(k < 0 for _, k in ops):
            raise AlgebraError("arities must be nonnegative")

    def __len__(self):
        return len(self.operations)

    def __iter__(self):
        return iter(self.operations)

    @property
    def arities(self):
        return tuple(k for _, k in self.operations)

    @property
    def names(self):
        return tuple(nm for nm, _ in self.operations)


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    size: int
    signature: Signature
    tables: tuple
    names: tuple | None = None

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (self.size, self.signature, self.tables) == (other.size, other.signature, other.tables)

    def __hash__(self):
        return hash((self.size, self.signature, self.tables))

    def __repr__(self):
        ops = ", ".join(f"{nm}/{k}" for nm, k in self.signature)
        return f"FiniteAlgebra(size={self.size}, ops=[{ops}])"

    @cached_property
    def arrays(self) -> tuple:
        out = []
        for (_, k), tab in zip(self.signature, self.tables):
            a = np.array(tab, dtype=np.int64).reshape((self.size,) * k)
            a.flags.writeable = False
            out.append(a)
        return tuple(out)

    @cached_property
    def unary_stack(self) -> np.ndarray:
        """All unary tables stacked into one (ops, size) array."""
        rows = [a for a, k in zip(self.arrays, self.signature.arities) if k == 1]
        if not rows:
            return np.zeros((0, self.size), dtype=np.int64)
        return np.stack(rows)

    @property
    def constants(self) -> list:
        return [int(a) for a, k in zip(self.arrays, self.signature.arities) if k == 0]

    def op(self, name: str) -> np.ndarray:
        return self.arrays[self.signature.names.index(name)]

    def apply(self, name: str, *args: int) -> int:
        a = self.op(name)
        return int(a[tuple(args)]) if args else int(a)

    def name(self, x: int) -> str:
        if self.names is not None:
            return self.names[x]
        return str(x)


def validate_algebra(tables: Sequence, signature, size: int, names=None) -> FiniteAlgebra:
    if not isinstance(signature, Signature):
        signature = Signature(tuple(signature))
    size = int(size)
    if size < 0:
        raise AlgebraError("carrier size must be nonnegative")
    if len(tables) != len(signature):
        raise TableLengthMismatch(f"{len(tables)} tables for {len(signature)} operations")
    if size == 0 and any(k == 0 for k in signature.arities):
        raise EmptyCarrierWithConstants("an empty carrier cannot interpret constants")
    clean = []
    for (nm, k), tab in zip(signature, tables):
        tab = [int(v) for v in np.asarray(tab).ravel()]
        if len(tab) != size ** k:
            raise TableLengthMismatch(f"operation {nm!r} has {len(tab)} entries, expected {size ** k}")
        for v in tab:
            if not 0 <= v < size:
                raise EntryOutOfRange(f"operation {nm!r} has entry {v} outside [0, {size})")
        clean.append(tuple(tab))
    if names is not None:
        names = tuple(str(x) for x in names)
        if len(names) != size:
            raise AlgebraError(f"{len(names)} names for {size} elements")
    return FiniteAlgebra(size, signature, tuple(clean), names)


def make_algebra(size: int, ops, names=None) -> FiniteAlgebra:
    """Build from ``[(name, arity, table), ...]``; tables may be nested or flat."""
    ops = list(ops)
    sig = Signature(tuple((nm, k) for nm, k, _ in ops))
    return validate_algebra([t for _, _, t in ops], sig, size, names)


# -- homomorphisms -------------------------------------------------------------

class _HomSearch:
    """Depth-first assignment of images in carrier order.

    Whenever every argument of an operation tuple has an image, the image of
    the result is forced; a clash with an existing image prunes the branch.
    """

    def __init__(self, A: FiniteAlgebra, B: FiniteAlgebra):
        if A.signature != B.signature:
            raise SignatureMismatch("homomorphisms need a common signature")
        self.A, self.B = A, B
        self.n, self.m = A.size, B.size
        self.UA, self.UB = A.unary_stack, B.unary_stack
        self.higher = [
            (ta, tb, k)
            for ta, tb, k in zip(A.arrays, B.arrays, A.signature.arities)
            if k >= 2
        ]
        self.consts = [
            (int(ta), int(tb))
            for ta, tb, k in zip(A.arrays, B.arrays, A.signature.arities)
            if k == 0
        ]

    def propagate(self, f: np.ndarray) -> bool:
        while True:
            changed = False
            dom = np.flatnonzero(f >= 0)
            if not dom.size:
                return True
            img = f[dom]
            checks = []
            if self.UA.shape[0]:
                checks.append((self.UA[:, dom], self.UB[:, img]))
            for ta, tb, k in self.higher:
                checks.append((ta[np.ix_(*[dom] * k)], tb[np.ix_(*[img] * k)]))
            for res, req in checks:
                res, req = res.ravel(), req.ravel()
                cur = f[res]
                if np.any((cur >= 0) & (cur != req)):
                    return False
                new = cur < 0
                if new.any():
                    f[res[new]] = req[new]
                    changed = True
            if not changed:
                return True

    def start(self, fixed=None):
        f = np.full(self.n, -1, dtype=np.int64)
        for ca, cb in self.consts:
            if f[ca] >= 0 and f[ca] != cb:
                return None
            f[ca] = cb
        for a, b in (fixed or {}).items():
            if f[a] >= 0 and f[a] != b:
                return None
            f[a] = b
        if not self.propagate(f):
            return None
        return f

    def run(self, fixed=None) -> Iterator[tuple]:
        if self.n == 0:
            yield ()
            return
        if self.m == 0:
            return
        f = self.start(fixed)
        if f is None:
            return
        yield from self._dfs(f)

    def _dfs(self, f):
        free = np.flatnonzero(f < 0)
        if not free.size:
            yield tuple(int(v) for v in f)
            return
        a = free[0]
        for v in range(self.m):
            g = f.copy()
            g[a] = v
            if self.propagate(g):
                yield from self._dfs(g)


def homomorphisms(A: FiniteAlgebra, B: FiniteAlgebra, fixed=None) -> Iterator[tuple]:
    """All homomorphisms A -> B as image tuples, in lexicographic order.

    ``fixed`` optionally pins some images ({a: b}).
    """
    return _HomSearch(A, B).run(fixed)


def is_homomorphism(f: Sequence, A: FiniteAlgebra, B: FiniteAlgebra) -> Verdict:
    """Check f(op_A(a...)) == op_B(f(a)...) everywhere; witness is (op name, args)."""
    if A.signature != B.signature:
        raise SignatureMismatch("homomorphisms need a common signature")
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (A.size,) or (f.size and (f.min() < 0 or f.max() >= B.size)):
        raise AlgebraError("map does not send the carrier of A into the carrier of B")
    for (nm, k), ta, tb in zip(A.signature, A.arrays, B.arrays):
        if k == 0:
            if f[int(ta)] != int(tb):
                return Verdict(False, (nm, ()))
            continue
        bad = np.argwhere(f[ta] != tb[np.ix_(*[f] * k)])
        if bad.size:
            return Verdict(False, (nm, tuple(int(x) for x in bad[0])))
    return Verdict(True, None)


@dataclass(frozen=True)
class EndoMap:
    parent: FiniteAlgebra = field(compare=False, repr=False)
    images: tuple

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __len__(self):
        return len(self.images)

    def compose(self, other: "EndoMap") -> "EndoMap":
        """self * other: apply other first."""
        return EndoMap(self.parent, tuple(self.images[y] for y in other.images))

    def is_idempotent(self) -> bool:
        return all(self.images[y] == y for y in self.images)


@dataclass(frozen=True, eq=False)
class EndMonoid:
    algebra: FiniteAlgebra
    maps: tuple
    monoid: FiniteMonoid

    def __len__(self):
        return len(self.maps)

    @cached_property
    def index(self) -> dict:
        return {m.images: i for i, m in enumerate(self.maps)}

    def idempotent_indices(self) -> list:
        t = self.monoid
        return [i for i in range(t.order) if t.mul(i, i) == i]


def _monoid_of_maps(maps: list, size: int) -> FiniteMonoid:
    k = len(maps)
    if size == 0:
        return FiniteMonoid(1, (0,))
    F = np.array(maps, dtype=np.int64).reshape(k, size)
    if size > 15:  # base-size codes would overflow int64
        return _monoid_of_maps_bytes(F)
    weights = size ** np.arange(size - 1, -1, -1, dtype=np.int64)
    codes = F @ weights  # each map as a base-size integer
    order = np.argsort(codes)
    sorted_codes = codes[order]
    table = np.empty((k, k), dtype=np.int64)
    for s in range(k):
        comp = F[s][F] @ weights  # row t is s o t
        pos = np.searchsorted(sorted_codes, comp)
        if np.any(pos >= k) or np.any(sorted_codes[np.minimum(pos, k - 1)] != comp):
            raise AlgebraError("map set is not closed under composition")
        table[s] = order[pos]
    return FiniteMonoid(k, tuple(table.ravel().tolist()))


def _monoid_of_maps_bytes(F: np.ndarray) -> FiniteMonoid:
    k = len(F)
    lookup = {F[i].tobytes(): i for i in range(k)}
    table = []
    for s in range(k):
        for row in np.ascontiguousarray(F[s][F]):
            try:
                table.append(lookup[row.tobytes()])
            except KeyError:
                raise AlgebraError("map set is not closed under composition") from None
    return FiniteMonoid(k, tuple(table))


def endomorphisms(A: FiniteAlgebra, limit: int | None = DEFAULT_ENDO_LIMIT) -> EndMonoid:
    """All endomorphisms of A, identity first, with their abstract monoid."""
    if limit is not None and A.size > limit:
        raise SizeLimitExceeded(A.size, limit)
    ident = tuple(range(A.size))
    found = [m for m in homomorphisms(A, A) if m != ident]
    maps = [ident] + found
    monoid = _monoid_of_maps(maps, A.size)
    return EndMonoid(A, tuple(EndoMap(A, m) for m in maps), monoid)


def hom_set(A: FiniteAlgebra, B: FiniteAlgebra) -> list:
    return list(homomorphisms(A, B))


def algebras_isomorphic(A: FiniteAlgebra, B: FiniteAlgebra) -> Verdict:
    if A.size != B.size or A.signature != B.signature:
        return Verdict(False, None)
    for h in homomorphisms(A, B):
        if len(set(h)) == A.size:
            return Verdict(True, h)
    return Verdict(False, None)


# -- subalgebras ---------------------------------------------------------------

@dataclass(frozen=True)
class Subalgebra:
    parent: FiniteAlgebra = field(compare=False, repr=False)
    members: frozenset

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members

    def sorted(self) -> tuple:
        return tuple(sorted(self.members))


def _closure_step(A: FiniteAlgebra, members: np.ndarray) -> set:
    out = set(A.constants)
    if not members.size:
        return out
    for a, k in zip(A.arrays, A.signature.arities):
        if k >= 1:
            out.update(np.unique(a[np.ix_(*[members] * k)]).tolist())
    return out


def is_closed(A: FiniteAlgebra, subset) -> bool:
    s = set(subset)
    return _closure_step(A, np.array(sorted(s), dtype=np.int64)) <= s


def subalgebra_closure(A: FiniteAlgebra, seed=()) -> Subalgebra:
    s = set(int(x) for x in seed)
    if any(not 0 <= x < A.size for x in s):
        raise AlgebraError("seed is not contained in the carrier")
    while True:
        new = _closure_step(A, np.array(sorted(s), dtype=np.int64)) - s
        if not new:
            return Subalgebra(A, frozenset(s))
        s |= new


def as_subalgebra(A: FiniteAlgebra, subset) -> Subalgebra:
    s = frozenset(int(x) for x in subset)
    if not is_closed(A, s):
        raise NotASubalgebra(f"{sorted(s)} is not closed under the operations")
    return Subalgebra(A, s)


def image_subalgebra(f: EndoMap) -> Subalgebra:
    members = frozenset(f.images)
    assert is_closed(f.parent, members), "image of a homomorphism must be closed"
    return Subalgebra(f.parent, members)


def induced_algebra(R: Subalgebra) -> tuple:
    """The algebra on R's members (relabelled 0..|R|-1) and its embedding into the parent."""
    A = R.parent
    emb = np.array(sorted(R.members), dtype=np.int64)
    relabel = np.full(A.size, -1, dtype=np.int64)
    relabel[emb] = np.arange(len(emb))
    tables = []
    for a, k in zip(A.arrays, A.signature.arities):
        sub = a[np.ix_(*[emb] * k)] if k else a
        tables.append(relabel[sub].ravel().tolist() if k else [int(relabel[sub])])
    names = None if A.names is None else tuple(A.names[i] for i in emb)
    B = validate_algebra(tables, A.signature, len(emb), names)
    return B, tuple(int(x) for x in emb)


# -- congruences ---------------------------------------------------------------

def canonical_labels(labels) -> tuple:
    """Renumber block ids by first occurrence."""
    seen = {}
    return tuple(seen.setdefault(int(x), len(seen)) for x in labels)


@dataclass(frozen=True)
class Congruence:
    parent: FiniteAlgebra = field(compare=False, repr=False)
    block_ids: tuple

    @property
    def num_blocks(self) -> int:
        return max(self.block_ids) + 1 if self.block_ids else 0

    def blocks(self) -> list:
        out = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.block_ids):
            out[b].append(x)
        return out

    def related(self, a: int, b: int) -> bool:
        return self.block_ids[a] == self.block_ids[b]

    def refines(self, other: "Congruence") -> bool:
        """True iff self <= other in the congruence lattice."""
        return all(
            other.block_ids[x] == other.block_ids[blk[0]]
            for blk in self.blocks()
            for x in blk
        )

    def is_total(self) -> bool:
        return self.num_blocks <= 1

    def is_discrete(self) -> bool:
        return self.num_blocks == len(self.block_ids)


def congruence_from_blocks(A: FiniteAlgebra, blocks) -> Congruence:
    labels = [-1] * A.size
    for i, blk in enumerate(blocks):
        for x in blk:
            labels[x] = i
    if any(v < 0 for v in labels):
        raise AlgebraError("blocks do not cover the carrier")
    labels = canonical_labels(labels)
    if not is_compatible(A, labels):
        raise IncompatiblePartition(f"partition {list(blocks)} is not a congruence")
    return Congruence(A, labels)


def _representatives(labels: np.ndarray) -> np.ndarray:
    first = {}
    for x, b in enumerate(labels.tolist()):
        first.setdefault(b, x)
    return np.array([first[b] for b in labels.tolist()], dtype=np.int64)


def _shift_pairs(A: FiniteAlgebra, rep: np.ndarray):
    """Pairs (op(..x..), op(..rep(x)..)) for every single-argument change."""
    for a, k in zip(A.arrays, A.signature.arities):
        for axis in range(k):
            yield a.ravel(), np.take(a, rep, axis=axis).ravel()


def is_compatible(A: FiniteAlgebra, labels) -> bool:
    lab = np.asarray(labels, dtype=np.int64)
    if A.size == 0:
        return True
    rep = _representatives(lab)
    return all(np.array_equal(lab[u], lab[v]) for u, v in _shift_pairs(A, rep))


def _generated(A: FiniteAlgebra, labels: np.ndarray) -> tuple:
    """Least congruence containing the equivalence with the given labels."""
    n = A.size
    lab = np.asarray(canonical_labels(labels), dtype=np.int64)
    while True:
        rep = _representatives(lab)
        src = [np.arange(n)]
        dst = [rep]
        for u, v in _shift_pairs(A, rep):
            src.append(u)
            dst.append(v)
        src, dst = np.concatenate(src), np.concatenate(dst)
        graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
        _, comp = connected_components(graph, directed=False)
        new = np.asarray(canonical_labels(comp), dtype=np.int64)
        if np.array_equal(new, lab):
            return tuple(int(x) for x in lab)
        lab = new


def _equivalence_join(n: int, *label_arrays) -> np.ndarray:
    src, dst = [np.arange(n)], [np.arange(n)]
    for lab in label_arrays:
        rep = _representatives(np.asarray(lab, dtype=np.int64))
        src.append(np.arange(n))
        dst.append(rep)
    src, dst = np.concatenate(src), np.concatenate(dst)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    return connected_components(graph, directed=False)[1]


def congruence_join(rho: Congruence, sigma: Congruence) -> Congruence:
    if rho.parent is not sigma.parent and rho.parent != sigma.parent:
        raise ParentMismatch("congruences live on different algebras")
    A = rho.parent
    if A.size == 0:
        return rho
    if rho.refines(sigma):
        return sigma
    if sigma.refines(rho):
        return rho
    base = _equivalence_join(A.size, rho.block_ids, sigma.block_ids)
    return Congruence(A, _generated(A, base))


def principal_congruence(A: FiniteAlgebra, a: int, b: int) -> Congruence:
    lab = np.arange(A.size)
    lab[max(a, b)] = min(a, b)
    return Congruence(A, _generated(A, lab))


def discrete_congruence(A: FiniteAlgebra) -> Congruence:
    return Congruence(A, tuple(range(A.size)))


def total_congruence(A: FiniteAlgebra) -> Congruence:
    return Congruence(A, (0,) * A.size)


def kernel_congruence(f: EndoMap) -> Congruence:
    labels = canonical_labels(f.images)
    assert is_compatible(f.parent, labels), "kernel of a homomorphism must be compatible"
    return Congruence(f.parent, labels)


def enumerate_congruences(A: FiniteAlgebra, limit: int = 8) -> list:
    """All congruences, as joins of principal congruences, sorted by block ids."""
    if A.size > limit:
        raise SizeLimitExceeded(A.size, limit)
    found = {discrete_congruence(A)}
    principal = {principal_congruence(A, a, b) for a, b in itertools.combinations(range(A.size), 2)}
    found |= principal
    frontier = set(found)
    while frontier:
        new = set()
        for rho in frontier:
            for pi in principal:
                j = congruence_join(rho, pi)
                if j not in found:
                    new.add(j)
        found |= new
        frontier = new
    return sorted(found, key=lambda c: c.block_ids)


def quotient_algebra(A: FiniteAlgebra, rho) -> tuple:
    """A / rho and the projection (as an image tuple)."""
    labels = rho.block_ids if isinstance(rho, Congruence) else canonical_labels(rho)
    if len(labels) != A.size:
        raise AlgebraError("partition size does not match the carrier")
    if not is_compatible(A, labels):
        raise IncompatiblePartition("partition is not compatible with the operations")
    lab = np.asarray(labels, dtype=np.int64)
    nb = int(lab.max()) + 1 if A.size else 0
    reps = np.array([labels.index(b) for b in range(nb)], dtype=np.int64)
    tables = []
    for a, k in zip(A.arrays, A.signature.arities):
        if k:
            tables.append(lab[a[np.ix_(*[reps] * k)]].ravel().tolist())
        else:
            tables.append([int(lab[int(a)])])
    names = None
    if A.names is not None:
        names = tuple("{" + ",".join(A.names[x] for x in range(A.size) if labels[x] == b) + "}" for b in range(nb))
    Q = validate_algebra(tables, A.signature, nb, names)
    return Q, tuple(labels)


# -- retraction oracles ------------------------------------------------------------

def split_mono_check(A: FiniteAlgebra, R) -> list:
    """Retractions of the inclusion R -> A, reported as the idempotents i o r.

    Searches homomorphisms r: A -> R with r restricted to R the identity; an
    empty result means R is not a retract.
    """
    if not isinstance(R, Subalgebra):
        R = as_subalgebra(A, R)
    elif not is_closed(A, R.members):
        raise NotASubalgebra(f"{sorted(R.members)} is not closed under the operations")
    B, emb = induced_algebra(R)
    fixed = {x: i for i, x in enumerate(emb)}
    out = []
    for r in homomorphisms(A, B, fixed=fixed):
        out.append(EndoMap(A, tuple(emb[y] for y in r)))
    return out


def split_epi_check(A: FiniteAlgebra, rho: Congruence) -> list:
    """Sections of the projection A -> A/rho, reported as the idempotents s o pi."""
    Q, proj = quotient_algebra(A, rho)
    out = []
    for s in homomorphisms(Q, A):
        if all(proj[s[b]] == b for b in range(Q.size)):
            out.append(EndoMap(A, tuple(s[proj[x]] for x in range(A.size))))
    return out


# -- JSON ----------------------------------------------------------------------

def algebra_to_dict(A: FiniteAlgebra) -> dict:
    d = {
        "size": A.size,
        "operations": [
            {"name": nm, "arity": k, "table": list(tab)}
            for (nm, k), tab in zip(A.signature, A.tables)
        ],
    }
    if A.names is not None:
        d["names"] = list(A.names)
    return d


def dump_algebra(A: FiniteAlgebra) -> str:
    return json.dumps(algebra_to_dict(A))


def algebra_from_dict(d: dict) -> FiniteAlgebra:
    try:
        ops = d["operations"]
        sig = Signature(tuple((o["name"], o["arity"]) for o in ops))
        return validate_algebra([o["table"] for o in ops], sig, d["size"], d.get("names"))
    except KeyError as exc:
        raise AlgebraError(f"algebra JSON is missing key {exc}") from None


def load_algebra(text: str) -> FiniteAlgebra:
    return algebra_from_dict(json.loads(text))
