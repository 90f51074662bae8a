"""Finite categories, Karoubi envelopes of finite monoids, and the category of
retracts of a finite algebra.

Morphisms are triples ``(source, target, payload)``; the payload is a monoid
element for envelopes and an image tuple for categories of algebras.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable

from .algebra import (
    DEFAULT_ENDO_LIMIT,
    FiniteAlgebra,
    Subalgebra,
    endomorphisms,
    homomorphisms,
    induced_algebra,
)
from .monoid import FiniteMonoid, Verdict, idempotents


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    objects: tuple
    homs: dict  # (source, target) -> tuple of morphisms
    identities: dict  # object -> morphism
    compose_fn: Callable = field(repr=False)

    def hom(self, a, b) -> tuple:
        return self.homs[(a, b)]

    def compose(self, g, f):
        """g o f, defined when target(f) == source(g)."""
        if f[1] != g[0]:
            raise ValueError(f"morphisms are not composable: {f} then {g}")
        return self.compose_fn(g, f)

    def endomorphisms(self, a) -> tuple:
        return self.homs[(a, a)]

    def composition_table(self) -> dict:
        table = {}
        for a, b, c in itertools.product(self.objects, repeat=3):
            for f in self.homs[(a, b)]:
                for g in self.homs[(b, c)]:
                    table[(g, f)] = self.compose(g, f)
        return table

    def validate(self) -> None:
        """Check closure, unit laws and associativity over every composable triple."""
        homsets = {k: set(v) for k, v in self.homs.items()}
        for a in self.objects:
            if self.identities[a] not in homsets[(a, a)]:
                raise AssertionError(f"identity of {a} missing from its endomorphisms")
        for (a, b), fs in self.homs.items():
            for f in fs:
                if self.compose(self.identities[b], f) != f or self.compose(f, self.identities[a]) != f:
                    raise AssertionError(f"unit law fails for {f}")
        for a, b, c in itertools.product(self.objects, repeat=3):
            for f in self.homs[(a, b)]:
                for g in self.homs[(b, c)]:
                    if self.compose(g, f) not in homsets[(a, c)]:
                        raise AssertionError(f"composite of {f} and {g} leaves hom({a}, {c})")
        for a, b, c, d in itertools.product(self.objects, repeat=4):
            for f in self.homs[(a, b)]:
                for g in self.homs[(b, c)]:
                    gf = self.compose(g, f)
                    for h in self.homs[(c, d)]:
                        if self.compose(h, gf) != self.compose(self.compose(h, g), f):
                            raise AssertionError(f"associativity fails at {f}, {g}, {h}")

    def to_dict(self) -> dict:
        objs = list(self.objects)
        pos = {o: i for i, o in enumerate(objs)}

        def mid(m):
            return [pos[m[0]], pos[m[1]], list(m[2]) if isinstance(m[2], tuple) else m[2]]

        return {
            "objects": [list(o) if isinstance(o, tuple) else o for o in objs],
            "homs": [
                {"source": pos[a], "target": pos[b], "morphisms": [mid(m) for m in self.homs[(a, b)]]}
                for a in objs for b in objs
            ],
            "composition": [
                [mid(g), mid(f), mid(gf)] for (g, f), gf in sorted(
                    self.composition_table().items(), key=lambda kv: (repr(mid(kv[0][1])), repr(mid(kv[0][0])))
                )
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def karoubi_envelope(M: FiniteMonoid) -> FiniteCategory:
    """Objects are idempotents; hom(e, f) = f M e; composition is the monoid product."""
    objs = tuple(idempotents(M))
    homs = {}
    for e, f in itertools.product(objs, repeat=2):
        elems = sorted({M.product(f, s, e) for s in range(M.order)})
        homs[(e, f)] = tuple((e, f, x) for x in elems)
    ids = {e: (e, e, e) for e in objs}

    def compose(g, f):
        return (f[0], g[1], M.mul(g[2], f[2]))

    return FiniteCategory(objs, homs, ids, compose)


def one_object_category(M: FiniteMonoid) -> FiniteCategory:
    homs = {(0, 0): tuple((0, 0, x) for x in range(M.order))}

    def compose(g, f):
        return (0, 0, M.mul(g[2], f[2]))

    return FiniteCategory((0,), homs, {0: (0, 0, 0)}, compose)


def category_of_retracts(A: FiniteAlgebra, limit=DEFAULT_ENDO_LIMIT, end=None) -> FiniteCategory:
    """Objects are the retract subalgebras of A (sorted member tuples, in the order
    of their first idempotent); homs are all homomorphisms between the induced
    algebras, written in A's element indices."""
    from .props import retracts

    end = end if end is not None else endomorphisms(A, limit=limit)
    objs = tuple(r.subalgebra.sorted() for r in retracts(A, end))
    induced = {}
    for o in objs:
        B, emb = induced_algebra(Subalgebra(A, frozenset(o)))
        induced[o] = (B, emb)
    homs = {}
    for a, b in itertools.product(objs, repeat=2):
        (Ba, ea), (Bb, eb) = induced[a], induced[b]
        ms = []
        for h in homomorphisms(Ba, Bb):
            ms.append((a, b, tuple(eb[y] for y in h)))  # images of a's members, in A indices
        homs[(a, b)] = tuple(ms)
    ids = {o: (o, o, o) for o in objs}

    def compose(g, f):
        src = f[0]
        mid_pos = {x: i for i, x in enumerate(g[0])}
        return (src, g[1], tuple(g[2][mid_pos[y]] for y in f[2]))

    return FiniteCategory(objs, homs, ids, compose)


def _is_retract(C: FiniteCategory, c, d):
    """A pair (i: c -> d, r: d -> c) with r o i = 1_c, or None."""
    one = C.identities[c]
    for i in C.hom(c, d):
        for r in C.hom(d, c):
            if C.compose(r, i) == one:
                return (i, r)
    return None


def _splitting(C: FiniteCategory, e):
    """An object c2 with i: c2 -> c, r: c -> c2, r o i = 1 and i o r = e, or None."""
    c = e[0]
    for c2 in C.objects:
        one = C.identities[c2]
        for i in C.hom(c2, c):
            for r in C.hom(c, c2):
                if C.compose(r, i) == one and C.compose(i, r) == e:
                    return (c2, i, r)
    return None


def is_idempotent_completion(C: FiniteCategory, D) -> dict:
    """Check both conditions for C to be an idempotent completion of the full
    subcategory on the objects D.

    Returns ``{"splitting": Verdict, "retract_of_D": Verdict}``; failure
    witnesses are the offending idempotent or object.
    """
    D = list(D)
    if not D or any(d not in C.objects for d in D):
        raise ValueError("D must be a nonempty subset of the objects")
    splitting = Verdict(True, None)
    for c in C.objects:
        bad = next((e for e in C.endomorphisms(c)
                    if C.compose(e, e) == e and _splitting(C, e) is None), None)
        if bad is not None:
            splitting = Verdict(False, bad)
            break
    retract = Verdict(True, None)
    for c in C.objects:
        if not any(_is_retract(C, c, d) for d in D):
            retract = Verdict(False, c)
            break
    return {"splitting": splitting, "retract_of_D": retract}


def hom_cardinalities(C: FiniteCategory) -> dict:
    return {k: len(v) for k, v in C.homs.items()}


def retract_audit(A: FiniteAlgebra, limit=DEFAULT_ENDO_LIMIT) -> dict:
    """Compare the envelope of End(A) with the category of retracts of A.

    Each idempotent e is sent to its image; idempotents sharing an image are
    isomorphic objects of the envelope, so the comparison is per pair of
    idempotents: |hom(e, f)| must equal the number of homomorphisms from
    image(e) to image(f).  Returns counts, the first mismatch (or None) and
    the per-pair table.
    """
    end = endomorphisms(A, limit=limit)
    K = karoubi_envelope(end.monoid)
    C = category_of_retracts(A, end=end)
    image_of = {e: tuple(sorted(set(end.maps[e].images))) for e in K.objects}
    pairs = {}
    mismatch = None
    for e, f in itertools.product(K.objects, repeat=2):
        got = (len(K.hom(e, f)), len(C.hom(image_of[e], image_of[f])))
        pairs[(e, f)] = got
        if got[0] != got[1] and mismatch is None:
            mismatch = (e, f)
    return {
        "envelope_objects": len(K.objects),
        "retract_objects": len(C.objects),
        "distinct_images": len(set(image_of.values())),
        "pairs": pairs,
        "mismatch": mismatch,
        "holds": mismatch is None and len(C.objects) == len(set(image_of.values())),
    }
