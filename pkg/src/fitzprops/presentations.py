"""Monoid presentations: parsing and bounded realization as finite tables.

Grammar (whitespace insensitive)::

    presentation ::= gens ["|" [rel (";" rel)*]]
    gens         ::= [name ("," name)*]
    rel          ::= word "=" word ("=" word)*
    word         ::= name+ | "1"

A chain ``a = b = c`` stands for the relations ``a = b`` and ``b = c``.  When
every generator name is a single character, a run such as ``efe`` is read as
the word ``e f e``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

from .errors import (
    BoundExceeded,
    PresentationSyntaxError,
    RewriteBudgetExceeded,
    UnknownGenerator,
)
from .monoid import FiniteMonoid, verify_monoid_axioms

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<one>1)|(?P<punct>[,|;=]))")


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relations: tuple  # ((lhs, rhs), ...) with words as tuples of generator names

    def __str__(self):
        def w(word):
            return " ".join(word) if word else "1"
        rels = " ; ".join(f"{w(l)} = {w(r)}" for l, r in self.relations)
        return ", ".join(self.generators) + " | " + rels


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise PresentationSyntaxError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


def parse_presentation(text: str) -> Presentation:
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = toks[i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise PresentationSyntaxError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        i += 1
        return tok

    gens = []
    if peek()[0] == "name":
        gens.append(take("name")[1])
        while peek()[1] == ",":
            take("punct", ",")
            gens.append(take("name")[1])
    if len(set(gens)) != len(gens):
        raise PresentationSyntaxError("duplicate generator name", 0)
    single = all(len(g) == 1 for g in gens)
    gset = set(gens)

    def word():
        tok = peek()
        if tok[0] == "one":
            take()
            return ()
        if tok[0] != "name":
            raise PresentationSyntaxError(f"expected a word, found {tok[1] or 'end of input'!r}", tok[2])
        out = []
        while peek()[0] == "name":
            _, name, p = take()
            if name in gset:
                out.append(name)
            elif single and all(c in gset for c in name):
                out.extend(name)
            else:
                bad = name if not single else next(c for c in name if c not in gset)
                raise UnknownGenerator(bad, p)
        return tuple(out)

    rels = []
    if peek()[1] == "|":
        take("punct", "|")
        while peek()[0] != "end":
            chain = [word()]
            take("punct", "=")
            chain.append(word())
            while peek()[1] == "=":
                take("punct", "=")
                chain.append(word())
            rels.extend(zip(chain, chain[1:]))
            if peek()[0] == "end":
                break
            take("punct", ";")
    take("end")
    return Presentation(tuple(gens), tuple(rels))


# -- realization ------------------------------------------------------------------------

def _shortlex_key(w: tuple):
    return (len(w), w)


@dataclass(frozen=True, eq=False)
class Realization:
    presentation: Presentation
    monoid: FiniteMonoid
    normal_forms: tuple  # element index -> word (tuple of generator names)
    generator_elements: dict = field(default_factory=dict)

    def element_of(self, word) -> int:
        x = 0
        for g in word:
            x = self.monoid.mul(x, self.generator_elements[g])
        return x


def _word_name(word: tuple, single: bool) -> str:
    if not word:
        return "1"
    return "".join(word) if single else " ".join(word)


class _Rewriter:
    def __init__(self, pres: Presentation, budget: int):
        idx = {g: i for i, g in enumerate(pres.generators)}
        self.rules = []
        for l, r in pres.relations:
            l = tuple(idx[g] for g in l)
            r = tuple(idx[g] for g in r)
            if l == r:
                continue
            if _shortlex_key(l) < _shortlex_key(r):
                l, r = r, l
            self.rules.append((l, r))
        self.both = self.rules + [(r, l) for l, r in self.rules]
        self.budget = budget

    def reduce(self, w: tuple) -> tuple:
        changed = True
        while changed:
            changed = False
            for l, r in self.rules:
                k = len(l)
                for p in range(len(w) - k + 1):
                    if w[p:p + k] == l:
                        w = w[:p] + r + w[p + k:]
                        changed = True
                        break
                if changed:
                    break
        return w

    def find(self, w: tuple, known: dict, cap: int):
        """Search words equal to w (rewrites in both directions, length <= cap)
        for one already in ``known``."""
        start = self.reduce(w)
        if start in known:
            return known[start]
        seen = {w, start}
        queue = deque([w, start])
        while queue:
            u = queue.popleft()
            for l, r in self.both:
                k = len(l)
                if len(u) - k + len(r) > cap:
                    continue
                for p in range(len(u) - k + 1):
                    if u[p:p + k] == l:
                        v = u[:p] + r + u[p + k:]
                        if v in seen:
                            continue
                        if v in known:
                            return known[v]
                        seen.add(v)
                        if len(seen) > self.budget:
                            raise RewriteBudgetExceeded(w, self.budget)
                        queue.append(v)
        return None


def realize(pres: Presentation | str, max_elements: int = 64, max_word_length: int = 8,
            rewrite_budget: int = 20000) -> Realization:
    """Enumerate the presented monoid breadth-first in shortlex order.

    Raises BoundExceeded (with the per-length growth of normal forms) when the
    closure is not reached within the bounds.  A result is returned only if
    every relation holds at every element of the realized table.
    """
    if isinstance(pres, str):
        pres = parse_presentation(pres)
    if max_elements < 1 or max_word_length < 0:
        raise ValueError("bounds must be positive")
    gens = pres.generators
    single = all(len(g) == 1 for g in gens)
    rw = _Rewriter(pres, rewrite_budget)
    nfs = [()]
    known = {(): 0}
    delta = {}
    queue = deque([0])

    def growth():
        out = {}
        for w in nfs:
            out.setdefault(len(w), []).append(_word_name(tuple(gens[i] for i in w), single))
        return out

    while queue:
        u = queue.popleft()
        for x in range(len(gens)):
            w = nfs[u] + (x,)
            target = rw.find(w, known, len(w))
            if target is None:
                reason = None
                if len(w) > max_word_length:
                    reason = f"normal form longer than {max_word_length}"
                elif len(nfs) >= max_elements:
                    reason = f"more than {max_elements} elements"
                if reason:
                    raise BoundExceeded(len(nfs), len(queue) + 1, growth(), reason)
                target = len(nfs)
                nfs.append(w)
                known[w] = target
                queue.append(target)
            delta[u, x] = target

    n = len(nfs)

    def act(e, word):
        for x in word:
            e = delta[e, x]
        return e

    gidx = {g: i for i, g in enumerate(gens)}
    for l, r in pres.relations:
        lw, rwd = [gidx[g] for g in l], [gidx[g] for g in r]
        for e in range(n):
            if act(e, lw) != act(e, rwd):
                raise RewriteBudgetExceeded(
                    l, rewrite_budget,
                    f"relation {l} = {r} fails at element {e}: bounded rewriting split a class")
    for w in nfs:
        assert w[:-1] in known, "normal forms must be prefix closed"
    table = [act(u, nfs[v]) for u in range(n) for v in range(n)]
    names = [_word_name(tuple(gens[i] for i in w), single) for w in nfs]
    M = verify_monoid_axioms(table, n, names)
    gen_el = {g: delta[0, i] for i, g in enumerate(gens)}
    return Realization(pres, M, tuple(tuple(gens[i] for i in w) for w in nfs), gen_el)


SIX_ELEMENT_PRESENTATION = (
    "e,f,g | e e = e ; f f = f ; g g = g ; f g = g ; g f = g ; e g = g ; g e = g ; f e f = g ; e f e = g"
)
ALTERNATING_PRESENTATION = (
    "e,f,g | e e = e ; f f = f ; g g = g ; e g = g ; g e = g ; g f = g ; f g = g"
)
