"""Brute-force oracles used to cross-check the library.

Nothing here calls the library's search, closure or join code: only the raw
operation tables of an algebra and plain itertools are used.
"""

import itertools


def apply(A, k, table, args):
    idx = 0
    for a in args:
        idx = idx * A.size + a
    return table[idx]


def is_hom(A, B, f):
    for (_, k), ta, tb in zip(A.signature, A.tables, B.tables):
        for args in itertools.product(range(A.size), repeat=k):
            if f[apply(A, k, ta, args)] != apply(B, k, tb, [f[a] for a in args]):
                return False
    return True


def brute_endos(A):
    return [f for f in itertools.product(range(A.size), repeat=A.size) if is_hom(A, A, f)]


def compose(f, g):
    """f after g."""
    return tuple(f[x] for x in g)


def partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in partitions(rest):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]
        yield [[first]] + p


def labels_of(blocks, n):
    lab = [0] * n
    for i, b in enumerate(blocks):
        for x in b:
            lab[x] = i
    seen = {}
    return tuple(seen.setdefault(v, len(seen)) for v in lab)


def is_congruence(A, lab):
    for (_, k), t in zip(A.signature, A.tables):
        for args in itertools.product(range(A.size), repeat=k):
            for pos in range(k):
                for y in range(A.size):
                    if lab[y] == lab[args[pos]]:
                        other = list(args)
                        other[pos] = y
                        if lab[apply(A, k, t, args)] != lab[apply(A, k, t, other)]:
                            return False
    return True


def brute_congruences(A):
    return [lab for lab in {labels_of(p, A.size) for p in partitions(range(A.size))} if is_congruence(A, lab)]


def finer(p, q):
    """p <= q as partitions given by labels."""
    return all(q[x] == q[y] for x in range(len(p)) for y in range(len(p)) if p[x] == p[y])


def brute_join(congs, p, q):
    ups = [r for r in congs if finer(p, r) and finer(q, r)]
    return max(ups, key=lambda r: len(set(r)))


def kernel(f):
    seen = {}
    return tuple(seen.setdefault(v, len(seen)) for v in f)


def brute_report(A):
    """(ri, ur, ri_star, ur_star, commuting) straight from the definitions."""
    ends = brute_endos(A)
    idem = [f for f in ends if compose(f, f) == f]
    images = [frozenset(f) for f in idem]
    kers = [kernel(f) for f in idem]
    ri = all((a & b) in set(images) for a in images for b in images)
    ur = len(set(images)) == len(images)
    ur_star = len(set(kers)) == len(kers)
    congs = brute_congruences(A)
    ri_star = all(brute_join(congs, a, b) in set(kers) for a in kers for b in kers)
    commuting = all(compose(f, g) == compose(g, f) for f in idem for g in idem)
    return ri, ur, ri_star, ur_star, commuting


def brute_monoids(n):
    """All monoid tables of order n (identity 0) up to identity-fixing relabeling."""
    free = [(i, j) for i in range(1, n) for j in range(1, n)]
    classes = set()
    perms = [(0,) + p for p in itertools.permutations(range(1, n))]
    for vals in itertools.product(range(n), repeat=len(free)):
        t = [[j if i == 0 else (i if j == 0 else 0) for j in range(n)] for i in range(n)]
        for (i, j), v in zip(free, vals):
            t[i][j] = v
        if all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n)):
            forms = []
            for p in perms:
                inv = [0] * n
                for new, old in enumerate(p):
                    inv[old] = new
                forms.append(tuple(inv[t[p[i]][p[j]]] for i in range(n) for j in range(n)))
            classes.add(min(forms))
    return classes


def unary_join(A, p, q):
    """Least congruence above label vectors p and q, for algebras with only
    unary operations: close the pair relation under the operations and
    transitivity until nothing changes."""
    n = A.size
    rel = {(x, y) for x in range(n) for y in range(n) if p[x] == p[y] or q[x] == q[y]}
    changed = True
    while changed:
        changed = False
        new = set(rel)
        for t in A.tables:
            new |= {(t[x], t[y]) for x, y in rel}
        by_first = {}
        for x, y in new:
            by_first.setdefault(x, set()).add(y)
        new |= {(x, z) for x, y in new for z in by_first[y]}
        if new != rel:
            rel, changed = new, True
    return kernel([min(y for y in range(n) if (x, y) in rel) for x in range(n)])


def monoid_ri_star(M):
    """RI* for M acting on itself on the right.  Its endomorphisms are the left
    multiplications, so the coretracts are the kernels of x -> e x, e idempotent."""
    from fitzprops.monoid import canonical_right_mset
    X = canonical_right_mset(M)
    n = M.order
    idem = [e for e in range(n) if M.mul(e, e) == e]
    kers = {kernel([M.mul(e, x) for x in range(n)]) for e in idem}
    return all(unary_join(X, a, b) in kers for a in kers for b in kers)
