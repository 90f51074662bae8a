import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fitzprops.algebra import (
    EndoMap,
    Signature,
    algebras_isomorphic,
    congruence_from_blocks,
    congruence_join,
    discrete_congruence,
    dump_algebra,
    endomorphisms,
    enumerate_congruences,
    image_subalgebra,
    induced_algebra,
    is_closed,
    is_homomorphism,
    kernel_congruence,
    load_algebra,
    make_algebra,
    principal_congruence,
    quotient_algebra,
    split_epi_check,
    split_mono_check,
    subalgebra_closure,
    total_congruence,
    validate_algebra,
)
from fitzprops.corpus import corpus, gen_pointed_set, gen_set
from fitzprops.errors import (
    EmptyCarrierWithConstants,
    EntryOutOfRange,
    IncompatiblePartition,
    NotASubalgebra,
    SignatureMismatch,
    SizeLimitExceeded,
    TableLengthMismatch,
)
from fitzprops.monoid import monoid_isomorphic

CORPUS4 = list(corpus(4, include_monoids=True))
CORPUS5 = list(corpus(5))
ids = lambda item: item[0]


def left_mult(S, A, x):
    return EndoMap(A, tuple(S.mul(x, y) for y in range(S.order)))


def names(A, subset):
    return {A.name(x) for x in subset}


def block_names(A, rho):
    return {frozenset(A.name(x) for x in b) for b in rho.blocks()}


# -- validation ---------------------------------------------------------------------------

def test_validate_sample_set(A, S):
    B = validate_algebra(A.tables, A.signature, 6, A.names)
    assert B == A and B.size == 6


def test_validate_empty():
    E = validate_algebra([], Signature(()), 0)
    assert E.size == 0 and endomorphisms(E).maps[0].images == ()


def test_validate_errors():
    sig = Signature((("c", 0),))
    with pytest.raises(EntryOutOfRange):
        validate_algebra([[5]], sig, 2)
    with pytest.raises(TableLengthMismatch):
        validate_algebra([[0, 1]], sig, 2)
    with pytest.raises(EmptyCarrierWithConstants):
        validate_algebra([[0]], sig, 0)
    with pytest.raises(ValueError):
        Signature((("u", 1), ("u", 1)))


# -- homomorphisms ------------------------------------------------------------------------

def test_identity_and_left_multiplication(A, S, el):
    assert is_homomorphism(range(6), A, A).holds
    for x in range(6):
        assert is_homomorphism(left_mult(S, A, x).images, A, A).holds


def test_swapping_e_and_f_alone_is_not_a_homomorphism(A, el):
    f = list(range(6))
    f[el["e"]], f[el["f"]] = el["f"], el["e"]
    v = is_homomorphism(f, A, A)
    assert not v.holds
    op, (x,) = v.witness
    k = A.signature.names.index(op)
    assert f[A.tables[k][x]] != A.tables[k][f[x]]
    assert not oracles.is_hom(A, A, f)


def test_signature_mismatch(A):
    with pytest.raises(SignatureMismatch):
        is_homomorphism([0], gen_set(1), gen_pointed_set(1))


def test_endomorphisms_of_sample_set(A, S):
    end = endomorphisms(A)
    assert len(end) == 6
    assert monoid_isomorphic(end.monoid, S).holds
    assert end.maps[0].images == tuple(range(6))


def test_endomorphism_counts():
    assert len(endomorphisms(make_algebra(1, [("u", 1, [0]), ("c", 0, [0])]))) == 1
    assert len(endomorphisms(gen_pointed_set(3))) == 9
    assert len(endomorphisms(gen_set(0))) == 1


def test_size_limit():
    with pytest.raises(SizeLimitExceeded):
        endomorphisms(gen_set(11))
    assert len(endomorphisms(gen_set(5), limit=None)) == 5 ** 5


@pytest.mark.parametrize("item", CORPUS4, ids=ids)
def test_endomorphisms_match_brute_force(item):
    _, A = item
    end = endomorphisms(A, limit=None)
    maps = [m.images for m in end.maps]
    assert maps[0] == tuple(range(A.size))
    assert len(set(maps)) == len(maps)
    assert set(maps) == set(oracles.brute_endos(A))
    M = end.monoid
    for i, j in itertools.product(range(len(maps)), repeat=2):
        assert maps[M.mul(i, j)] == oracles.compose(maps[i], maps[j])


# -- subalgebras -------------------------------------------------------------------------

def test_closures(A, el):
    assert len(subalgebra_closure(A, [el["1"]])) == 6
    assert names(A, subalgebra_closure(A, [el["e"]]).members) == {"e", "ef", "g"}
    assert len(subalgebra_closure(gen_set(3), [])) == 0
    assert subalgebra_closure(gen_pointed_set(3), []).members == {0}


def test_images(A, S, el):
    assert names(A, image_subalgebra(left_mult(S, A, el["g"])).members) == {"g"}
    assert len(image_subalgebra(left_mult(S, A, 0))) == 6
    assert names(A, image_subalgebra(left_mult(S, A, el["ef"])).members) == {"ef", "g"}


@pytest.mark.parametrize("item", CORPUS4, ids=ids)
def test_images_closed_and_kernels_compatible(item):
    _, A = item
    for f in endomorphisms(A, limit=None).maps:
        assert is_closed(A, image_subalgebra(f).members)
        lab = kernel_congruence(f).block_ids
        assert oracles.is_congruence(A, lab)


# -- congruences -------------------------------------------------------------------------

def test_sample_kernels(A, S, el):
    rho_e = kernel_congruence(left_mult(S, A, el["e"]))
    assert block_names(A, rho_e) == {frozenset({"1", "e"}), frozenset({"f", "ef"}), frozenset({"fe", "g"})}
    assert kernel_congruence(left_mult(S, A, 0)).is_discrete()
    assert kernel_congruence(left_mult(S, A, el["g"])).is_total()


def test_sample_join(A, S, el):
    rho_e = kernel_congruence(left_mult(S, A, el["e"]))
    rho_f = kernel_congruence(left_mult(S, A, el["f"]))
    assert congruence_join(rho_e, rho_f).is_total()
    assert congruence_join(rho_e, rho_e) == rho_e
    assert congruence_join(discrete_congruence(A), rho_f) == rho_f


def test_sample_congruence_count(A, S):
    congs = enumerate_congruences(A)
    assert len(congs) == 16
    assert sorted(c.block_ids for c in congs) == sorted(oracles.brute_congruences(A))
    kernels = {kernel_congruence(left_mult(S, A, x)) for x in (0, 1, 2, 3)}
    assert len(kernels) == 4 and kernels <= set(congs)


def test_congruence_counts():
    assert len(enumerate_congruences(make_algebra(1, []))) == 1
    assert len(enumerate_congruences(gen_set(3))) == 5
    with pytest.raises(SizeLimitExceeded):
        enumerate_congruences(gen_set(9))


@pytest.mark.parametrize("item", CORPUS5, ids=ids)
def test_join_matches_lattice_oracle(item):
    _, A = item
    congs = enumerate_congruences(A)
    brute = oracles.brute_congruences(A)
    assert sorted(c.block_ids for c in congs) == sorted(brute)
    pairs = list(itertools.combinations(congs, 2))
    for rho, sigma in pairs[:400]:
        assert congruence_join(rho, sigma).block_ids == oracles.brute_join(brute, rho.block_ids, sigma.block_ids)


@given(st.sampled_from([A for _, A in CORPUS4 if A.size >= 2]), st.data())
@settings(max_examples=80, deadline=None)
def test_generated_congruence_is_least(A, data):
    raw = data.draw(st.lists(st.integers(0, A.size - 1), min_size=A.size, max_size=A.size))
    lab = oracles.kernel(raw)
    rho = discrete_congruence(A)
    for x, y in itertools.combinations(range(A.size), 2):
        if lab[x] == lab[y]:
            rho = congruence_join(rho, principal_congruence(A, x, y))
    least = oracles.brute_join(oracles.brute_congruences(A), lab, lab)
    assert rho.block_ids == least


def test_incompatible_partition(A, el):
    blocks = [[el["1"], el["g"]]] + [[x] for x in range(6) if x not in (el["1"], el["g"])]
    with pytest.raises(IncompatiblePartition):
        congruence_from_blocks(A, blocks)
    with pytest.raises(IncompatiblePartition):
        quotient_algebra(A, (0, 0, 1, 2, 3, 4))


# -- quotients ----------------------------------------------------------------------------

def test_sample_quotients(A, S, el):
    Le = left_mult(S, A, el["e"])
    Q, proj = quotient_algebra(A, kernel_congruence(Le))
    B, _ = induced_algebra(image_subalgebra(Le))
    assert Q.size == 3 and algebras_isomorphic(Q, B).holds
    Q1, _ = quotient_algebra(A, discrete_congruence(A))
    assert algebras_isomorphic(Q1, A).holds
    Qg, _ = quotient_algebra(A, total_congruence(A))
    assert Qg.size == 1


@pytest.mark.parametrize("item", CORPUS4, ids=ids)
def test_projection_is_surjective_hom_with_kernel(item):
    _, A = item
    for rho in enumerate_congruences(A):
        Q, proj = quotient_algebra(A, rho)
        assert set(proj) == set(range(Q.size))
        assert oracles.is_hom(A, Q, proj)
        assert oracles.kernel(proj) == rho.block_ids


@pytest.mark.parametrize("item", CORPUS4, ids=ids)
def test_split_epi_split_mono_duality(item):
    _, A = item
    end = endomorphisms(A, limit=None)
    for i in end.idempotent_indices():
        f = end.maps[i]
        Q, _ = quotient_algebra(A, kernel_congruence(f))
        B, _ = induced_algebra(image_subalgebra(f))
        assert algebras_isomorphic(Q, B).holds


# -- arrow-based oracles -------------------------------------------------------------------

def test_split_mono_on_sample_set(A, S, el):
    eS = subalgebra_closure(A, [el["e"]])
    rs = split_mono_check(A, eS)
    assert [r.images for r in rs] == [left_mult(S, A, el["e"]).images]
    assert [r.images for r in split_mono_check(A, range(6))] == [tuple(range(6))]
    with pytest.raises(NotASubalgebra):
        split_mono_check(A, [el["e"], el["f"]])


@pytest.mark.parametrize("item", CORPUS4, ids=ids)
def test_arrow_oracles_match_idempotents(item):
    _, A = item
    end = endomorphisms(A, limit=None)
    idem = [end.maps[i] for i in end.idempotent_indices()]
    by_image, by_kernel = {}, {}
    for f in idem:
        by_image.setdefault(frozenset(f.images), set()).add(f.images)
        by_kernel.setdefault(kernel_congruence(f), set()).add(f.images)
    for img, maps in by_image.items():
        assert {r.images for r in split_mono_check(A, img)} == maps
    for rho, maps in by_kernel.items():
        assert {s.images for s in split_epi_check(A, rho)} == maps


# -- files --------------------------------------------------------------------------------

@pytest.mark.parametrize("item", CORPUS4[:40], ids=ids)
def test_algebra_json_round_trip(item):
    _, A = item
    text = dump_algebra(A)
    assert load_algebra(text) == A
    assert dump_algebra(load_algebra(text)) == text


def test_binary_table_encoding():
    # big-endian: (a, b) sits at a * n + b
    B = make_algebra(3, [("p", 2, [0, 0, 0, 1, 1, 1, 2, 2, 2])])
    assert B.apply("p", 2, 0) == 2 and B.apply("p", 0, 2) == 0
