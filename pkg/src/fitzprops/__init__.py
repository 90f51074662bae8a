"""Finite monoids and finite algebras: retracts, coretracts, the four retract
properties and a small-monoid search."""

from .algebra import (
    Congruence,
    EndMonoid,
    EndoMap,
    FiniteAlgebra,
    Signature,
    Subalgebra,
    congruence_join,
    endomorphisms,
    enumerate_congruences,
    image_subalgebra,
    is_homomorphism,
    kernel_congruence,
    load_algebra,
    make_algebra,
    quotient_algebra,
    split_epi_check,
    split_mono_check,
    subalgebra_closure,
    validate_algebra,
)
from .corpus import builtin, corpus, shipped_monoid, gen_abelian, gen_canonical_mset, gen_gset, gen_pointed_set, gen_set
from .errors import *  # noqa: F401,F403
from .karoubi import FiniteCategory, category_of_retracts, is_idempotent_completion, karoubi_envelope
from .monoid import (
    FiniteMonoid,
    Verdict,
    canonical_right_mset,
    ideal,
    idempotents,
    idempotents_commute,
    intersect_ideals,
    load_monoid,
    monoid_isomorphic,
    ri_sufficient,
    verify_monoid_axioms,
)
from .presentations import Presentation, parse_presentation, realize
from .props import (
    PropertyReport,
    bridge_check,
    check_ri,
    check_ri_star,
    check_ur,
    check_ur_star,
    coretracts,
    full_report,
    retracts,
)
from .search import SearchConfig, enumerate_monoids, find_counterexamples, find_ri_gap_witness, is_counterexample

__version__ = "0.1.0"
