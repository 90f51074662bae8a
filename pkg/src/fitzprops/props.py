"""The retract properties (RI), (UR), (RI*), (UR*) for finite algebras.

Retracts are handled as images of idempotent endomorphisms and coretracts
as their kernels.  Every check accepts a precomputed ``EndMonoid`` so a full
report only runs the endomorphism search once.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .algebra import (
    DEFAULT_ENDO_LIMIT,
    Congruence,
    EndMonoid,
    FiniteAlgebra,
    Subalgebra,
    congruence_join,
    endomorphisms,
    image_subalgebra,
    kernel_congruence,
)
from .errors import TransferViolation
from .monoid import Verdict, canonical_right_mset, idempotents_commute

PROPERTIES = ("ri", "ur", "ri_star", "ur_star")


@dataclass(frozen=True)
class Retract:
    subalgebra: Subalgebra
    idempotents: tuple  # indices into the EndMonoid


@dataclass(frozen=True)
class Coretract:
    congruence: Congruence
    idempotents: tuple


def _end(A, end, limit):
    return end if end is not None else endomorphisms(A, limit=limit)


def retracts(A: FiniteAlgebra, end: EndMonoid | None = None, limit=DEFAULT_ENDO_LIMIT) -> list:
    """Retract subalgebras of A, each with the idempotents having that image.

    Ordered by the first idempotent (in endomorphism order) that realizes it.
    """
    end = _end(A, end, limit)
    groups = {}
    for i in end.idempotent_indices():
        R = image_subalgebra(end.maps[i])
        groups.setdefault(R, []).append(i)
    return [Retract(R, tuple(ids)) for R, ids in groups.items()]


def coretracts(A: FiniteAlgebra, end: EndMonoid | None = None, limit=DEFAULT_ENDO_LIMIT) -> list:
    end = _end(A, end, limit)
    groups = {}
    for i in end.idempotent_indices():
        rho = kernel_congruence(end.maps[i])
        groups.setdefault(rho, []).append(i)
    return [Coretract(rho, tuple(ids)) for rho, ids in groups.items()]


def check_ri(A: FiniteAlgebra, end: EndMonoid | None = None, limit=DEFAULT_ENDO_LIMIT,
             _retracts=None) -> Verdict:
    """Intersections of retracts are retracts.

    On success the witness lists the intersections that differ from both
    operands; on failure it is the first pair whose intersection is orphaned.
    """
    rs = _retracts if _retracts is not None else retracts(A, end, limit)
    images = [r.subalgebra.members for r in rs]
    known = set(images)
    nontrivial = []
    for x, y in itertools.combinations_with_replacement(range(len(images)), 2):
        meet = images[x] & images[y]
        if meet not in known:
            return Verdict(False, {"first": images[x], "second": images[y], "intersection": meet})
        if meet != images[x] and meet != images[y]:
            nontrivial.append((images[x], images[y], meet))
    return Verdict(True, {"nontrivial": nontrivial})


def check_ur(A: FiniteAlgebra, end: EndMonoid | None = None, limit=DEFAULT_ENDO_LIMIT,
             _retracts=None) -> Verdict:
    """Distinct idempotent endomorphisms have distinct images."""
    rs = _retracts if _retracts is not None else retracts(A, end, limit)
    for r in rs:
        if len(r.idempotents) > 1:
            return Verdict(False, {"idempotents": r.idempotents[:2], "image": r.subalgebra.members})
    return Verdict(True, None)


def check_ur_star(A: FiniteAlgebra, end: EndMonoid | None = None, limit=DEFAULT_ENDO_LIMIT,
                  _coretracts=None) -> Verdict:
    """Distinct idempotent endomorphisms have distinct kernels."""
    cs = _coretracts if _coretracts is not None else coretracts(A, end, limit)
    for c in cs:
        if len(c.idempotents) > 1:
            return Verdict(False, {"idempotents": c.idempotents[:2], "kernel": c.congruence})
    return Verdict(True, None)


def check_ri_star(A: FiniteAlgebra, end: EndMonoid | None = None, limit=DEFAULT_ENDO_LIMIT,
                  _coretracts=None) -> Verdict:
    """Joins of coretract congruences are coretract congruences."""
    cs = _coretracts if _coretracts is not None else coretracts(A, end, limit)
    kernels = [c.congruence for c in cs]
    known = set(kernels)
    nontrivial = []
    for x, y in itertools.combinations(range(len(kernels)), 2):
        rho, sigma = kernels[x], kernels[y]
        join = congruence_join(rho, sigma)
        if join not in known:
            return Verdict(False, {"first": rho, "second": sigma, "join": join})
        if join != rho and join != sigma:
            nontrivial.append((rho, sigma, join))
    return Verdict(True, {"nontrivial": nontrivial})


@dataclass(frozen=True, eq=False)
class PropertyReport:
    algebra: FiniteAlgebra
    end: EndMonoid
    ri: Verdict
    ur: Verdict
    ri_star: Verdict
    ur_star: Verdict
    idempotents_commute: Verdict
    retracts: list = field(default_factory=list)
    coretracts: list = field(default_factory=list)

    def verdicts(self) -> dict:
        return {
            "ri": self.ri.holds,
            "ur": self.ur.holds,
            "ri_star": self.ri_star.holds,
            "ur_star": self.ur_star.holds,
            "idempotents_commute": self.idempotents_commute.holds,
        }

    @property
    def all_four(self) -> bool:
        return all(getattr(self, p).holds for p in PROPERTIES)

    @property
    def is_counterexample(self) -> bool:
        return self.all_four and not self.idempotents_commute.holds

    def to_dict(self) -> dict:
        d = self.verdicts()
        d["witnesses"] = _render_witnesses(self)
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def render(self) -> str:
        return render_report(self)


def full_report(A: FiniteAlgebra, end: EndMonoid | None = None, limit=DEFAULT_ENDO_LIMIT) -> PropertyReport:
    end = _end(A, end, limit)
    rs = retracts(A, end)
    cs = coretracts(A, end)
    return PropertyReport(
        algebra=A,
        end=end,
        ri=check_ri(A, end, _retracts=rs),
        ur=check_ur(A, end, _retracts=rs),
        ri_star=check_ri_star(A, end, _coretracts=cs),
        ur_star=check_ur_star(A, end, _coretracts=cs),
        idempotents_commute=idempotents_commute(end.monoid),
        retracts=rs,
        coretracts=cs,
    )


# -- transfer between A and End(A) as a right set over itself -------------------------

@dataclass(frozen=True, eq=False)
class BridgeAudit:
    algebra_report: PropertyReport
    mset_report: PropertyReport
    violations: tuple

    def matrix(self) -> dict:
        """Per property: (holds for A, holds for the canonical set)."""
        a, s = self.algebra_report, self.mset_report
        return {p: (getattr(a, p).holds, getattr(s, p).holds) for p in PROPERTIES}

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra_report.verdicts(),
            "canonical_mset": self.mset_report.verdicts(),
            "violations": list(self.violations),
        }


def bridge_check(A: FiniteAlgebra, limit=DEFAULT_ENDO_LIMIT, raise_on_violation: bool = True) -> BridgeAudit:
    """Compare A with its endomorphism monoid acting on itself.

    Forward: each property holding for A must hold for the canonical set.
    Backward: UR, RI*, UR* holding for the canonical set must hold for A.
    RI has no backward direction.
    """
    end = endomorphisms(A, limit=limit)
    S = end.monoid
    X = canonical_right_mset(S)
    rep_a = full_report(A, end)
    rep_s = full_report(X, limit=max(S.order, limit or 0))
    violations = []
    for p in PROPERTIES:
        ha, hs = getattr(rep_a, p).holds, getattr(rep_s, p).holds
        if ha and not hs:
            violations.append(f"{p} holds for the algebra but not for its monoid as a right set")
        if p != "ri" and hs and not ha:
            violations.append(f"{p} holds for the monoid as a right set but not for the algebra")
    audit = BridgeAudit(rep_a, rep_s, tuple(violations))
    if violations and raise_on_violation:
        raise TransferViolation(violations)
    return audit


# -- witness checks and rendering -----------------------------------------------------

def verify_witnesses(report: PropertyReport) -> list:
    """Re-check every counter-witness against the raw data; returns problems found."""
    problems = []
    end, A = report.end, report.algebra
    ids = end.idempotent_indices()
    images = {frozenset(end.maps[i].images) for i in ids}
    kernels = {kernel_congruence(end.maps[i]) for i in ids}
    if not report.ri.holds:
        w = report.ri.witness
        if w["first"] not in images or w["second"] not in images:
            problems.append("RI witness operands are not idempotent images")
        if w["first"] & w["second"] != w["intersection"] or w["intersection"] in images:
            problems.append("RI witness intersection is a retract after all")
    if not report.ur.holds:
        i, j = report.ur.witness["idempotents"]
        if i == j or frozenset(end.maps[i].images) != frozenset(end.maps[j].images):
            problems.append("UR witness idempotents do not share an image")
    if not report.ur_star.holds:
        i, j = report.ur_star.witness["idempotents"]
        if i == j or kernel_congruence(end.maps[i]) != kernel_congruence(end.maps[j]):
            problems.append("UR* witness idempotents do not share a kernel")
    if not report.ri_star.holds:
        w = report.ri_star.witness
        if congruence_join(w["first"], w["second"]) != w["join"] or w["join"] in kernels:
            problems.append("RI* witness join is a coretract after all")
    if not report.idempotents_commute.holds:
        x, y = report.idempotents_commute.witness
        M = end.monoid
        if M.mul(x, y) == M.mul(y, x):
            problems.append("commuting witness actually commutes")
    return problems


def _subset_names(A: FiniteAlgebra, s) -> list:
    return [A.name(x) for x in sorted(s)]


def _blocks_names(A: FiniteAlgebra, rho: Congruence) -> list:
    return [[A.name(x) for x in blk] for blk in rho.blocks()]


def _map_name(end: EndMonoid, i: int) -> list:
    return list(end.maps[i].images)


def _render_witnesses(rep: PropertyReport) -> dict:
    A, end = rep.algebra, rep.end
    out = {}
    w = rep.ri.witness
    if rep.ri.holds:
        out["ri"] = {"nontrivial_intersections": sorted(
            [_subset_names(A, x), _subset_names(A, y), _subset_names(A, z)] for x, y, z in w["nontrivial"])}
    else:
        out["ri"] = {"first": _subset_names(A, w["first"]), "second": _subset_names(A, w["second"]),
                     "intersection": _subset_names(A, w["intersection"])}
    if rep.ur.holds:
        out["ur"] = None
    else:
        i, j = rep.ur.witness["idempotents"]
        out["ur"] = {"idempotents": [_map_name(end, i), _map_name(end, j)],
                     "image": _subset_names(A, rep.ur.witness["image"])}
    w = rep.ri_star.witness
    if rep.ri_star.holds:
        out["ri_star"] = {"nontrivial_joins": sorted(
            [_blocks_names(A, x), _blocks_names(A, y), _blocks_names(A, z)] for x, y, z in w["nontrivial"])}
    else:
        out["ri_star"] = {"first": _blocks_names(A, w["first"]), "second": _blocks_names(A, w["second"]),
                          "join": _blocks_names(A, w["join"])}
    if rep.ur_star.holds:
        out["ur_star"] = None
    else:
        i, j = rep.ur_star.witness["idempotents"]
        out["ur_star"] = {"idempotents": [_map_name(end, i), _map_name(end, j)],
                          "kernel": _blocks_names(A, rep.ur_star.witness["kernel"])}
    if rep.idempotents_commute.holds:
        out["idempotents_commute"] = None
    else:
        x, y = rep.idempotents_commute.witness
        out["idempotents_commute"] = {"pair": [_map_name(end, x), _map_name(end, y)]}
    return out


def _fmt_set(names) -> str:
    return "{" + ", ".join(names) + "}"


def render_report(rep: PropertyReport) -> str:
    A = rep.algebra
    lines = [f"algebra: {A.size} elements, {len(A.signature)} operations, {len(rep.end)} endomorphisms"]
    lines.append(f"{'property':<22}verdict")
    labels = {"ri": "RI", "ur": "UR", "ri_star": "RI*", "ur_star": "UR*",
              "idempotents_commute": "commuting idempotents"}
    for key, val in rep.verdicts().items():
        lines.append(f"{labels[key]:<22}{'yes' if val else 'no'}")
    lines.append("retracts:")
    for r in rep.retracts:
        lines.append(f"  {_fmt_set(_subset_names(A, r.subalgebra.members))}  idempotents={len(r.idempotents)}")
    lines.append("coretracts:")
    for c in rep.coretracts:
        blocks = " ".join(_fmt_set(b) for b in _blocks_names(A, c.congruence))
        lines.append(f"  {blocks}  idempotents={len(c.idempotents)}")
    wit = _render_witnesses(rep)
    if rep.ri.holds:
        for x, y, z in wit["ri"]["nontrivial_intersections"]:
            lines.append(f"RI: {_fmt_set(x)} & {_fmt_set(y)} = {_fmt_set(z)}")
    else:
        w = wit["ri"]
        lines.append(f"RI fails: {_fmt_set(w['first'])} & {_fmt_set(w['second'])} = "
                     f"{_fmt_set(w['intersection'])} is not a retract")
    if rep.ri_star.holds:
        for x, y, z in wit["ri_star"]["nontrivial_joins"]:
            lines.append("RI*: " + " ".join(map(_fmt_set, x)) + " v " + " ".join(map(_fmt_set, y))
                         + " = " + " ".join(map(_fmt_set, z)))
    else:
        w = wit["ri_star"]
        lines.append("RI* fails: join " + " ".join(map(_fmt_set, w["join"])) + " is not a coretract")
    if not rep.ur.holds:
        lines.append(f"UR fails: two idempotents with image {_fmt_set(wit['ur']['image'])}")
    if not rep.ur_star.holds:
        lines.append("UR* fails: two idempotents with kernel "
                     + " ".join(map(_fmt_set, wit["ur_star"]["kernel"])))
    if not rep.idempotents_commute.holds:
        a, b = wit["idempotents_commute"]["pair"]
        lines.append(f"non-commuting idempotents: {a} and {b}")
    return "\n".join(lines)
