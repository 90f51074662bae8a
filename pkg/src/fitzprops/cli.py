"""Command-line entry point.

Exit codes: 0 ok, 1 input error, 2 counterexample found (report), 3 bound
exceeded (presentation), 4 transfer violation (bridge).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import DEFAULT_ENDO_LIMIT, FiniteAlgebra, dump_algebra, endomorphisms, load_algebra
from .corpus import builtin, corpus, gen_canonical_mset, parse_corpus_spec
from .errors import BoundExceeded, FitzError, RewriteBudgetExceeded, TransferViolation
from .karoubi import category_of_retracts, is_idempotent_completion, karoubi_envelope, retract_audit
from .monoid import dump_monoid, load_monoid, monoid_to_dict
from .presentations import parse_presentation, realize
from .props import PROPERTIES, bridge_check, full_report
from .search import SearchConfig, find_counterexamples, find_ri_gap_witness

EXIT_OK, EXIT_INPUT, EXIT_COUNTEREXAMPLE, EXIT_BOUND, EXIT_VIOLATION = 0, 1, 2, 3, 4


def load_algebra_arg(arg: str) -> FiniteAlgebra:
    """``builtin:NAME``, ``corpus:SPEC`` or a JSON file holding an algebra or a
    monoid (a monoid is replaced by its canonical right set)."""
    if arg.startswith("builtin:"):
        return builtin(arg.split(":", 1)[1])
    if arg.startswith("corpus:"):
        return parse_corpus_spec(arg.split(":", 1)[1])
    path = Path(arg)
    if not path.is_file():
        raise FitzError(f"no such file or builtin: {arg!r}")
    text = path.read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FitzError(f"{arg}: invalid JSON ({exc})") from None
    if isinstance(raw, dict) and "table" in raw:
        return gen_canonical_mset(load_monoid(text))
    return load_algebra(text)


def _emit(obj) -> None:
    print(json.dumps(obj))


def _limit(args):
    return None if args.limit_endo is not None and args.limit_endo <= 0 else args.limit_endo


# -- subcommands --------------------------------------------------------------------------

def cmd_report(args) -> int:
    A = load_algebra_arg(args.algebra)
    rep = full_report(A, limit=_limit(args))
    if args.json:
        _emit(rep.to_dict())
    else:
        print(rep.render())
    if args.plot:
        from .plotting import cayley_figure, save
        save(cayley_figure(rep.end.monoid, title="End(A)"), args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return EXIT_COUNTEREXAMPLE if rep.is_counterexample else EXIT_OK


def cmd_endo(args) -> int:
    A = load_algebra_arg(args.algebra)
    end = endomorphisms(A, limit=_limit(args))
    idem = set(end.idempotent_indices())
    if args.json:
        _emit({"maps": [list(m.images) for m in end.maps], "idempotents": sorted(idem),
               "monoid": monoid_to_dict(end.monoid)})
        return EXIT_OK
    print(f"{len(end)} endomorphisms ({len(idem)} idempotent)")
    for i, m in enumerate(end.maps):
        images = " ".join(A.name(x) for x in m.images)
        print(f"  s{i:<3}[{images}]{'  idempotent' if i in idem else ''}")
    return EXIT_OK


def cmd_bridge(args) -> int:
    A = load_algebra_arg(args.algebra)
    audit = bridge_check(A, limit=_limit(args), raise_on_violation=False)
    if args.json:
        _emit(audit.to_dict())
    else:
        print(f"{'property':<10}{'algebra':<10}{'End(A) on itself':<18}")
        a_v, s_v = audit.algebra_report.verdicts(), audit.mset_report.verdicts()
        labels = {"ri": "RI", "ur": "UR", "ri_star": "RI*", "ur_star": "UR*",
                  "idempotents_commute": "commuting"}
        for key in (*PROPERTIES, "idempotents_commute"):
            print(f"{labels[key]:<10}{_yn(a_v[key]):<10}{_yn(s_v[key]):<18}")
        for v in audit.violations:
            print(f"violation: {v}")
    if audit.violations:
        print(str(TransferViolation(audit.violations)), file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _read_presentation(arg: str) -> str:
    path = Path(arg)
    if "|" not in arg and path.is_file():
        return path.read_text(encoding="utf-8")
    return arg


def cmd_presentation(args) -> int:
    pres = parse_presentation(_read_presentation(args.presentation))
    try:
        res = realize(pres, max_elements=args.max_elements, max_word_length=args.max_length)
    except BoundExceeded as exc:
        growth = {str(k): v for k, v in sorted(exc.growth.items())}
        if args.json:
            _emit({"error": "BoundExceeded", "reason": exc.reason, "elements_found": exc.elements_found,
                   "frontier_size": exc.frontier_size, "growth": growth})
        else:
            print(f"bound exceeded: {exc.reason}")
            print(f"elements found: {exc.elements_found}, open frontier: {exc.frontier_size}")
            for k, words in growth.items():
                print(f"  length {k}: {len(words):>3}  {' '.join(words)}")
        return EXIT_BOUND
    except RewriteBudgetExceeded as exc:
        print(f"rewrite budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    print(dump_monoid(res.monoid))
    return EXIT_OK


def cmd_karoubi(args) -> int:
    A = load_algebra_arg(args.algebra)
    limit = _limit(args)
    end = endomorphisms(A, limit=limit)
    K = karoubi_envelope(end.monoid)
    C = category_of_retracts(A, end=end)
    env_ok = is_idempotent_completion(K, [0])
    ret_ok = is_idempotent_completion(C, [tuple(range(A.size))])
    audit = retract_audit(A, limit=limit)
    M = end.monoid
    homs = {f"{M.name(e)}->{M.name(f)}": n for (e, f), (n, _) in audit["pairs"].items()}
    out = {
        "envelope_objects": [M.name(e) for e in K.objects],
        "retracts": [[A.name(x) for x in o] for o in C.objects],
        "envelope_completion": {k: v.holds for k, v in env_ok.items()},
        "retracts_completion": {k: v.holds for k, v in ret_ok.items()},
        "hom_cardinalities": homs,
        "correspondence": audit["holds"],
    }
    if args.dump:
        Path(args.dump).write_text(K.to_json() + "\n", encoding="utf-8")
    if args.json:
        _emit(out)
    else:
        print(f"envelope objects: {', '.join(out['envelope_objects'])}")
        print(f"retracts: {' '.join('{' + ', '.join(r) + '}' for r in out['retracts'])}")
        for name, verdicts in (("envelope", out["envelope_completion"]), ("retracts", out["retracts_completion"])):
            print(f"{name}: splitting={_yn(verdicts['splitting'])} retract_of_D={_yn(verdicts['retract_of_D'])}")
        print("hom cardinalities: " + ", ".join(f"{k}:{v}" for k, v in homs.items()))
        print(f"matches category of retracts: {_yn(audit['holds'])}")
    return EXIT_OK


def cmd_search(args) -> int:
    if args.predicate == "ri-gap":
        res = find_ri_gap_witness(max_size=args.max_size, max_candidates=args.max_candidates, seed=args.seed)
        if res.witness is not None:
            A, rep_a, rep_s = res.witness
            _emit({"algebra": json.loads(dump_algebra(A)), "algebra_report": rep_a.verdicts(),
                   "mset_report": rep_s.verdicts()})
        _emit({"stats": {"checked": res.checked, "exhaustive": res.exhaustive,
                         "found": res.witness is not None}})
        return EXIT_OK

    def progress(k, stats):
        print(f"order {k}: {stats['monoids']} monoids, {stats['counterexamples']} counterexamples, "
              f"{stats['seconds']}s", file=sys.stderr, flush=True)

    def sink(M):
        print(dump_monoid(M), flush=True)

    cfg = SearchConfig(args.max_order, "counterexample", workers=args.workers, allow_long=args.long,
                       progress=progress if args.progress else None, sink=sink)
    res = find_counterexamples(cfg)
    _emit({"stats": {str(k): v for k, v in res.stats.items()}, "found": len(res.found),
           "elapsed": round(res.elapsed, 3)})
    if args.plot:
        from .plotting import save, search_figure
        save(search_figure(res.stats), args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.spec:
        A = parse_corpus_spec(args.spec)
        print(dump_algebra(A))
        return EXIT_OK
    for label, A in corpus(args.max_size, include_monoids=args.monoids):
        if args.json:
            _emit({"label": label, "size": A.size, "operations": len(A.signature)})
        else:
            print(f"{label:<28}size {A.size:<3}ops {len(A.signature)}")
    return EXIT_OK


# -- parser -------------------------------------------------------------------------------

def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument("--limit-endo", type=int, default=d(DEFAULT_ENDO_LIMIT), metavar="N",
                   help="largest carrier for endomorphism search (0 disables the guard)")
    p.add_argument("--seed", type=int, default=d(None), metavar="K", help="seed for randomized search")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fitzprops", description=__doc__.split("\n")[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    alg_help = "builtin:NAME, corpus:SPEC, or a JSON file (algebra or monoid)"

    p = sub.add_parser("report", parents=[common], help="decide the four properties and commuting idempotents")
    p.add_argument("algebra", help=alg_help)
    p.add_argument("--plot", metavar="PATH", help="write the End(A) Cayley table figure here")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("endo", parents=[common], help="list endomorphisms")
    p.add_argument("algebra", help=alg_help)
    p.set_defaults(func=cmd_endo)

    p = sub.add_parser("bridge", parents=[common], help="transfer audit between A and End(A) on itself")
    p.add_argument("algebra", help=alg_help)
    p.set_defaults(func=cmd_bridge)

    p = sub.add_parser("presentation", parents=[common], help="realize a finitely presented monoid")
    p.add_argument("presentation", help="presentation text or a file containing it")
    p.add_argument("--max-elements", type=int, default=64)
    p.add_argument("--max-length", type=int, default=8)
    p.set_defaults(func=cmd_presentation)

    p = sub.add_parser("karoubi", parents=[common], help="envelope of End(A) against the category of retracts")
    p.add_argument("algebra", help=alg_help)
    p.add_argument("--dump", metavar="PATH", help="write the envelope as category JSON")
    p.set_defaults(func=cmd_karoubi)

    p = sub.add_parser("search", parents=[common], help="search small monoids or algebras")
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--predicate", choices=("counterexample", "ri-gap"), default="counterexample")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--progress", action="store_true")
    p.add_argument("--long", action="store_true", help="allow order 7")
    p.add_argument("--max-size", type=int, default=3, help="ri-gap: largest algebra")
    p.add_argument("--max-candidates", type=int, default=20000, help="ri-gap: candidate budget")
    p.add_argument("--plot", metavar="PATH", help="write per-order counts as a bar chart")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("corpus", parents=[common], help="list corpus algebras or dump one")
    p.add_argument("spec", nargs="?", help="set:N, pointed_set:N, abelian:G or gset:G:ORBITS")
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--monoids", action="store_true", help="include canonical right sets of small monoids")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FitzError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
