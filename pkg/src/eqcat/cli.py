"""Command line entry point.

Exit codes: 0 ok, 1 verification failure, 2 usage or parse error, 3 unknown result (budget).
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import certificates
from .category import UNKNOWN, CategoryQuery, CategorySolver, catg_query, stc_query, tc_query, tcg_query
from .gspace import marked, trivialize
from .homotopy import DEFAULT_BUDGET, HomotopyEngine
from .io import CATALOG, SpaceFileError, catalog_entry, load_space, serialize_space, write_atomic

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3
INVARIANTS = ("cat", "catG", "catA", "tc", "tcg", "stc", "whitehead")


class UsageError(Exception):
    pass


def _load(spec: str):
    if spec in CATALOG:
        return catalog_entry(spec).load()
    if os.path.exists(spec):
        return load_space(spec)
    raise UsageError(f"{spec!r} is neither a catalog id nor a readable file")


def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _query(args, loaded) -> CategoryQuery:
    X = loaded.space
    inv = args.invariant
    if inv in ("catA", "whitehead"):
        name = args.subset or ("all" if inv == "whitehead" else None)
        if name is None:
            raise UsageError("catA needs --subset NAME")
        if name not in loaded.subsets:
            raise UsageError(f"unknown subset {name!r}; available: {', '.join(sorted(loaded.subsets))}")
        return CategoryQuery(X, marked(X, loaded.subsets[name], name), inv, args.bound)
    if inv == "cat":
        return catg_query(trivialize(X), args.bound, label="cat")
    if inv == "catG":
        return catg_query(X, args.bound)
    return {"tc": tc_query, "tcg": tcg_query, "stc": stc_query}[inv](X, args.bound)


def cmd_compute(args) -> int:
    loaded = _load(args.space)
    query = _query(args, loaded)
    solver = CategorySolver(HomotopyEngine(args.budget), args.bound)
    if args.invariant == "whitehead":
        cert = solver.whitehead_cat_A(query)
    else:
        cert = solver.cat_A(query)
    doc = certificates.to_json(cert)
    if args.deterministic:
        doc.get("stats", {}).pop("seconds", None)
        doc = certificates.seal({k: v for k, v in doc.items() if k != "integrity"})
    _emit(json.dumps(doc, indent=None if args.out else 1, sort_keys=True), args.out)
    if args.out:
        print(f"{args.invariant}({loaded.space.name}) = {cert.value}")
    return EXIT_UNKNOWN if cert.value == UNKNOWN else EXIT_OK


def cmd_verify(args) -> int:
    from .theorems import SUITES, Evaluator, run_suite, catalog_instances
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for n in names:
        if n not in SUITES:
            raise UsageError(f"unknown suite {n!r}; available: all, {', '.join(SUITES)}")
    ev = Evaluator(budget=args.budget, bound=args.bound)
    instances = catalog_instances()
    reports = []
    for n in names:
        rep = run_suite(n, ev, instances)
        print(rep.summary(), flush=True)
        for c in rep.failures:
            print(f"  FAIL {c.instance}: {c.statement} {c.values}")
        reports.append(rep)
    if args.out:
        doc = {"schema_version": certificates.SCHEMA_VERSION, "kind": "verify",
               "reports": [r.as_dict() for r in reports]}
        write_atomic(args.out, json.dumps(doc, indent=1, sort_keys=True) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_planner(args) -> int:
    from . import sphere
    if args.kind == "free":
        doc = sphere.validate_free_transitive(args.samples, args.seed)
        doc["passed"] = doc["endpoint_residual"] <= 1e-9
    else:
        if args.n < 2 or args.n % 2:
            raise UsageError("the reflection planner needs an even n >= 2")
        rep = sphere.validate_planner(args.n, args.samples, args.adversarial, args.seed)
        doc = rep.as_dict()
    doc.update({"schema_version": certificates.SCHEMA_VERSION, "kind": f"planner-{args.kind}"})
    text = json.dumps(doc, indent=1, sort_keys=True, default=float)
    if args.out:
        write_atomic(args.out, text + "\n")
    summary = {k: doc.get(k) for k in ("domain_count", "coverage", "endpoint_residual", "orbit_residual",
                                       "equivariance_residual", "continuity_constant", "passed")}
    print(json.dumps(summary, default=float))
    return EXIT_OK if doc["passed"] else EXIT_FAIL


def cmd_check(args) -> int:
    try:
        with open(args.certificate, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read certificate: {exc}") from None
    verdict = certificates.check(doc)
    print("valid" if verdict else f"invalid: {verdict.reason}")
    return EXIT_OK if verdict else EXIT_FAIL


def cmd_catalog(args) -> int:
    if args.action == "list":
        for ident, entry in CATALOG.items():
            X = entry.space
            print(f"{ident:20s} |X|={X.n:<3d} |G|={X.group.order:<3d} {entry.note}")
        return EXIT_OK
    if not args.id:
        raise UsageError("catalog dump needs an id")
    loaded = catalog_entry(args.id).load()
    _emit(json.dumps(serialize_space(loaded.space, loaded.subsets), indent=1), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eqcat", description=__doc__.splitlines()[0] if __doc__ else None)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=16, help="largest cover size searched")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="fence-search node cap per query")
    common.add_argument("--deterministic", action="store_true", help="omit timing data from outputs")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--samples", type=int, default=100_000)
    common.add_argument("--threads", type=int, default=1, help="solver parallelism cap (searches are serial)")
    common.add_argument("-o", "--out", help="write the JSON result here (atomically)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="compute an invariant with a certificate")
    c.add_argument("space", help="catalog id or space file")
    c.add_argument("invariant", choices=INVARIANTS)
    c.add_argument("--subset", help="named subset A for catA / whitehead")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", parents=[common], help="run theorem suites")
    v.add_argument("suite", help="suite id or 'all'")
    v.set_defaults(func=cmd_verify)

    pl = sub.add_parser("planner", parents=[common], help="validate a sphere motion planner")
    pl.add_argument("--kind", choices=("reflection", "free"), default="reflection")
    pl.add_argument("--n", type=int, default=2, help="sphere dimension (even)")
    pl.add_argument("--adversarial", type=int, default=1000)
    pl.set_defaults(func=cmd_planner)

    ch = sub.add_parser("check", help="replay a certificate file")
    ch.add_argument("certificate")
    ch.set_defaults(func=cmd_check)

    cat = sub.add_parser("catalog", parents=[common], help="builtin instances")
    cat.add_argument("action", choices=("list", "dump"))
    cat.add_argument("id", nargs="?")
    cat.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SpaceFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, KeyError) as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
