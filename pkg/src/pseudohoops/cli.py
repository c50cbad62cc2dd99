"""Command-line interface: ``pseudohoops <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import checks
from .algebra import Algebra, describe, predicates
from .canonical import certificate_hash
from .classify import (
    boolean_applicable,
    boolean_filters,
    classify_filter,
    fantastic_filters,
    involutive_filters,
)
from .constructors import BUILTIN_NAMES, builtin, chain, interval
from .errors import AxiomViolation, PseudoHoopError
from .fileformat import load, to_document
from .filters import enumerate_filters, generated_filter, maximal_filters, normal_filters, quotient
from .realstates import BOSBACH, MEASURE, solution_polytope
from .search import SearchQuery, run_query
from .states import enumerate_state_morphisms, enumerate_state_operators

REPORT_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FILTER_CLASSES = ("all", "normal", "maximal", "involutive", "fantastic", "boolean")
STATE_KINDS = ("I", "II", "III", "morphism", BOSBACH, MEASURE)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def resolve_algebra(source: str) -> Algebra:
    """A file path, a built-in name (any directory prefix is ignored), ``chain:M`` or ``interval:U``."""
    path = Path(source)
    if path.is_file():
        return load(path)
    base = path.name.removesuffix(".json")
    if base in BUILTIN_NAMES:
        return builtin(base)
    kind, _, arg = source.partition(":")
    if kind in ("chain", "interval") and arg.isdigit():
        return chain(int(arg)) if kind == "chain" else interval(int(arg))
    raise UsageError(
        f"cannot resolve algebra {source!r}: not a file, not one of {', '.join(BUILTIN_NAMES)}, "
        "not chain:M or interval:U"
    )


def split_labels(text: str) -> list[str]:
    """Split on commas outside parentheses, so product labels like ``(a,b)`` stay whole."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    return [x for x in out if x]


def _identity(A: Algebra) -> dict:
    return {"name": A.name, "order": A.n, "certificate": certificate_hash(A)}


def _filter_record(A, F) -> dict:
    rec = {"members": F.labels()}
    rec.update({k: v for k, v in classify_filter(A, F).as_dict().items() if k != "members"})
    rec["maximal"] = F.maximal
    return rec


# ---------------------------------------------------------------------------
# commands: each returns (exit code, payload, text lines)


def cmd_validate(args):
    try:
        A = resolve_algebra(args.algebra)
    except AxiomViolation as exc:
        found = [{"axiom": v.axiom, "witness": list(v.witness)} for v in exc.violations]
        return EXIT_FAIL, None, {"valid": False, "violations": found}, [f"not a pseudo-hoop: {exc}"]
    text = f"valid pseudo-hoop, {describe(A)}"
    return EXIT_OK, A, {"valid": True, "description": describe(A)}, [text]


def cmd_info(args):
    A = resolve_algebra(args.algebra)
    rep = predicates(A)
    d = A.ops
    classes = {
        "idempotents": A.label_set(d.idempotents),
        "involutive": A.label_set(d.involutive_elements),
        "dense": A.label_set(d.dense_elements),
    }
    payload = {"predicates": rep.as_dict(), "elements": list(A.labels), "classes": classes, "tables": to_document(A)}
    lines = [f"{A.name}: order {A.n}, certificate {certificate_hash(A)}", describe(A, rep)]
    for k, v in rep.as_dict().items():
        lines.append(f"  {k}: {'n/a' if v is None else str(v).lower()}")
    for k, v in classes.items():
        lines.append(f"  {k}: {{{','.join(v)}}}")
    return EXIT_OK, A, payload, lines


def cmd_filters(args):
    A = resolve_algebra(args.algebra)
    cls = args.filter_class
    if cls == "all":
        fs = enumerate_filters(A)
    elif cls == "normal":
        fs = normal_filters(A)
    elif cls == "maximal":
        fs = maximal_filters(A)
    elif cls == "involutive":
        fs = involutive_filters(A)
    elif cls == "fantastic":
        fs = fantastic_filters(A)
    else:
        if not boolean_applicable(A):
            raise UsageError("Boolean filters need a bounded Wajsberg pseudo-hoop")
        fs = boolean_filters(A)
    recs = [_filter_record(A, F) for F in fs]
    lines = [f"{len(fs)} {cls} filter(s) of {A.name}"]
    for r in recs:
        tags = [k for k in ("normal", "involutive", "fantastic", "boolean", "maximal") if r.get(k)]
        lines.append(f"  {{{','.join(r['members'])}}}  {' '.join(tags)}".rstrip())
    return EXIT_OK, A, {"class": cls, "filters": recs}, lines


def cmd_quotient(args):
    A = resolve_algebra(args.algebra)
    asked = split_labels(args.filter)
    try:
        gens = A.indices(asked)
    except KeyError as exc:
        raise UsageError(f"unknown element {exc.args[0]!r}") from None
    F = generated_filter(A, gens)
    changed = F.members != gens
    res = quotient(A, F)
    Q = res.quotient
    payload = {
        "requested": asked,
        "filter": F.labels(),
        "closureChanged": changed,
        "classes": [A.label_set(c) for c in res.classes],
        "quotient": to_document(Q),
        "quotientDescription": describe(Q),
    }
    lines = []
    if changed:
        lines.append(f"closed {{{','.join(asked)}}} to the filter {{{','.join(F.labels())}}}")
    lines.append(f"{Q.name}: order {Q.n}, {describe(Q)}")
    for c, lab in zip(res.classes, Q.labels):
        lines.append(f"  [{lab}] = {{{','.join(A.label_set(c))}}}")
    return EXIT_OK, A, payload, lines


def cmd_states(args):
    A = resolve_algebra(args.algebra)
    kind = args.kind
    if kind in (BOSBACH, MEASURE):
        P = solution_polytope(A, kind)
        verts = [v.as_dict() for v in P.vertices]
        payload = {"kind": kind, "dimension": P.dimension, "vertices": verts}
        lines = [f"{kind} states of {A.name}: dimension {P.dimension}, {len(verts)} vertex(es)"]
        for v in verts:
            lines.append("  " + " ".join(f"{k}={q}" for k, q in v.items()))
        return EXIT_OK, A, payload, lines
    maps = enumerate_state_morphisms(A) if kind == "morphism" else enumerate_state_operators(A, kind)
    recs = [
        {
            "images": u.labels(A),
            "kinds": sorted(u.kinds),
            "fixesZero": u.fixes_zero,
            "kernel": u.kernel.labels(),
        }
        for u in maps
    ]
    lines = [f"{len(recs)} map(s) of kind {kind} on {A.name} (images of {' '.join(A.labels)})"]
    for r in recs:
        z = "" if r["fixesZero"] is None else ("  fixes 0" if r["fixesZero"] else "")
        lines.append(f"  {' '.join(r['images'])}  ker={{{','.join(r['kernel'])}}}{z}")
    return EXIT_OK, A, {"kind": kind, "maps": recs}, lines


def cmd_search(args):
    if args.order < 1:
        raise UsageError("--order must be at least 1")
    mode = "first" if args.first else "all"
    found = run_query(SearchQuery(range(1, args.order + 1), args.predicate, mode))
    recs = [{"name": B.name, "order": B.n, "certificate": certificate_hash(B), "description": describe(B)} for B in found]
    lines = [f"{len(recs)} algebra(s) of order <= {args.order} satisfy {args.predicate!r}"]
    lines += [f"  {r['name']}: {r['description']}" for r in recs]
    code = EXIT_FAIL if args.first and found else EXIT_OK
    payload = {"predicate": args.predicate, "maxOrder": args.order, "mode": mode, "matches": recs}
    if args.first:
        payload["counterexample"] = recs[0] if recs else None
    return code, None, payload, lines


def cmd_check(args):
    if args.list:
        recs = [{"id": c.id, "criterion": c.criterion, "summary": c.summary} for c in checks.CLAIMS]
        return EXIT_OK, None, {"claims": recs}, [f"{c.id}  {c.summary}" for c in checks.CLAIMS]
    claims = checks.CLAIMS
    if args.claim:
        if args.claim not in checks.CLAIM_IDS:
            raise UsageError(f"unknown claim {args.claim!r}; see check --list")
        claims = (checks.get_claim(args.claim),)
    if args.algebra:
        A = resolve_algebra(args.algebra)
        outcomes = checks.check_algebra(A, claims)
        results = [{"claim": cid, **o.as_dict()} for cid, o in outcomes.items()]
    else:
        A = None
        results = [
            {"claim": r.claim, **r.outcome.as_dict(), "counts": r.counts}
            for r in checks.sweep(checks.standard_corpus(), claims)
        ]
    failed = [r for r in results if r["status"] == checks.FAIL]
    lines = []
    for r in results:
        line = f"{r['status']:<15}{r['claim']}"
        if r["status"] == checks.FAIL:
            line += f"  witness: {json.dumps(r['witness'], sort_keys=True)}"
        lines.append(line)
    lines.append(f"{len(failed)} failed, {len(results) - len(failed)} passed or not applicable")
    return (EXIT_FAIL if failed else EXIT_OK), A, {"results": results}, lines


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pseudohoops", description="Finite pseudo-hoops: filters, states and model search.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seedless", action="store_true", help="accepted for scripts; every command is deterministic")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def algebra_cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("algebra", help="file, built-in name, chain:M or interval:U")
        s.set_defaults(fn=fn)
        return s

    algebra_cmd("validate", cmd_validate, "check the axioms")
    algebra_cmd("info", cmd_info, "structural predicates and element classes")
    s = algebra_cmd("filters", cmd_filters, "enumerate and classify filters")
    s.add_argument("--class", dest="filter_class", choices=FILTER_CLASSES, default="all")
    s = algebra_cmd("quotient", cmd_quotient, "quotient by the filter generated by some elements")
    s.add_argument("--filter", required=True, help="comma-separated element labels")
    s = algebra_cmd("states", cmd_states, "state operators, morphisms or real-valued states")
    s.add_argument("--kind", choices=STATE_KINDS, default="I")
    s = sub.add_parser("search", help="enumerate algebras up to an order matching a predicate")
    s.add_argument("--order", type=int, required=True, help="largest carrier size")
    s.add_argument("--predicate", default="True")
    s.add_argument("--first", action="store_true", help="stop at the first match; exit 1 if one exists")
    s.set_defaults(fn=cmd_search)
    s = sub.add_parser("check", help="run the claim suite on one algebra or the whole corpus")
    s.add_argument("algebra", nargs="?")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--claim")
    g.add_argument("--list", action="store_true")
    s.set_defaults(fn=cmd_check)
    return p


def _emit(fmt: str, command: list[str], code: int, A: Optional[Algebra], payload, lines, error=None):
    if fmt == "json":
        report = {"reportVersion": REPORT_VERSION, "command": command, "exitCode": code}
        if A is not None:
            report["algebra"] = _identity(A)
        if error is not None:
            report["error"] = error
        else:
            report["result"] = payload
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True, default=str) + "\n")
        return
    if error is not None:
        sys.stderr.write(f"pseudohoops: error: {error}\n")
        return
    sys.stdout.write("\n".join(lines) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "json" if "--format=json" in argv or _pair(argv, "--format") == "json" else "text"
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        _emit(fmt, argv, EXIT_USAGE, None, None, None, error=str(exc))
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        code, A, payload, lines = args.fn(args)
    except (UsageError, PseudoHoopError, ValueError, OSError) as exc:
        _emit(args.format, argv, EXIT_USAGE, None, None, None, error=f"{type(exc).__name__}: {exc}")
        return EXIT_USAGE
    _emit(args.format, argv, code, A, payload, lines)
    return code


def _pair(argv, flag):
    for i, a in enumerate(argv[:-1]):
        if a == flag:
            return argv[i + 1]
    return None


if __name__ == "__main__":
    sys.exit(main())
