"""Command-line entry point: ``ncgb <command> ...``.

Exit codes: 0 success, 1 failed check or expectation mismatch, 2 input
error, 3 a parametric verdict that cannot be decided.
"""
import argparse
import json
import sys

from .coeff import NonInvertibleParametric
from .fileformat import ParseError, InhomogeneousRelation, parse_presentation
from .freealg import format_terms
from .hilbert import count_irreducible, series_free, series_weighted_poly
from .minimal import (EliminationChoice, NotGeneratedInDegreeOne, ParametricModeUnsupported,
                      minimal_counts_by_degree, relation_type_from_counts, to_degree_one,
                      overlap_attribution)
from .ore import (check_sigma_injective, enumerate_degree_types, generated_in_degree_one,
                  validate_enveloping, validate_ore, UNDETERMINED, NOT_INJECTIVE)
from .rewrite import complete, default_max_degree
from .scenarios import SCENARIO_IDS, run_all, run_scenario

OK, FAILED, INPUT_ERROR, UNDECIDED = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(args, data, text):
    if args.format == "json":
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror))
    return parse_presentation(text + "\n")


def _sigma_report(p):
    out = {}
    undecided = False
    for j in p.adjunction[1:]:
        try:
            v = check_sigma_injective(p, j)
        except ValueError as exc:
            out[p.table.names[j]] = {"verdict": "Unavailable", "detail": str(exc)}
            continue
        out[p.table.names[j]] = v.as_dict(p.field)
        undecided = undecided or v.verdict == UNDETERMINED
        if v.verdict == NOT_INJECTIVE:
            out["_failed"] = True
    failed = out.pop("_failed", False)
    return out, failed, undecided


def _plan_report(p):
    try:
        plan = generated_in_degree_one(p)
    except NonInvertibleParametric as exc:
        return {"verdict": "Undetermined", "detail": str(exc)}, True
    d = {"verdict": "yes" if plan.ok else "no",
         "steps": ["%s via %s" % (p.table.names[v], p.relation_label(k)) for k, v, _e in plan.steps]}
    if plan.stuck:
        d["stuck"] = [p.table.names[v] for v in plan.stuck]
    return d, False


def _validation(args, enveloping):
    p = _load(args.file)
    rep = validate_enveloping(p) if enveloping else validate_ore(p)
    data = {"file": args.file, "name": p.name, "valid": rep.ok,
            "failures": [f.as_dict(p.table) for f in rep.failures],
            "sigma_delta": [sd.as_dict() for sd in rep.sigma_delta]}
    if rep.diamond is not None:
        data["ambiguities"] = {"checked": rep.diamond.checked, "resolved": rep.diamond.resolved}
    undecided = False
    if rep.ok and not enveloping:
        data["sigma"], failed, undecided = _sigma_report(p)
        if failed:
            data["valid"] = False
    if rep.ok:
        data["degree_one"], und = _plan_report(p)
        undecided = undecided or und
    lines = ["%s: %s" % (p.name or args.file, "valid" if data["valid"] else "invalid")]
    if "ambiguities" in data:
        lines.append("ambiguities: %d checked, %d resolved"
                     % (data["ambiguities"]["checked"], data["ambiguities"]["resolved"]))
    for f in data["failures"]:
        where = "".join(f.get("pair", [])) or f.get("detail", "")
        lines.append("failure %s at %s: %s" % (f["kind"], where, f.get("witness", f.get("detail", ""))))
    for name, v in data.get("sigma", {}).items():
        lines.append("sigma_%s: %s" % (name, v["verdict"]))
    if "degree_one" in data:
        d = data["degree_one"]
        lines.append("generated in degree one: %s %s" % (d["verdict"], "; ".join(d.get("steps", []))))
    _emit(args, data, "\n".join(lines))
    if not data["valid"]:
        return FAILED
    return UNDECIDED if undecided else OK


def cmd_check_ore(args):
    return _validation(args, False)


def cmd_check_env(args):
    return _validation(args, True)


def _trace_lines(trace, table):
    lines = []
    for t in trace:
        lines.append("deg %d %s %s -> %s" % (t["degree"], t["source"], t.get("ambiguity") or t.get("word", ""),
                                             t.get("added") or "0"))
    return lines


def cmd_gb(args):
    p = _load(args.file)
    N = args.max_deg if args.max_deg is not None else default_max_degree(p.relations)
    gb = complete(p.relations, N, p.table, p.field)
    rules = []
    for r in sorted(gb.rules, key=lambda r: p.table.key(r.lead)):
        rules.append({"degree": r.degree, "lead": p.table.word_str(r.lead),
                      "tail": format_terms(sorted(r.tail.items(), key=lambda t: p.table.key(t[0]),
                                                  reverse=True), p.table, p.field)})
    data = {"file": args.file, "complete_to": N, "rules": rules}
    lines = ["%d rules, complete to degree %d" % (len(rules), N)]
    lines += ["[%d] %s -> %s" % (r["degree"], r["lead"], r["tail"]) for r in rules]
    if args.trace:
        data["trace"] = [{k: v for k, v in t.items()} for t in gb.trace]
        lines += ["trace:"] + _trace_lines(gb.trace, p.table)
    _emit(args, data, "\n".join(lines))
    return OK


def cmd_hilbert(args):
    N = args.terms
    if args.degrees:
        try:
            degs = [int(x) for x in args.degrees.split(",") if x.strip()]
        except ValueError:
            raise InputError("--degrees expects comma-separated integers")
        if not degs or min(degs) < 1:
            raise InputError("degrees must be positive")
        s = series_weighted_poly(degs, N)
        free = series_free(degs, N)
        data = {"degrees": degs, "commutative": list(s), "free": list(free)}
        text = "commutative: %s\nfree: %s" % (s.format(), free.format())
    elif args.file:
        p = _load(args.file)
        gb = complete(p.relations, N, p.table, p.field)
        s = count_irreducible(gb.leads(), p.table.degrees, N)
        data = {"file": args.file, "series": list(s)}
        text = s.format()
    else:
        raise InputError("give a presentation file or --degrees")
    _emit(args, data, text)
    return OK


def _parse_plan(text, p):
    steps = []
    for part in text.split(","):
        if ":" not in part:
            raise InputError("plan entries look like VAR:LEAD, e.g. x3:x5*x4")
        var, lead = [s.strip() for s in part.split(":", 1)]
        try:
            w = p.table.word(*[s.strip() for s in lead.split("*")])
            v = p.var(var)
        except (KeyError, ValueError):
            raise InputError("unknown variable in plan entry %r" % part)
        ks = [k for k, r in enumerate(p.relations) if r.leading_term()[0] == w]
        if not ks:
            raise InputError("no relation with leading word %s" % lead)
        steps.append((ks[0], v))
    return steps


def cmd_relation_type(args):
    p = _load(args.file)
    if args.eliminate == "auto":
        choice = "auto"
    else:
        choice = EliminationChoice(_parse_plan(args.eliminate, p),
                                   args.reorder.split(",") if args.reorder else None)
    q = to_degree_one(p, choice)
    gb = complete(q.relations, args.max_deg, q.table, q.field)
    counts = minimal_counts_by_degree(gb, max_degree=args.max_deg)
    rt = list(relation_type_from_counts(counts))
    data = {"file": args.file, "max_degree": args.max_deg, "relation_type": rt,
            "variables": list(q.table.names)}
    text = "relation type %s (through degree %d)" % (tuple(rt), args.max_deg)
    if args.trace:
        att = {d: overlap_attribution(gb, d) for d in range(2, args.max_deg + 1)}
        data["attribution"] = {str(d): v for d, v in att.items() if v}
        for d, v in att.items():
            for e in v:
                text += "\n[%d] %s %s %s" % (d, e["lead"], e["source"], e.get("ambiguity", ""))
    _emit(args, data, text)
    return OK


def cmd_degree_types(args):
    types = [list(t) for t in enumerate_degree_types(args.dim)]
    _emit(args, {"dim": args.dim, "degree_types": types},
          "\n".join("(%s)" % ",".join(map(str, t)) for t in types))
    return OK


def cmd_reproduce(args):
    if args.id == "all":
        rep = run_all(jobs=args.jobs)
    elif args.id in SCENARIO_IDS:
        rep = run_scenario(args.id)
    else:
        raise InputError("unknown scenario %r (known: %s)" % (args.id, ", ".join(SCENARIO_IDS)))
    if args.format == "json":
        sys.stdout.write(rep.to_json(timings=not args.no_timings) + "\n")
    else:
        sys.stdout.write(rep.to_text())
    return rep.exit_code


def build_parser():
    ap = argparse.ArgumentParser(prog="ncgb", description="Groebner bases, Ore presentations "
                                 "and relation types over exact fields.")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--trace", action="store_true", help="include the completion trace")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-ore", help="validate an iterated Ore presentation")
    s.add_argument("file")
    s.set_defaults(func=cmd_check_ore)

    s = sub.add_parser("check-env", help="validate an enveloping-algebra presentation")
    s.add_argument("file")
    s.set_defaults(func=cmd_check_env)

    s = sub.add_parser("gb", help="complete to a reduced Groebner basis")
    s.add_argument("file")
    s.add_argument("--max-deg", type=int)
    s.set_defaults(func=cmd_gb)

    s = sub.add_parser("hilbert", help="truncated Hilbert series")
    s.add_argument("file", nargs="?")
    s.add_argument("--degrees")
    s.add_argument("--terms", type=int, default=8)
    s.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("relation-type", help="minimal relation degrees on degree-one generators")
    s.add_argument("file")
    s.add_argument("--max-deg", type=int, default=8)
    s.add_argument("--eliminate", default="auto",
                   help="'auto' or VAR:LEAD,... such as x3:x5*x4,x2:x4*x3")
    s.add_argument("--reorder", help="comma-separated order (smallest first) for the result")
    s.set_defaults(func=cmd_relation_type)

    s = sub.add_parser("degree-types", help="admissible degree types")
    s.add_argument("--dim", type=int, default=5)
    s.set_defaults(func=cmd_degree_types)

    s = sub.add_parser("reproduce", help="run corpus scenarios")
    s.add_argument("id", help="scenario id or 'all'")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--no-timings", action="store_true", help="omit timings from JSON output")
    s.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InhomogeneousRelation, InputError, NotGeneratedInDegreeOne,
            ParametricModeUnsupported, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return INPUT_ERROR
    except NonInvertibleParametric as exc:
        sys.stderr.write("undetermined: %s\n" % exc)
        return UNDECIDED


if __name__ == "__main__":
    sys.exit(main())
