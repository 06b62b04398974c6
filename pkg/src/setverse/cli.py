"""Command line front door: ``setverse <command> ...``.

Exit status is 0 on success, 1 when ``--strict`` is given and a verdict-level
finding was made (an axiom fails, structures are inequivalent, a category is
only partial), and 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .categories import (
    build_set_category,
    check_category_laws,
    enumerate_functors,
    functor_category,
    load_category,
)
from .classrank import classify
from .config import Guards, default_guards
from .elementarity import distinguishing_formula, ef_equivalent
from .errors import SetverseError
from .hf import HFSet, format_set, parse_literal
from .logic import evaluate, parse_formula, to_text
from .multiverse import (
    FAILS,
    OVERFLOW,
    Catalogue,
    SchemaInstance,
    audit_axioms,
    load_model,
    universe_models,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- rendering ----------------------------------------------------------------

def plain(value: Any) -> Any:
    """JSON-ready form: sets become literals, containers recurse."""
    if isinstance(value, HFSet):
        return format_set(value)
    if isinstance(value, dict):
        return {str(plain(k)) if not isinstance(k, str) else k: plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


def assignment_text(env: dict | None) -> str:
    if not env:
        return ""
    if all(isinstance(v, dict) for v in env.values()):
        # one witness per universe
        return "; ".join(f"{k}: {assignment_text(v)}" for k, v in env.items())
    return ", ".join(f"{k}={format_set(v) if isinstance(v, HFSet) else v}" for k, v in env.items())


def audit_json(report, timing: bool) -> dict:
    rows = []
    for e in report.entries:
        row: dict[str, Any] = {"id": e.id, "level": e.level, "verdict": e.verdict}
        if e.universe is not None:
            row["universe"] = e.universe
        if e.witness is not None:
            row["witness"] = plain(e.witness)
        if e.counterexample is not None:
            row["counterexample"] = plain(e.counterexample)
        if e.overflow is not None:
            row["overflow"] = e.overflow
        if e.parts:
            row["parts"] = dict(e.parts)
        if e.note:
            row["note"] = e.note
        row["millis"] = round(e.millis, 3) if timing else None
        rows.append(row)
    return {
        "model": report.model,
        "reading": report.reading,
        "overflowBudget": report.overflow_budget,
        "axioms": rows,
        "divergence": report.divergence(),
    }


def audit_text(report, timing: bool) -> str:
    if not report.entries:
        return "no axioms requested"
    lines = [f"model {report.model}  reading {report.reading}"]
    width = max(len(e.id) for e in report.entries)
    for e in report.entries:
        parts = [f"{e.id:<{width}}", e.verdict.upper()]
        if e.verdict == OVERFLOW:
            parts.append(f"overflow {e.overflow}")
        if e.witness:
            parts.append(f"witness {assignment_text(e.witness)}")
        if e.counterexample:
            parts.append(f"counterexample {assignment_text(e.counterexample)}")
        if e.universe and e.level != "class":
            parts.append(f"in {e.universe}")
        if e.note:
            parts.append(f"({e.note})")
        if timing:
            parts.append(f"{e.millis:.1f} ms")
        lines.append("  ".join(parts))
    for row in report.divergence():
        if row["diverges"]:
            held = [i for i in row["holding"] if "[" not in i] or row["holding"]
            lines.append(f"divergence: {row['claim']} holds via {', '.join(held)}")
    return "\n".join(lines)


def emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


# -- commands -----------------------------------------------------------------

def _guards(args) -> Guards:
    g = default_guards()
    return g.with_overrides(args.guards) if args.guards else g


def _instance(spec: str) -> tuple[str, str, SchemaInstance]:
    """``separation:name=phi`` or ``replacement:name=phi`` (parameters after ``;``)."""
    head, sep, phi = spec.partition("=")
    schema, colon, name = head.partition(":")
    if not sep or not colon or schema not in ("separation", "replacement"):
        raise UsageError(f"bad --instance {spec!r}; expected separation:NAME=FORMULA")
    params: tuple[str, ...] = ()
    if ";" in phi:
        phi, _, plist = phi.partition(";")
        params = tuple(p.strip() for p in plist.split(",") if p.strip())
    slots = ("x", "y") if schema == "replacement" else None
    return schema, name.strip(), SchemaInstance(schema, phi.strip(), params=params, slots=slots)


def cmd_audit(args) -> int:
    guards = _guards(args)
    catalogue = Catalogue()
    for spec in args.instance:
        schema, name, inst = _instance(spec)
        catalogue.add_instance(schema, name, inst)
    catalogue.resolve(args.axioms)  # unknown ids fail before the model is built
    model = load_model(args.model, guards)
    report = audit_axioms(model, args.axioms, args.overflow, catalogue=catalogue, guards=guards)
    emit(args, audit_json(report, args.timing), audit_text(report, args.timing))
    failed = any(e.verdict == FAILS for e in report.entries)
    return 1 if args.strict and failed else 0


def _assignment(items: Sequence[str]) -> dict[str, HFSet]:
    env = {}
    for item in items:
        name, sep, literal = item.partition("=")
        if not sep:
            raise UsageError(f"bad --assign {item!r}; expected NAME=LITERAL")
        env[name.strip()] = parse_literal(literal)
    return env


def cmd_eval(args) -> int:
    guards = _guards(args)
    model = load_model(args.model, guards)
    names = [u.name for u in model.multiverse] + ["M"]
    f = parse_formula(args.formula, constants=names)
    env = _assignment(args.assign)
    if args.relativize:
        try:
            u = model.universe(args.relativize)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        res = universe_models(u, f, env, ambient=model, budget=guards.eval_budget)
    else:
        res = evaluate(model.structure(), f, env, budget=guards.eval_budget)
    text = "true" if res.value else "false"
    if res.witness:
        text += f", witness {assignment_text(res.witness)}"
    if res.counterexample:
        text += f", counterexample {assignment_text(res.counterexample)}"
    payload = {"value": res.value, "formula": to_text(f), "relativize": args.relativize,
               "witness": plain(res.witness), "counterexample": plain(res.counterexample)}
    emit(args, payload, text)
    return 1 if args.strict and not res.value else 0


def cmd_rank(args) -> int:
    guards = _guards(args)
    model = load_model(args.model, guards)
    x = parse_literal(args.class_)
    result = classify(x, model, guards)
    good = result.good
    if args.universe:
        if args.universe not in good:
            raise UsageError(f"no universe named {args.universe!r} in model {model.name}")
        good = {args.universe: good[args.universe]}

    def show(r):
        return "none within guard" if r is None else str(r)

    lines = [f"good rank {show(r)} in {name}" for name, r in good.items()]
    lines += [f"pseudo-good rank {show(result.pseudo_good)}",
              f"esoteric rank {show(result.esoteric)}",
              f"kind {result.kind} (guard {result.guard})"]
    payload = {"class": format_set(x), "good": good, "pseudoGood": result.pseudo_good,
               "esoteric": result.esoteric, "kind": result.kind, "guard": result.guard}
    emit(args, payload, "\n".join(lines))
    return 1 if args.strict and result.kind == "strange_within_bounds" else 0


def _single_universe(ref: str, guards: Guards, which: str | None):
    model = load_model(ref, guards)
    if which:
        return model.universe(which)
    if len(model.multiverse) != 1:
        raise UsageError(f"model {model.name} has {len(model.multiverse)} universes; "
                         "pick one with --universe")
    return model.multiverse[0]


def cmd_ef(args) -> int:
    guards = _guards(args)
    a = _single_universe(args.left, guards, args.left_universe)
    b = _single_universe(args.right, guards, args.right_universe)
    same = ef_equivalent(a, b, args.depth, guards)
    payload: dict[str, Any] = {"equivalent": same, "depth": args.depth}
    text = f"{'equivalent' if same else 'not equivalent'} up to quantifier rank {args.depth}"
    if args.witness and not same:
        phi = distinguishing_formula(a, b, args.depth, guards)
        payload["distinguisher"] = to_text(phi)
        text += f"\ndistinguisher (true on the left): {to_text(phi)}"
    emit(args, payload, text)
    return 1 if args.strict and not same else 0


def _law_json(report) -> dict:
    return {
        "verdict": report.verdict,
        "missingIdentities": plain(report.missing_identities),
        "nonClosedCompositions": plain(report.non_closed_compositions),
        "identityViolations": plain(report.identity_violations),
        "associativityViolations": plain(report.associativity_violations),
        "notes": list(report.notes),
    }


def cmd_setcat(args) -> int:
    guards = _guards(args)
    u = _single_universe(args.model, guards, args.universe)
    cat, report = build_set_category(u, guards, sample=args.sample, seed=args.seed)
    payload: dict[str, Any] = {"universe": u.name, "objects": len(cat.objects),
                               "arrows": len(cat.arrows), "laws": _law_json(report)}
    lines = [f"Set_{u.name}: {len(cat.objects)} objects, {len(cat.arrows)} arrows, "
             f"verdict {report.verdict}"]
    if args.laws:
        payload["arrowList"] = sorted(str(a) for a in cat.arrows)
        lines += [f"  arrow {a}" for a in sorted(cat.arrows)]
        lines += [f"  missing identity at {format_set(x)}" for x in report.missing_identities]
        lines += [f"  composite not in {u.name}: {f} o {g}" for f, g in report.non_closed_compositions]
        lines += [f"  associativity fails at {t}" for t in report.associativity_violations]
        lines += [f"  note: {n}" for n in report.notes]
    emit(args, payload, "\n".join(lines))
    return 1 if args.strict and not report.is_category else 0


def cmd_functors(args) -> int:
    guards = _guards(args)
    c, d = load_category(args.source), load_category(args.target)
    functors = enumerate_functors(c, d, guards)
    fc = functor_category(c, d, guards)
    report = check_category_laws(fc)
    payload = {"from": c.name, "to": d.name, "functors": len(functors),
               "transformations": len(fc.arrows), "laws": _law_json(report),
               "objectMaps": [plain(F.obj) for F in functors]}
    lines = [f"{len(functors)} functors {c.name} -> {d.name}, "
             f"{len(fc.arrows)} natural transformations, functor category {report.verdict}"]
    lines += ["  " + ", ".join(f"{a}->{b}" for a, b in F.obj.items()) for F in functors]
    emit(args, payload, "\n".join(lines))
    return 1 if args.strict and not report.is_category else 0


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--strict", action="store_true",
                        help="exit 1 on verdict-level findings")
    common.add_argument("--guards", metavar="K=V,...",
                        help="override resource guards, e.g. ef_depth=3")

    parser = _Parser(prog="setverse", description="Finite multiverse workbench.")
    parser.add_argument("--version", action="version", version=f"setverse {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("audit", parents=[common], help="audit axioms against a model")
    p.add_argument("--model", required=True, help="shipped model name or model file")
    p.add_argument("--axioms", default="all", help="comma separated ids or groups")
    p.add_argument("--overflow", type=int, default=3, help="overflow budget in ranks")
    p.add_argument("--instance", action="append", default=[],
                   help="extra schema instance, e.g. 'separation:odd=x in 3'")
    p.add_argument("--timing", action="store_true", help="report wall time per axiom")
    p.set_defaults(run=cmd_audit)

    p = sub.add_parser("eval", parents=[common], help="evaluate a formula in a model")
    p.add_argument("--model", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--relativize", metavar="UNIVERSE",
                   help="evaluate inside this universe rather than the class world")
    p.add_argument("--assign", action="append", default=[], metavar="NAME=LITERAL")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("rank", parents=[common], help="classify a class by rank")
    p.add_argument("--class", dest="class_", required=True, metavar="LITERAL")
    p.add_argument("--model", required=True)
    p.add_argument("--universe")
    p.set_defaults(run=cmd_rank)

    p = sub.add_parser("ef", parents=[common], help="bounded elementary equivalence")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--left-universe")
    p.add_argument("--right-universe")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--witness", action="store_true", help="print a distinguishing sentence")
    p.set_defaults(run=cmd_ef)

    p = sub.add_parser("setcat", parents=[common], help="build the category of sets of a universe")
    p.add_argument("--model", required=True)
    p.add_argument("--universe")
    p.add_argument("--laws", action="store_true", help="list arrows and law failures")
    p.add_argument("--sample", type=int, help="build on a random sample of objects")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_setcat)

    p = sub.add_parser("functors", parents=[common], help="functors between category files")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.set_defaults(run=cmd_functors)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a command is required")
        return args.run(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (SetverseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
