"""Command-line interface: ``codiff <command> [options]``.

Exit codes: 0 success (or only whitelisted discrepancies), 1 unexpected
mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import report as rp
from .catalog import CATALOG_SIZE, entries, load_file, lookup
from .errors import MalformedInput

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _resolve(name_or_path: str):
    """A catalog name (``d7`` or ``7``) or a path to a coderivation JSON file."""
    if os.path.exists(name_or_path):
        return load_file(name_or_path), os.path.basename(name_or_path)
    try:
        e = lookup(name_or_path)
    except KeyError as exc:
        raise UsageError(f"{name_or_path!r} is neither a catalog entry (d1..d{CATALOG_SIZE}) nor a file") from exc
    return e.d, e.name


def _catalog_index(name_or_path: str) -> int:
    try:
        return lookup(name_or_path).index
    except KeyError as exc:
        raise UsageError(str(exc)) from exc


def _seeds(args):
    if not args.seed_list:
        return None
    with open(args.seed_list) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    try:
        seeds = tuple(tuple(int(v) for v in row) for row in data)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad seed list: {exc}") from exc
    if not seeds:
        raise UsageError("seed list is empty")
    return seeds


def _errata(args) -> rp.Errata:
    return rp.Errata.load(args.errata)


# commands ------------------------------------------------------------------------


def cmd_catalog(args) -> int:
    if args.action == "list":
        rows = [{"name": e.name, "expression": e.expression, "h": list(e.expected_row)} for e in entries()]
        text = "\n".join(f"{r['name']:<4} {' '.join(map(str, r['h'])):<14} {r['expression']}" for r in rows)
        _emit(args, {"entries": rows}, text)
        return EXIT_OK
    if not args.name:
        raise UsageError("catalog show needs an entry name")
    try:
        e = lookup(args.name)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    obj = e.to_json()
    lines = [f"{e.name} = {e.expression}", f"Table 1 row: {list(e.expected_row)}"]
    for key in ("unital", "commutative", "nilpotent", "opposite", "jump_targets"):
        if obj[key] is not None:
            lines.append(f"{key}: {obj[key]}")
    _emit(args, obj, "\n".join(lines))
    return EXIT_OK


def cmd_cohomology(args) -> int:
    from .hochschild import cohomology

    d, name = _resolve(args.alg)
    reps = [cohomology(d, n) for n in range(args.max_degree + 1)]
    payload = {"algebra": name, "degrees": [{"n": r.degree, "even": r.even_dim, "odd": r.odd_dim,
                                             "total": r.total} for r in reps]}
    text = "\n".join([f"{name}: " + "  ".join(f"h{r.degree}={r.total}" for r in reps),
                      "splits: " + "  ".join(f"h{r.degree}={r.split()}" for r in reps)])
    _emit(args, payload, text)
    return EXIT_OK


def cmd_analyze(args) -> int:
    if os.path.exists(args.alg):
        return _analyze_file(args)
    r = rp.check_metadata(_errata(args), [_catalog_index(args.alg)])
    _emit(args, r.to_json(), r.render())
    return r.exit_code


def _analyze_file(args) -> int:
    from .algebra import center, is_commutative, is_nilpotent, opposite, to_multiplication, unit
    from .extensions import identify

    d, name = _resolve(args.alg)
    m = to_multiplication(d)
    u = unit(m)
    payload = {
        "algebra": name,
        "unital": u is not None,
        "commutative": is_commutative(m),
        "nilpotent": is_nilpotent(m),
        "center_dims": list(center(m).w_dims),
        "opposite": identify(opposite(d), with_witness=False)[0],
        "catalog": identify(d, with_witness=False)[0],
    }
    _emit(args, payload, "\n".join(f"{k}: {v}" for k, v in payload.items()))
    return EXIT_OK


def cmd_fingerprint(args) -> int:
    from .algebra import fingerprint

    d, name = _resolve(args.input)
    fp = fingerprint(d, args.max_degree)
    payload = {"algebra": name, "fingerprint": fp.to_json()}
    _emit(args, payload, "\n".join(f"{k}: {v}" for k, v in fp.to_json().items()))
    return EXIT_OK


def cmd_extensions(args) -> int:
    cases = list(rp.EXPECTED_CASES) if args.case == "all" else [args.case]
    if any(c not in rp.EXPECTED_CASES for c in cases):
        raise UsageError(f"unknown case {args.case!r}; choose from {sorted(rp.EXPECTED_CASES)} or all")
    r = rp.check_extensions(_errata(args), cases)
    _emit(args, r.to_json(), r.render())
    return r.exit_code


def cmd_deform(args) -> int:
    from .deformations import extend_order, infinitesimal_universal, reference_family
    from .plans import plan

    d, name = _resolve(args.alg)
    if args.frame == "reference":
        if os.path.exists(args.alg) or plan(_catalog_index(args.alg)) is None:
            raise UsageError("a reference frame exists only for catalog entries with a branch plan")
        fam = reference_family(_catalog_index(args.alg), args.order)
    else:
        fam = extend_order(infinitesimal_universal(d), args.order)
    payload = {"algebra": name, **fam.to_json()}
    lines = [f"{name}: {fam.nparams} parameter(s), order {fam.order}, frame {fam.frame}"]
    lines += [f"  t{i + 1}: {x}" for i, x in enumerate(fam.directions)]
    lines.append("higher terms:" if payload["higher_terms"] else "higher terms: none")
    lines += [f"  {m}: {c}" for m, c in payload["higher_terms"].items()]
    lines.append("relations:" if payload["relations"] else "relations: none")
    lines += [f"  {r} = 0" for r in payload["relations"]]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_jumps(args) -> int:
    k = _catalog_index(args.alg)
    r = rp.check_jumps(_errata(args), [k], _seeds(args))
    branches = r.body["jumps"]["branches"].get(f"d{k}", [])
    lines = list(r.lines)
    for b in branches:
        lines.append(f"  [{b['branch']}] -> {'d' + str(b['label']) if b['label'] else b['label']}"
                     + (f"  ({b['note']})" if b["note"] else ""))
    r.lines = lines
    r.body.pop("jump_graph_dot", None)
    _emit(args, r.to_json(), r.render())
    return r.exit_code


def cmd_jump_graph(args) -> int:
    r = rp.check_jumps(_errata(args), None, _seeds(args))
    dot = r.body.pop("jump_graph_dot")
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(dot)
    _emit(args, r.to_json(), r.render())
    return r.exit_code


def cmd_iso(args) -> int:
    from .equivalence import find_isomorphism

    d1, n1 = _resolve(args.a)
    d2, n2 = _resolve(args.b)
    res = find_isomorphism(d1, d2, budget=args.budget)
    payload = {"a": n1, "b": n2, "found": res.witness is not None, "reason": res.reason, "spent": res.spent,
               "witness": None if res.witness is None else res.witness.to_json()}
    text = f"{n1} ~ {n2}: witness\n{res.witness}" if res.witness else f"none found ({res.reason})"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_table1(args) -> int:
    r = rp.check_table1(_errata(args))
    _emit(args, r.to_json(), r.render())
    return r.exit_code


def cmd_reproduce_all(args) -> int:
    only = [s.strip() for part in args.only or [] for s in part.split(",") if s.strip()]
    try:
        r = rp.reproduce_all(_errata(args), only or None, _seeds(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    r.body.pop("jump_graph_dot", None)
    _emit(args, r.to_json(), r.render())
    return r.exit_code


# parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def common():
        # fresh actions per parser; a default set on the top level must not leak into subcommands
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
        c.add_argument("--seed-list", default=argparse.SUPPRESS, metavar="FILE",
                       help="deformation sample seeds (JSON list of integer lists, or one row per line)")
        c.add_argument("--errata", default=argparse.SUPPRESS, metavar="FILE", help="errata document to apply")
        return c

    p = argparse.ArgumentParser(prog="codiff", parents=[common()],
                                description="Codifferentials on a 1|2-dimensional space: cohomology, "
                                            "extensions, deformations and jumps.")
    p.set_defaults(json=False, seed_list=None, errata=None)
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, func, help_):
        s = sub.add_parser(name, parents=[common()], help=help_)
        s.set_defaults(func=func)
        return s

    s = add("catalog", cmd_catalog, "list or show catalog entries")
    s.add_argument("action", choices=["list", "show"])
    s.add_argument("name", nargs="?")

    s = add("cohomology", cmd_cohomology, "graded Hochschild cohomology dimensions")
    s.add_argument("--alg", required=True)
    s.add_argument("--max-degree", type=int, default=4)

    s = add("analyze", cmd_analyze, "unit, commutativity, nilpotency, center, opposite")
    s.add_argument("--alg", required=True)

    s = add("fingerprint", cmd_fingerprint, "isomorphism invariants of a codifferential")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--max-degree", type=int, default=3)

    s = add("extensions", cmd_extensions, "extension enumerations")
    s.add_argument("action", choices=["enumerate"])
    s.add_argument("--case", required=True)

    s = add("deform", cmd_deform, "versal deformation to a given order")
    s.add_argument("--alg", required=True)
    s.add_argument("--order", type=int, default=3)
    s.add_argument("--frame", choices=["canonical", "reference"], default="canonical")

    s = add("jumps", cmd_jumps, "jump deformations of one catalog entry")
    s.add_argument("--alg", required=True)

    s = add("jump-graph", cmd_jump_graph, "jump graph over the whole catalog")
    s.add_argument("--dot", metavar="FILE")

    s = add("iso", cmd_iso, "search for an isomorphism witness")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--budget", type=int, default=200_000)

    add("table1", cmd_table1, "cohomology table for all catalog entries")

    s = add("reproduce-all", cmd_reproduce_all, "run every check and summarize discrepancies")
    s.add_argument("--only", action="append", metavar="SECTIONS",
                   help=f"comma-separated subset of {', '.join(rp.SECTIONS)}")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if getattr(args, "order", 1) < 1 or getattr(args, "max_degree", 0) < 0:
            raise UsageError("order must be positive and max-degree non-negative")
        return args.func(args)
    except (UsageError, MalformedInput, FileNotFoundError) as exc:
        sys.stderr.write(f"codiff: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
