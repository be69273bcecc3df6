"""Computed-vs-reference reports shared by the CLI and the acceptance suite.

Every check produces a section body (plain JSON data), table lines for the
terminal, and a list of discrepancies.  A discrepancy is *known* when its key
appears, whitelisted, in the errata document; the exit code is 0 iff every
discrepancy is known.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence

from .algebra import (
    center,
    fingerprint,
    is_commutative,
    is_nilpotent,
    opposite,
    to_multiplication,
    unit,
)
from .catalog import CATALOG_SIZE, entries, errata, get
from .graded import is_codifferential

SECTIONS = ("codifferentials", "table1", "splits", "metadata", "extensions", "directions", "relations",
            "jumps", "separation")

# case -> catalog indices its classes must hit, each exactly once
EXPECTED_CASES = {
    "s4": [1, 2],
    "s5": [3, 4, 5, 6, 7],
    "s6-mu0": list(range(10, 26)),
    "s6-mu1": [8, 9],
    "s6t-mu1": [26, 27],
    "s6t-mu0": [0, 28],
    "s7-mu1": [26, 28],
    "s7-mu0": [0, 27],
}


@dataclass
class Discrepancy:
    key: str
    section: str
    reference: object
    computed: object
    known: bool = False
    note: str = ""

    def to_json(self) -> dict:
        return {"key": self.key, "section": self.section, "reference": self.reference,
                "computed": self.computed, "known": self.known, "note": self.note}


@dataclass
class Report:
    title: str
    body: Dict[str, object] = field(default_factory=dict)
    lines: List[str] = field(default_factory=list)
    discrepancies: List[Discrepancy] = field(default_factory=list)
    errata_keys: List[str] = field(default_factory=list)

    @property
    def unexpected(self) -> List[Discrepancy]:
        return [d for d in self.discrepancies if not d.known]

    @property
    def exit_code(self) -> int:
        return 1 if self.unexpected else 0

    def merge(self, other: "Report") -> None:
        self.body.update(other.body)
        self.lines.extend(other.lines)
        self.discrepancies.extend(other.discrepancies)

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "result": self.body,
            "discrepancies": [d.to_json() for d in self.discrepancies],
            "errata": self.errata_keys,
            "status": "ok" if not self.unexpected else "mismatch",
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, default=str) + "\n"

    def render(self) -> str:
        out = [self.title, "=" * len(self.title)]
        out.extend(self.lines)
        out.append("")
        out.append("Discrepancies")
        out.append("-------------")
        if not self.discrepancies:
            out.append("none")
        for d in self.discrepancies:
            tag = "known" if d.known else "UNEXPECTED"
            out.append(f"[{tag}] {d.key}: reference {d.reference}, computed {d.computed}")
            if d.note:
                out.append(f"    {d.note}")
        out.append("")
        out.append(f"status: {'ok' if not self.unexpected else 'mismatch'}"
                   f" ({len(self.discrepancies)} discrepancies, {len(self.unexpected)} unexpected)")
        return "\n".join(out) + "\n"


class Errata:
    def __init__(self, doc: Optional[dict] = None):
        doc = errata() if doc is None else doc
        self.version = doc.get("version")
        self.items = {it["key"]: it for it in doc.get("items", [])}

    @classmethod
    def load(cls, path: Optional[str] = None) -> "Errata":
        if path is None:
            return cls()
        with open(path) as fh:
            return cls(json.load(fh))

    def known(self, key: str) -> bool:
        it = self.items.get(key)
        return bool(it and it.get("whitelisted"))

    def note(self, key: str) -> str:
        it = self.items.get(key)
        return it.get("note", "") if it else ""


class _Builder:
    def __init__(self, title: str, section: str, errata_doc: Errata):
        self.report = Report(title)
        self.section = section
        self.errata = errata_doc

    def mismatch(self, key, reference, computed):
        self.report.discrepancies.append(
            Discrepancy(key, self.section, reference, computed, self.errata.known(key), self.errata.note(key))
        )
        if key in self.errata.items:
            self.report.errata_keys.append(key)

    def line(self, text: str):
        self.report.lines.append(text)


def _indices(only: Optional[Iterable[int]]) -> List[int]:
    return sorted(only) if only else list(range(1, CATALOG_SIZE + 1))


def _fmt(x) -> str:
    return f"{x[0]}|{x[1]}"


# 1 -------------------------------------------------------------------------------


def check_codifferentials(errata_doc: Errata, indices=None, source=None) -> Report:
    """``[d, d] = 0`` and associativity of the multiplication on basis triples.

    ``source`` maps index to a coderivation and replaces the catalog value.
    """
    b = _Builder("Codifferentials", "codifferentials", errata_doc)
    rows = {}
    for k in _indices(indices):
        d = source[k] if source and k in source else get(k).d
        ok = is_codifferential(d)
        assoc = to_multiplication(d).is_associative() if d.arities() <= {2} else False
        rows[f"d{k}"] = {"codifferential": ok, "associative": assoc}
        b.line(f"d{k:<3} [d,d]=0: {'yes' if ok else 'NO'}   associative: {'yes' if assoc else 'NO'}")
        if not ok:
            b.mismatch(f"codiff:d{k}", True, False)
        if not assoc:
            b.mismatch(f"assoc:d{k}", True, False)
    b.report.body["codifferentials"] = rows
    return b.report


# 2 and 3 ---------------------------------------------------------------------------


def computed_rows(indices=None, max_degree: int = 4) -> Dict[int, List]:
    from .hochschild import cohomology_row

    return {k: cohomology_row(get(k).d, max_degree) for k in _indices(indices)}


def check_table1(errata_doc: Errata, indices=None, rows=None) -> Report:
    b = _Builder("Table 1: cohomology totals", "table1", errata_doc)
    rows = rows or computed_rows(indices)
    body = {}
    b.line(f"{'':6}" + "".join(f"{'h' + str(n):>8}" for n in range(5)))
    for k in _indices(indices):
        exp = get(k).expected_row
        got = [e + o for e, o in rows[k]]
        cells = []
        for n in range(5):
            mark = "" if got[n] == exp[n] else "*"
            cells.append(f"{str(got[n]) + mark:>8}")
            if got[n] != exp[n]:
                b.mismatch(f"table1:d{k}:h{n}", exp[n], got[n])
        b.line(f"d{k:<5}" + "".join(cells))
        body[f"d{k}"] = {"computed": got, "expected": list(exp), "splits": [_fmt(x) for x in rows[k]]}
    b.line("(* marks a cell that differs from the reference row)")
    b.report.body["table1"] = body
    return b.report


def check_splits(errata_doc: Errata, indices=None, rows=None) -> Report:
    b = _Builder("Graded splits", "splits", errata_doc)
    rows = rows or computed_rows(indices)
    body = {}
    for k in _indices(indices):
        for n, sp in sorted(get(k).expected_splits.items()):
            got = tuple(rows[k][n])
            body[f"d{k}:h{n}"] = {"computed": _fmt(got), "expected": _fmt(sp)}
            ok = got == tuple(sp)
            b.line(f"d{k:<3} h{n} computed {_fmt(got):>6} expected {_fmt(sp):>6} {'' if ok else '*'}")
            if not ok:
                b.mismatch(f"split:d{k}:h{n}", _fmt(sp), _fmt(got))
    b.report.body["splits"] = body
    return b.report


# 4 -------------------------------------------------------------------------------


def check_metadata(errata_doc: Errata, indices=None, rows=None) -> Report:
    from .extensions import identify

    b = _Builder("Metadata", "metadata", errata_doc)
    rows = rows or computed_rows(indices, 0)
    body = {}
    for k in _indices(indices):
        e = get(k)
        m = to_multiplication(e.d)
        z = center(m)
        flags = {"unital": unit(m) is not None, "commutative": is_commutative(m), "nilpotent": is_nilpotent(m)}
        opp = identify(opposite(e.d), with_witness=False)[0]
        body[f"d{k}"] = {**flags, "center": [{str(i): str(c) for i, c in sorted(v.items())} for v in z.vectors()],
                         "center_dims": list(z.w_dims), "opposite": opp}
        b.line(f"d{k:<3} unital={flags['unital']!s:<5} commutative={flags['commutative']!s:<5} "
               f"nilpotent={flags['nilpotent']!s:<5} center={_fmt(z.w_dims)} opposite=d{opp}")
        for name, val in flags.items():
            ref = getattr(e, name)
            if ref is not None and ref != val:
                b.mismatch(f"flag:d{k}:{name}", ref, val)
        if e.center is not None and not z.same_span(list(e.center), 3):
            b.mismatch(f"center:d{k}", e.center, z.vectors())
        h0 = rows[k][0]
        if sum(z.dims) != h0[0] + h0[1]:
            b.mismatch(f"center-h0:d{k}", h0[0] + h0[1], sum(z.dims))
        if e.opposite is not None and e.opposite != opp:
            b.mismatch(f"opposite:d{k}", e.opposite, opp)
    b.report.body["metadata"] = body
    return b.report


# 5 -------------------------------------------------------------------------------


def check_extensions(errata_doc: Errata, cases: Optional[Sequence[str]] = None, witnesses: bool = True) -> Report:
    from .equivalence import verify
    from .extensions import run_case

    b = _Builder("Extension enumerations", "extensions", errata_doc)
    body = {}
    for name in cases or EXPECTED_CASES:
        res = run_case(name, with_witness=witnesses)
        got = sorted(i for i, _ in res.matches if i is not None)
        unmatched = sum(1 for i, _ in res.matches if i is None)
        verified = all(
            w is not None and verify(w, cls.d, get(i).d) if i else True
            for cls, (i, w) in zip(res.classes, res.matches)
        ) if witnesses else None
        body[name] = res.to_json()
        body[name]["verified"] = verified
        exp = EXPECTED_CASES.get(name)
        b.line(f"{name:<8} classes={len(res.classes):<3} catalog={['zero' if i == 0 else f'd{i}' for i in got]}"
               f" witnesses={'verified' if verified else ('skipped' if verified is None else 'MISSING')}")
        if exp is not None and (got != sorted(exp) or unmatched):
            b.mismatch(f"extensions:{name}", sorted(exp), got)
        if verified is False:
            b.mismatch(f"witness:{name}", "verified", "missing")
    b.report.body["extensions"] = body
    return b.report


# 6 and 7 -----------------------------------------------------------------------------


def check_directions(errata_doc: Errata, indices=None) -> Report:
    from .hochschild import cohomology
    from .plans import plan

    b = _Builder("Deformation directions", "directions", errata_doc)
    body = {}
    for k in _indices(indices):
        got = cohomology(get(k).d, 2).odd_dim
        p = plan(k)
        exp = p.nparams if p else 0
        body[f"d{k}"] = {"computed": got, "expected": exp}
        if got or exp:
            b.line(f"d{k:<3} parameters computed {got} expected {exp}")
        if got != exp:
            b.mismatch(f"directions:d{k}", exp, got)
    b.report.body["directions"] = body
    return b.report


def check_relations(errata_doc: Errata, indices=None) -> Report:
    from .deformations import extend_order, ideals_equal, infinitesimal_universal, relations_in_frame
    from .plans import PLANS

    b = _Builder("Relation ideals at order two", "relations", errata_doc)
    body = {}
    for k in sorted(PLANS):
        if indices and k not in indices:
            continue
        p = PLANS[k]
        fam = extend_order(infinitesimal_universal(get(k).d), 2)
        rels = relations_in_frame(fam, p.directions(), 2)
        ref = p.reference_relations()
        ok = ideals_equal(rels, ref)
        body[f"d{k}"] = {"computed": [str(r) for r in rels], "expected": [str(r) for r in ref], "equal": ok}
        b.line(f"d{k:<3} {'equal' if ok else 'DIFFER'}: <{', '.join(map(str, ref)) or '0'}>")
        if not ok:
            b.mismatch(f"relations:d{k}", [str(r) for r in ref], [str(r) for r in rels])
    if not indices or 24 in indices:
        from .deformations import reference_family

        higher = reference_family(24).higher_terms()
        body["d24:higher_terms"] = len(higher)
        b.line(f"d24 higher-order correction terms: {len(higher)}")
        if not higher:
            b.mismatch("higher-terms:d24", "nonzero", 0)
    b.report.body["relations"] = body
    return b.report


# 8 -------------------------------------------------------------------------------


def check_jumps(errata_doc: Errata, indices=None, seeds=None) -> Report:
    from .deformations import DEFAULT_SEEDS, jump_graph

    b = _Builder("Jump deformations", "jumps", errata_doc)
    g = jump_graph(seeds or DEFAULT_SEEDS, indices=_indices(indices))
    for k in sorted(g.edges):
        ref = get(k).jump_targets
        got = g.edges[k]
        if got or ref:
            b.line(f"d{k:<3} -> {', '.join(f'd{j}' for j in got) or '(none)'}")
        if ref is not None and sorted(ref) != got:
            b.mismatch(f"jumps:d{k}", sorted(ref), got)
        for r in g.results.get(k, []):
            if r.label is None:
                b.mismatch(f"unidentified:d{k}:{r.branch.name}", r.branch.expect, None)
            elif r.branch.expect is not None and r.label != r.branch.expect:
                b.mismatch(f"branch:d{k}:{r.branch.name}", r.branch.expect, r.label)
    for k in g.unplanned:
        b.mismatch(f"unplanned:d{k}", "plan", None)
    for k in g.self_loops():
        b.mismatch(f"self-loop:d{k}", "none", k)
    if not indices:
        for a, c, e in g.transitivity_violations():
            b.mismatch(f"transitivity:d{a}-d{c}-d{e}", "edge", "missing")
    b.line(f"self-loops: {len(g.self_loops())}  transitivity violations: {len(g.transitivity_violations())}")
    b.report.body["jumps"] = g.to_json()
    b.report.body["jump_graph_dot"] = g.to_dot()
    return b.report


# 10 ------------------------------------------------------------------------------


def separation(indices=None) -> Dict[str, List[str]]:
    """Distinguishing fingerprint fields for every pair; empty list means unseparated."""
    fps = {k: fingerprint(get(k).d) for k in _indices(indices)}
    return {f"d{a}-d{b}": fps[a].differences(fps[b]) for a, b in itertools.combinations(sorted(fps), 2)}


def check_separation(errata_doc: Errata, indices=None) -> Report:
    b = _Builder("Catalog separation", "separation", errata_doc)
    pairs = separation(indices)
    for pair, diff in pairs.items():
        if not diff:
            b.mismatch(f"separation:{pair}", "distinguished", "same fingerprint")
    b.line(f"{len(pairs)} pairs, {sum(1 for v in pairs.values() if v)} separated by fingerprint")
    b.report.body["separation"] = {p: v[0] if v else None for p, v in pairs.items()}
    return b.report


def reproduce_all(errata_doc: Optional[Errata] = None, only: Optional[Sequence[str]] = None, seeds=None) -> Report:
    errata_doc = errata_doc or Errata()
    wanted = list(only) if only else list(SECTIONS)
    bad = [s for s in wanted if s not in SECTIONS]
    if bad:
        raise ValueError(f"unknown section(s) {bad}; choose from {list(SECTIONS)}")
    total = Report("Reproduction summary")
    rows = computed_rows() if {"table1", "splits", "metadata"} & set(wanted) else None
    runners = {
        "codifferentials": lambda: check_codifferentials(errata_doc),
        "table1": lambda: check_table1(errata_doc, rows=rows),
        "splits": lambda: check_splits(errata_doc, rows=rows),
        "metadata": lambda: check_metadata(errata_doc, rows=rows),
        "extensions": lambda: check_extensions(errata_doc),
        "directions": lambda: check_directions(errata_doc),
        "relations": lambda: check_relations(errata_doc),
        "jumps": lambda: check_jumps(errata_doc, seeds=seeds),
        "separation": lambda: check_separation(errata_doc),
    }
    summary = {}
    for s in SECTIONS:
        if s not in wanted:
            continue
        r = runners[s]()
        r.lines.insert(0, f"-- {r.title} --")
        total.merge(r)
        total.errata_keys.extend(r.errata_keys)
        summary[s] = {"discrepancies": len(r.discrepancies), "unexpected": len(r.unexpected)}
    total.body["summary"] = summary
    total.errata_keys = sorted(set(total.errata_keys))
    return total
