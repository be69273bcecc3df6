"""Versal deformations built order by order, and jump detection.

A family is ``D(t) = d + sum_a T_a t^a`` with ``T_a`` odd arity-2 cochains.
At each order the degree-``n`` part of ``[D, D]`` is written as

    sum_s r_s(t) (eta_s + xi_s(t))  -  2 [d, T_a] t^a

where ``eta_s`` are the even ``H^3`` representatives, ``r_s`` the relation
polynomials and ``xi_s`` higher corrections of the obstruction cochains.
Solving that linear system fixes the new ``T_a`` (coboundary part), the new
relation coefficients (cohomology part) and ``xi``; the last are needed once
relations exist, since then ``[d, [D, D]_n]`` need not vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .graded import Coderivation, Parity, bracket, is_codifferential
from .hochschild import class_coordinates, cochain_basis, cohomology, complex_of
from .linalg import ExactMatrix, solve, span
from .polynomial import Monomial, ParamPolynomial, evaluate_expression, monomials_of_degree
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "DeformationFamily",
    "RelationViolation",
    "NotClosed",
    "BadDirections",
    "infinitesimal_universal",
    "extend_order",
    "evaluate_at",
    "bracket_expansion",
    "closure_defect",
    "is_closed",
    "ideal_contains",
    "ideals_equal",
    "sample_points",
    "DEFAULT_SEEDS",
    "order_two_relations",
    "relations_in_frame",
    "frame_matrix",
    "Branch",
    "BranchResult",
    "detect_jumps",
    "reference_family",
    "jumps_for",
    "JumpGraph",
    "jump_graph",
    "out_edges",
]


class RelationViolation(ValueError):
    pass


class NotClosed(ValueError):
    """Evaluation produced a coderivation with ``[x, x] != 0``."""


class BadDirections(ValueError):
    pass


def _add(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(m1, m2))


def _sub(m1: Monomial, m2: Monomial) -> Optional[Monomial]:
    out = tuple(a - b for a, b in zip(m1, m2))
    return out if min(out, default=0) >= 0 else None


def _power(values: Sequence[Scalar], m: Monomial) -> Scalar:
    out = ONE
    for v, e in zip(values, m):
        for _ in range(e):
            out = out * v
    return out


def _mono_str(m: Monomial) -> str:
    return "*".join(f"t{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e) or "1"


@dataclass
class DeformationFamily:
    base: Coderivation
    directions: List[Coderivation]
    terms: Dict[Monomial, Coderivation]
    eta: List[Coderivation]
    relations: List[ParamPolynomial]
    xi: Dict[Tuple[int, Monomial], Coderivation] = field(default_factory=dict)
    order: int = 1
    frame: str = "canonical"
    obstructed: bool = False

    @property
    def nparams(self) -> int:
        return len(self.directions)

    def nonzero_relations(self) -> List[ParamPolynomial]:
        return [r for r in self.relations if not r.is_zero()]

    def higher_terms(self) -> Dict[Monomial, Coderivation]:
        return {m: c for m, c in self.terms.items() if sum(m) >= 2}

    def relations_at(self, order: int) -> List[ParamPolynomial]:
        return [r.truncate(order) for r in self.nonzero_relations() if not r.truncate(order).is_zero()]

    def to_json(self) -> dict:
        return {
            "base": str(self.base),
            "frame": self.frame,
            "order": self.order,
            "parameters": self.nparams,
            "directions": [str(x) for x in self.directions],
            "higher_terms": {_mono_str(m): str(c) for m, c in sorted(self.higher_terms().items())},
            "relations": [str(r) for r in self.nonzero_relations()],
            "obstructed": self.obstructed,
        }


def infinitesimal_universal(d: Coderivation, directions: Optional[Sequence[Coderivation]] = None,
                            frame: str = "canonical") -> DeformationFamily:
    """``d + sum delta_i t_i`` with ``delta_i`` a basis of odd ``H^2``.

    Without ``directions`` the canonical representatives are used.  Supplied
    directions must be odd 2-cocycles whose classes form a basis.
    """
    rep = cohomology(d, 2)
    if directions is None:
        dirs = list(rep.odd_representatives)
    else:
        dirs = list(directions)
        if len(dirs) != rep.odd_dim:
            raise BadDirections(f"need {rep.odd_dim} directions, got {len(dirs)}")
        if dirs:
            M = frame_matrix(d, dirs)
            if span([{j: v for j, v in enumerate(col) if v} for col in M], rep.odd_dim).dim != rep.odd_dim:
                raise BadDirections("directions are not independent in H^2")
    r = len(dirs)
    terms = {}
    for i, x in enumerate(dirs):
        m = [0] * r
        m[i] = 1
        terms[tuple(m)] = x
    eta = list(cohomology(d, 3).even_representatives)
    return DeformationFamily(d, dirs, terms, eta, [ParamPolynomial.zero(r) for _ in eta], frame=frame)


def frame_matrix(d: Coderivation, dirs: Sequence[Coderivation]) -> List[List[Scalar]]:
    """Column ``j`` holds the canonical ``H^2`` coordinates of ``dirs[j]``."""
    out = []
    for x in dirs:
        if x.parity != Parity.ODD or x.arities() - {2}:
            raise BadDirections(f"{x} is not an odd 2-cochain")
        if not bracket(d, x).is_zero():
            raise BadDirections(f"{x} is not a cocycle")
        out.append(class_coordinates(d, x, 2))
    return out


def _poly_bracket_degree(family: DeformationFamily, n: int) -> Dict[Monomial, Coderivation]:
    """Degree-``n`` part of ``[D, D]`` using the terms of degree < n."""
    r = family.nparams
    zero = (0,) * r
    pieces = dict(family.terms)
    pieces[zero] = family.base
    keys = sorted(pieces)
    out: Dict[Monomial, Coderivation] = {}
    for a in keys:
        for b in keys:
            if sum(a) + sum(b) != n or sum(a) >= n or sum(b) >= n:
                continue
            m = _add(a, b)
            v = bracket(pieces[a], pieces[b])
            out[m] = out[m] + v if m in out else v
    return out


def _step(family: DeformationFamily, n: int, hints: Optional[Mapping[Monomial, Coderivation]]) -> bool:
    d = family.base
    r = family.nparams
    alphas = monomials_of_degree(r, n)
    F = _poly_bracket_degree(family, n)
    c3 = cochain_basis(d.space, 3)
    c2 = cochain_basis(d.space, 2)
    odd2 = c2.block(Parity.ODD)
    even3 = c3.block(Parity.EVEN)
    aidx = {a: k for k, a in enumerate(alphas)}
    nrows = len(alphas) * len(c3)

    def place(a: Monomial, vec: Dict[int, Scalar], col: Dict[int, Scalar], factor=ONE):
        base = aidx[a] * len(c3)
        for k, v in vec.items():
            col[base + k] = col.get(base + k, ZERO) + v * factor

    # right-hand side: known xi contributions minus F
    rhs = [ZERO] * nrows
    for a, v in F.items():
        for k, c in c3.to_vector(v).items():
            rhs[aidx[a] * len(c3) + k] -= c

    new_xi = []
    for s, rel in enumerate(family.relations):
        if rel.is_zero():
            continue
        mdeg = rel.min_degree()
        for beta, coeff in rel.items():
            for a in alphas:
                gamma = _sub(a, beta)
                if gamma is None or sum(gamma) == 0:
                    continue
                key = (s, gamma)
                if key in family.xi:
                    for k, c in c3.to_vector(family.xi[key]).items():
                        rhs[aidx[a] * len(c3) + k] += coeff * c
        if n - mdeg >= 1:
            for gamma in monomials_of_degree(r, n - mdeg):
                if (s, gamma) not in family.xi:
                    new_xi.append((s, gamma))

    cols: List[Dict[int, Scalar]] = []
    labels: List[tuple] = []
    # xi unknowns first, corrections next, relation coefficients last so
    # that free choices leave relations as small as possible
    for s, gamma in new_xi:
        rel = family.relations[s]
        for k in even3:
            col: Dict[int, Scalar] = {}
            for beta, coeff in rel.items():
                if sum(beta) != rel.min_degree():
                    continue
                a = _add(beta, gamma)
                if a in aidx:
                    col[aidx[a] * len(c3) + k] = -coeff
            cols.append(col)
            labels.append(("xi", s, gamma, k))
    fixed: Dict[Monomial, Coderivation] = {}
    for a in alphas:
        hint = None if hints is None else hints.get(a)
        if hint is not None:
            fixed[a] = hint
            img = bracket(d, hint).scale(2)
            for k, c in c3.to_vector(img).items():
                rhs[aidx[a] * len(c3) + k] -= c
            continue
        for k in odd2:
            unit = Coderivation._trusted(d.space, {c2.elements[k]: ONE}, Parity.ODD)
            col = {}
            place(a, c3.to_vector(bracket(d, unit).scale(2)), col)
            cols.append(col)
            labels.append(("b", a, k))
    for s, e in enumerate(family.eta):
        ev = c3.to_vector(e)
        for a in alphas:
            col = {}
            place(a, ev, col, -ONE)
            cols.append(col)
            labels.append(("c", s, a))
    M = ExactMatrix.from_columns(cols, nrows)
    x = solve(M, rhs)
    if x is None:
        return False
    bvec: Dict[Monomial, Dict[int, Scalar]] = {}
    xivec: Dict[Tuple[int, Monomial], Dict[int, Scalar]] = {}
    for lab, v in zip(labels, x):
        if not v:
            continue
        if lab[0] == "b":
            bvec.setdefault(lab[1], {})[lab[2]] = v
        elif lab[0] == "xi":
            xivec.setdefault((lab[1], lab[2]), {})[lab[3]] = v
        else:
            s, a = lab[1], lab[2]
            family.relations[s] = family.relations[s] + ParamPolynomial(r, {a: v})
    for a, h in fixed.items():
        if not h.is_zero():
            family.terms[a] = h
    for a, vec in bvec.items():
        family.terms[a] = Coderivation(d.space, [(c2.elements[k], v) for k, v in vec.items()], Parity.ODD)
    for key in new_xi:
        vec = xivec.get(key, {})
        family.xi[key] = Coderivation(d.space, [(c3.elements[k], v) for k, v in vec.items()], Parity.EVEN)
    return True


def extend_order(family: DeformationFamily, order: int = 3,
                 hints: Optional[Mapping[Monomial, Coderivation]] = None) -> DeformationFamily:
    """Extend ``family`` in place up to ``order`` and return it.

    ``hints`` proposes corrections for some monomials; a hint is used only if
    the system stays solvable with it, otherwise the order is solved afresh.
    """
    while family.order < order and not family.obstructed:
        n = family.order + 1
        snapshot = (dict(family.terms), list(family.relations), dict(family.xi))
        ok = _step(family, n, hints)
        if not ok and hints:
            family.terms, family.relations, family.xi = dict(snapshot[0]), list(snapshot[1]), dict(snapshot[2])
            ok = _step(family, n, None)
        if not ok:
            family.obstructed = True
            break
        family.order = n
    return family


def closure_defect(family: DeformationFamily) -> Dict[Monomial, Coderivation]:
    """``[D, D] - sum_s r_s (eta_s + xi_s)`` over all degrees; empty when closed."""
    r = family.nparams
    zero = (0,) * r
    pieces = dict(family.terms)
    pieces[zero] = family.base
    out: Dict[Monomial, Coderivation] = {}

    def acc(m, v):
        if not v.is_zero():
            out[m] = out[m] + v if m in out else v

    for a in pieces:
        for b in pieces:
            acc(_add(a, b), bracket(pieces[a], pieces[b]))
    for s, rel in enumerate(family.relations):
        zs = {zero: family.eta[s]}
        zs.update({g: x for (t, g), x in family.xi.items() if t == s})
        for beta, coeff in rel.items():
            for g, x in zs.items():
                acc(_add(beta, g), x.scale(-coeff))
    return {m: v for m, v in out.items() if not v.is_zero()}


def is_closed(family: DeformationFamily) -> bool:
    return not closure_defect(family)


def evaluate_at(family: DeformationFamily, values: Sequence, check: bool = True) -> Coderivation:
    """``D`` at ``values``; relations are checked exactly first."""
    vals = [as_scalar(v) for v in values]
    if len(vals) != family.nparams:
        raise ValueError(f"expected {family.nparams} parameter values, got {len(vals)}")
    for rel in family.nonzero_relations():
        if rel.evaluate(vals):
            raise RelationViolation(f"relation {rel} does not vanish at {[str(v) for v in vals]}")
    out = family.base
    for m, c in sorted(family.terms.items()):
        p = _power(vals, m)
        if p:
            out = out + c.scale(p)
    if check and not is_codifferential(out):
        raise NotClosed(f"[x, x] != 0 at {[str(v) for v in vals]} (order {family.order})")
    return out


# independent expansion of [D1, D1] for the order-two check -----------------


def bracket_expansion(d: Coderivation, directions: Sequence[Coderivation]) -> Dict[tuple, ParamPolynomial]:
    """``[d + sum delta_i t_i, d + sum delta_j t_j]`` as a map term -> polynomial.

    Built coefficient by coefficient from the pairwise brackets, without the
    monomial bookkeeping used by the family constructor.
    """
    r = len(directions)
    lin = [ParamPolynomial.var(r, i) for i in range(r)]
    one = ParamPolynomial.constant(r, 1)
    parts = [(d, one)] + list(zip(directions, lin))
    out: Dict[tuple, ParamPolynomial] = {}
    for x, px in parts:
        for y, py in parts:
            b = bracket(x, y)
            for term, c in b.items():
                p = (px * py).scale(c)
                out[term] = out[term] + p if term in out else p
    return {t: p for t, p in out.items() if not p.is_zero()}


def order_two_relations(d: Coderivation, directions: Sequence[Coderivation]) -> List[ParamPolynomial]:
    """``H^3`` coordinates of the quadratic part of ``[D1, D1]``, one polynomial per class."""
    r = len(directions)
    exp = bracket_expansion(d, directions)
    per_mono: Dict[Monomial, Dict[tuple, Scalar]] = {}
    for term, p in exp.items():
        for m, c in p.items():
            if sum(m) == 2:
                per_mono.setdefault(m, {})[term] = c
    h3 = cohomology(d, 3)
    rels = [ParamPolynomial.zero(r) for _ in range(h3.even_dim)]
    for m, terms in per_mono.items():
        cochain = Coderivation(d.space, list(terms.items()), Parity.EVEN)
        coords = class_coordinates(d, cochain, 3)
        for s, v in enumerate(coords):
            if v:
                rels[s] = rels[s] + ParamPolynomial(r, {m: v})
    return rels


def relations_in_frame(family: DeformationFamily, dirs: Sequence[Coderivation], order: int = 2) -> List[ParamPolynomial]:
    """Relations of a canonical family rewritten in the parameters of ``dirs``.

    ``t = P s`` where column ``j`` of ``P`` holds the canonical coordinates of
    ``dirs[j]``; exact for the part of the relations of degree ``order``.
    """
    P = frame_matrix(family.base, dirs)
    r = len(dirs)
    images = []
    for i in range(family.nparams):
        images.append(ParamPolynomial(r, {tuple(1 if k == j else 0 for k in range(r)): P[j][i] for j in range(r)}))
    return [rel.truncate(order).substitute(images) for rel in family.nonzero_relations() if not rel.truncate(order).is_zero()]


# ideal membership --------------------------------------------------------------


def _sympy_ring(nvars: int):
    import sympy

    return sympy.symbols(" ".join(f"t{i + 1}" for i in range(nvars)) + " _pad")[:nvars]


def ideal_contains(gens: Sequence[ParamPolynomial], p: ParamPolynomial) -> bool:
    """``p`` in the ideal generated by ``gens`` (Groebner normal form)."""
    import sympy

    if p.is_zero():
        return True
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return False
    syms = _sympy_ring(p.nvars)
    G = sympy.groebner([g.to_sympy(syms) for g in gens], *syms, order="grevlex", extension=sympy.I)
    return G.contains(p.to_sympy(syms))


def ideals_equal(a: Sequence[ParamPolynomial], b: Sequence[ParamPolynomial]) -> bool:
    return all(ideal_contains(b, p) for p in a) and all(ideal_contains(a, p) for p in b)


# jump detection ------------------------------------------------------------------


@dataclass(frozen=True)
class Branch:
    """A locus in the parameter space given by a rational parametrization.

    ``point`` has one expression per parameter in the free names ``params``;
    ``avoid`` lists expressions that must not vanish at a generic sample.
    """

    name: str
    params: Tuple[str, ...]
    point: Tuple[str, ...]
    avoid: Tuple[str, ...] = ()
    expect: Optional[int] = None


@dataclass
class BranchResult:
    branch: Branch
    samples: List[Tuple[List[Fraction], Optional[int]]]
    label: Optional[int]
    stable: bool
    note: str = ""

    def to_json(self) -> dict:
        return {
            "branch": self.branch.name,
            "expect": self.branch.expect,
            "label": self.label,
            "stable": self.stable,
            "samples": [{"point": [str(v) for v in pt], "catalog": k} for pt, k in self.samples],
            "note": self.note,
        }


DEFAULT_SEEDS: Tuple[Tuple[int, ...], ...] = (
    (1, 2, 3, 5),
    (2, -3, 5, 7),
    (3, 5, -2, 4),
    (-2, 7, 3, -5),
    (5, -1, 7, 2),
    (7, 3, -4, 11),
    (-3, -5, 2, 9),
    (4, 9, -7, -3),
)


def sample_points(branch: Branch, seeds=DEFAULT_SEEDS, count: int = 3) -> List[List[Fraction]]:
    out = []
    for seed in seeds:
        if len(seed) < len(branch.params):
            continue
        env = {name: Fraction(v) for name, v in zip(branch.params, seed)}
        if any(v == 0 for v in env.values()):
            continue
        try:
            if any(evaluate_expression(e, env) == 0 for e in branch.avoid):
                continue
            pt = [evaluate_expression(e, env) for e in branch.point]
        except ZeroDivisionError:
            continue
        out.append(pt)
        if len(out) == count:
            break
    return out


def detect_jumps(family: DeformationFamily, branches: Sequence[Branch], seeds=DEFAULT_SEEDS,
                 count: int = 3, max_order: int = 6) -> List[BranchResult]:
    """Identify the codifferential along each branch by fingerprint.

    The family is extended (up to ``max_order``) until every sample point
    evaluates to an exact codifferential.
    """
    from .extensions import identify

    results = []
    for br in branches:
        pts = sample_points(br, seeds, count)
        samples = []
        for pt in pts:
            while True:
                try:
                    x = evaluate_at(family, pt)
                    break
                except NotClosed:
                    if family.order >= max_order or family.obstructed:
                        raise
                    extend_order(family, family.order + 1)
            idx, _ = identify(x, with_witness=False)
            samples.append((pt, idx))
        labels = {k for _, k in samples}
        stable = len(labels) == 1 and len(samples) >= min(count, 1)
        label = next(iter(labels)) if stable else None
        note = "" if stable else f"samples disagree: {sorted(str(k) for k in labels)}"
        if len(samples) < count:
            note = (note + "; " if note else "") + f"only {len(samples)} admissible samples"
        results.append(BranchResult(br, samples, label, stable, note))
    return results


# per-entry driver and the jump graph -----------------------------------------


def reference_family(index: int, order: Optional[int] = None) -> DeformationFamily:
    """Family of catalog entry ``index`` in its reference frame when one exists."""
    from .catalog import get
    from .plans import plan

    d = get(index).d
    p = plan(index)
    if p is None:
        fam = infinitesimal_universal(d)
        return extend_order(fam, order or 3)
    fam = infinitesimal_universal(d, p.directions(), frame="reference")
    return extend_order(fam, order or p.order, p.hint_terms())


def jumps_for(index: int, seeds=DEFAULT_SEEDS, count: int = 3) -> List[BranchResult]:
    from .plans import plan

    p = plan(index)
    if p is None:
        return []
    return detect_jumps(reference_family(index), p.branches, seeds, count)


@dataclass
class JumpGraph:
    edges: Dict[int, List[int]]
    results: Dict[int, List[BranchResult]]
    unidentified: List[Tuple[int, str]]
    unplanned: List[int]

    def self_loops(self) -> List[int]:
        return [k for k, out in self.edges.items() if k in out]

    def transitivity_violations(self) -> List[Tuple[int, int, int]]:
        bad = []
        for a, outs in self.edges.items():
            for b in outs:
                for c in self.edges.get(b, []):
                    if c != a and c not in outs:
                        bad.append((a, b, c))
        return bad

    def to_dot(self) -> str:
        lines = ["digraph jumps {"]
        for k in sorted(self.edges):
            lines.append(f"  d{k};")
        for k in sorted(self.edges):
            for j in self.edges[k]:
                lines.append(f"  d{k} -> d{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "edges": {f"d{k}": [f"d{j}" for j in v] for k, v in sorted(self.edges.items())},
            "self_loops": self.self_loops(),
            "transitivity_violations": [list(t) for t in self.transitivity_violations()],
            "unidentified": [list(u) for u in self.unidentified],
            "unplanned": self.unplanned,
            "branches": {f"d{k}": [r.to_json() for r in v] for k, v in sorted(self.results.items()) if v},
        }


def out_edges(index: int, results: Sequence[BranchResult]) -> List[int]:
    return sorted({r.label for r in results if r.label not in (None, 0, index)})


def jump_graph(seeds=DEFAULT_SEEDS, count: int = 3, indices: Optional[Sequence[int]] = None) -> JumpGraph:
    """Jumps from every catalog entry; entries with ``h^2`` odd part zero have none."""
    from .catalog import CATALOG_SIZE, get
    from .plans import plan

    edges: Dict[int, List[int]] = {}
    results: Dict[int, List[BranchResult]] = {}
    unidentified = []
    unplanned = []
    for k in indices or range(1, CATALOG_SIZE + 1):
        if cohomology(get(k).d, 2).odd_dim == 0:
            edges[k], results[k] = [], []
            continue
        if plan(k) is None:
            unplanned.append(k)
            edges[k], results[k] = [], []
            continue
        res = jumps_for(k, seeds, count)
        results[k] = res
        edges[k] = out_edges(k, res)
        for r in res:
            if any(lbl is None for _, lbl in r.samples):
                unidentified.append((k, r.branch.name))
    return JumpGraph(edges, results, unidentified, unplanned)
