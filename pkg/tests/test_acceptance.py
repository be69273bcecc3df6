"""Acceptance criteria 1-10, each checked strictly and reported as one line.

Whitelisted errata do not turn a red criterion green here; the only
allowance is the one the criterion itself grants (the d27 h3 cell in 2 and
the d28 comparison in 8).
"""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codiff import report as rp
from codiff.algebra import fingerprint, opposite, to_multiplication
from codiff.catalog import get
from codiff.deformations import (
    extend_order,
    ideals_equal,
    infinitesimal_universal,
    jump_graph,
    reference_family,
    relations_in_frame,
)
from codiff.equivalence import GradedAutomorphism, find_isomorphism, transport, verify
from codiff.extensions import (
    bidegree_basis,
    half_bracket_from_matrices,
    lambda_matrix_form,
    run_case,
    setup,
)
from codiff.graded import (
    SPACE_1_2,
    Coderivation,
    Parity,
    bracket,
    coboundary,
    compose,
    evaluate,
    evaluate_sum,
    is_codifferential,
    parity_of,
)
from codiff.hochschild import cohomology, cohomology_row
from codiff.plans import PLANS
from codiff.polynomial import parse_polynomial
from strategies import coderivations

RESULTS = {}


def record(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def rows():
    return {k: cohomology_row(get(k).d, 4) for k in range(1, 29)}


# 1 --------------------------------------------------------------------------------


def test_criterion_1_codifferentials():
    bad = []
    for k in range(1, 29):
        d = get(k).d
        m = to_multiplication(d)
        triples = list(itertools.product(range(1, 4), repeat=3))
        assoc = all(m.product(m.basis_product(a, b), {c: 1}) == m.product({a: 1}, m.basis_product(b, c))
                    for a, b, c in triples)
        if not (is_codifferential(d) and assoc and len(triples) == 27):
            bad.append(f"d{k}")
    record(1, not bad, f"[d,d]=0 and 27 associativity triples for 28 entries; failing {bad or 'none'}")


# 2 --------------------------------------------------------------------------------


def test_criterion_2_table1(rows):
    bad = []
    for k in range(1, 29):
        got = [e + o for e, o in rows[k]]
        for n, (g, x) in enumerate(zip(got, get(k).expected_row)):
            if g == x:
                continue
            if (k, n, g, x) == (27, 3, 17, 18):
                continue
            bad.append(f"d{k} h{n}: computed {g}, table {x}")
    d27 = sum(rows[27][3])
    record(2, not bad, f"h0..h4 totals for 28 rows (d27 h3 computed {d27}); mismatches {bad or 'none'}")


# 3 --------------------------------------------------------------------------------

SPLITS = [
    (1, 0, (0, 2)),
    (7, 2, (1, 0)),
    (9, 2, (1, 1)),
    (16, 2, (2, 0)),
    (17, 2, (2, 0)),
    (24, 2, (3, 3)),
    (25, 2, (4, 4)),
    (25, 3, (8, 8)),
    (27, 2, (5, 4)),
    (27, 3, (6, 11)),
    (28, 2, (5, 4)),
    (28, 3, (9, 8)),
]


def test_criterion_3_splits(rows):
    bad = [f"d{k} h{n}: computed {rows[k][n][0]}|{rows[k][n][1]}, stated {e}|{o}"
           for k, n, (e, o) in SPLITS if tuple(rows[k][n]) != (e, o)]
    record(3, not bad, f"{len(SPLITS)} stated splits; mismatches {bad or 'none'}")


# 4 --------------------------------------------------------------------------------


def test_criterion_4_metadata(rows):
    r = rp.check_metadata(rp.Errata(), rows=rows)
    bad = [f"{d.key} (stated {d.reference}, computed {d.computed})" for d in r.discrepancies
           if d.key.split(":")[0] in ("flag", "center", "center-h0")]
    # named examples
    m24, m26 = r.body["metadata"]["d24"], r.body["metadata"]["d26"]
    if not (m24["unital"] and m24["commutative"]):
        bad.append("d24 unital and commutative")
    if not m26["nilpotent"] or m26["center_dims"] != [0, 2]:
        bad.append("d26 nilpotent with center <v2, v3>")
    record(4, not bad, f"flags, center spans and center = h0 for 28 entries; mismatches {bad or 'none'}")


# 5 --------------------------------------------------------------------------------

CASES = {
    "s5": [3, 4, 5, 6, 7],
    "s6-mu0": list(range(10, 26)),
    "s6-mu1": [8, 9],
    "s4": [1, 2],
}
TAIL = ("s6t-mu1", "s6t-mu0", "s7-mu1", "s7-mu0")


def test_criterion_5_extensions():
    bad = []
    for name, expect in CASES.items():
        res = run_case(name)
        got = sorted(i for i, _ in res.matches if i is not None)
        if len(res.classes) != len(expect) or got != expect:
            bad.append(f"{name}: {len(res.classes)} classes -> {got}")
        for cls, (i, w) in zip(res.classes, res.matches):
            if i is None or w is None or not verify(w, cls.d, get(i).d):
                bad.append(f"{name}: unverified class {cls.d}")
    tail = set()
    for name in TAIL:
        res = run_case(name)
        for cls, (i, w) in zip(res.classes, res.matches):
            target = Coderivation.zero() if i == 0 else get(i).d
            if i is None or w is None or not verify(w, cls.d, target):
                bad.append(f"{name}: unverified class {cls.d}")
            tail.add(i)
    if tail != {0, 26, 27, 28}:
        bad.append(f"tail cases reach {sorted(tail)}")
    record(5, not bad, f"counts 5/16/2 plus d1,d2 and d26,d27,d28,zero with verified witnesses; problems {bad or 'none'}")


# 6 --------------------------------------------------------------------------------

PARAMS = {1: 0, 2: 1, 21: 2, 22: 2, 23: 2, 24: 3, 25: 4, 27: 4, 28: 5}


def test_criterion_6_directions():
    got = {k: cohomology(get(k).d, 2).odd_dim for k in PARAMS}
    bad = [f"d{k}: {got[k]} vs {n}" for k, n in PARAMS.items() if got[k] != n]
    record(6, not bad, f"odd h2 parameter counts {got}; mismatches {bad or 'none'}")


# 7 --------------------------------------------------------------------------------

IDEALS = {
    21: ["t1*(t2 - t1)"],
    22: ["t1*(t2 + t1)"],
    23: [],
    27: ["t1*t2 - t3**2 + t3*t4"],
    24: ["t2*(t1 + t2)", "t2*t3"],
}


def test_criterion_7_relations():
    bad = []
    for k, ref in IDEALS.items():
        fam = extend_order(infinitesimal_universal(get(k).d), 2)
        rels = relations_in_frame(fam, PLANS[k].directions(), 2)
        if not ideals_equal(rels, [parse_polynomial(r, fam.nparams) for r in ref]):
            bad.append(f"d{k}: <{', '.join(map(str, rels))}>")
    higher = reference_family(24).higher_terms()
    if not higher:
        bad.append("d24 has no higher-order terms")
    record(7, not bad, f"ideals by mutual membership for d21,d22,d23,d27,d24; d24 higher terms {len(higher)}; "
                       f"mismatches {bad or 'none'}")


# 8 --------------------------------------------------------------------------------

EDGES = {
    2: [1], 6: [1], 8: [1], 9: [1], 20: [7], 21: [3, 5], 22: [4, 5], 23: [1, 2, 7], 24: [1, 5, 7, 8],
    25: [1, 3, 4, 6, 7, 9], 26: [1, 2, 8, 9], 27: [1, 2, 8, 9, 26],
}


def test_criterion_8_jump_graph():
    g = jump_graph()
    bad = [f"d{k}: {g.edges[k]} vs {v}" for k, v in EDGES.items() if g.edges[k] != v]
    ref28 = sorted(get(28).jump_targets or [])
    errata = rp.Errata.load()
    if g.edges[28] != ref28 and not errata.known("jumps:d28"):
        bad.append(f"d28 divergence {g.edges[28]} vs {ref28} not in errata")
    if g.self_loops():
        bad.append(f"self-loops {g.self_loops()}")
    if g.transitivity_violations():
        bad.append(f"transitivity {g.transitivity_violations()[:3]}")
    record(8, not bad, f"out-edges for 12 listed entries, d28 via errata, closure and loops; mismatches {bad or 'none'}")


# 9 --------------------------------------------------------------------------------

PAIRS = [(3, 4), (10, 11), (12, 13), (14, 15), (16, 17), (18, 19), (21, 22)]


def _sign(f, g):
    return -1 if f.parity and g.parity else 1


def _run_counted(test):
    count = [0]

    def wrapped(*a):
        count[0] += 1
        test(*a)

    return count, wrapped


def _random_automorphism(rng):
    while True:
        e = rng.choice([1, -1, 2, -2, 3, Fraction(1, 2)])
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if a * d - b * c:
            return GradedAutomorphism.from_blocks([[e]], [[a, b], [c, d]])


def test_criterion_9_properties():
    problems = []
    counts = {}

    # bracket antisymmetry and Jacobi
    n_jac = [0]

    @settings(max_examples=100, database=None)
    @given(coderivations(max_terms=3), coderivations(max_terms=3), coderivations(max_terms=3))
    def jacobi(f, g, h):
        n_jac[0] += 1
        assert bracket(f, g) == bracket(g, f).scale(-_sign(f, g))
        assert bracket(f, bracket(g, h)) == bracket(bracket(f, g), h) + bracket(g, bracket(f, h)).scale(_sign(f, g))

    # compose against word evaluation
    n_comp = [0]

    @settings(max_examples=100, database=None)
    @given(coderivations(), coderivations())
    def oracle(f, g):
        n_comp[0] += 1
        for af, ag in itertools.product(f.arities() or {1}, g.arities() or {1}):
            fa, ga = f.of_arity(af), g.of_arity(ag)
            ca = compose(fa, ga)
            for w in SPACE_1_2.words(af + ag - 1):
                assert evaluate(ca, w) == evaluate_sum(fa, evaluate(ga, w))

    # matrix-form half bracket
    n_mat = [0]
    s6 = setup("s6-mu0")[0]
    basis = bidegree_basis(s6, 1, 1, Parity.ODD)

    @settings(max_examples=60, database=None)
    @given(st.lists(st.integers(-3, 3), min_size=len(basis), max_size=len(basis)))
    def matrix_form(cs):
        n_mat[0] += 1
        lam = Coderivation(SPACE_1_2, [(t, c) for t, c in zip(basis, cs) if c], Parity.ODD)
        assert half_bracket_from_matrices(s6, lambda_matrix_form(s6, lam)) == bracket(lam, lam).scale(Fraction(1, 2))

    for name, fn in (("antisymmetry+jacobi", jacobi), ("compose oracle", oracle), ("matrix form", matrix_form)):
        try:
            fn()
        except AssertionError as exc:
            problems.append(f"{name}: {exc}")
    counts["jacobi"], counts["compose"], counts["matrix"] = n_jac[0], n_comp[0], n_mat[0]
    if n_jac[0] < 100 or n_comp[0] < 100 or n_mat[0] < 50:
        problems.append(f"too few examples {counts}")

    # D^2 = 0 for every entry on full bases of degrees 0..3
    for k in range(1, 29):
        d = get(k).d
        for n in range(4):
            for p in (0, 1):
                f = Coderivation(SPACE_1_2, {(i, I): (i + sum(I)) % 3 - 1 for i in (1, 2, 3)
                                             for I in SPACE_1_2.words(n) if parity_of(SPACE_1_2, i, I) == p}, parity=p)
                if not coboundary(d, coboundary(d, f)).is_zero():
                    problems.append(f"D^2 on d{k} degree {n}")

    # opposite involution and the opposite pairs
    for k in range(1, 29):
        if opposite(opposite(get(k).d)) != get(k).d:
            problems.append(f"opposite involution d{k}")
    for a, b in PAIRS:
        w = find_isomorphism(opposite(get(a).d), get(b).d).witness
        if w is None or transport(w, opposite(get(a).d)) != get(b).d:
            problems.append(f"opposite pair d{a}/d{b}")

    # fingerprint invariance, 20 seeded automorphisms per entry
    rng = random.Random(2024)
    n_fp = 0
    for k in range(1, 29):
        d = get(k).d
        fp = fingerprint(d)
        for _ in range(20):
            g = _random_automorphism(rng)
            n_fp += 1
            if fingerprint(transport(g, d)) != fp:
                problems.append(f"fingerprint d{k} under {g}")
    counts["fingerprint"] = n_fp
    record(9, not problems, f"examples {counts}; problems {problems or 'none'}")


# 10 -------------------------------------------------------------------------------


def test_criterion_10_separation():
    pairs = rp.separation()
    missing = [p for p, v in pairs.items() if not v]
    opp = {p: pairs[f"d{a}-d{b}"][0] for a, b in PAIRS for p in [f"d{a}-d{b}"]}
    record(10, len(pairs) == 378 and not missing,
           f"{len(pairs)} pairs separated by fingerprint, unseparated {missing or 'none'}; opposite pairs by {opp}")
