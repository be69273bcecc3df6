"""Extensions ``0 -> M -> V -> W -> 0`` written as ``d = delta + mu + lambda + psi``.

``V`` is split by index sets: ``M`` is an ideal carrying ``mu``, ``W`` the
quotient carrying ``delta``.  ``C^{k,l}`` holds cochains with target in ``M``
whose source words have exactly ``k`` letters from ``M`` and ``l`` from ``W``.
``[d, d] = 0`` splits by bidegree into three residuals:

    [delta, lambda] + 1/2 [lambda, lambda] + [mu, psi]    (Maurer-Cartan)
    [mu, lambda]                                          (compatibility)
    [delta + lambda, psi]                                 (cocycle)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .graded import (
    Coderivation,
    GradedSpace,
    Parity,
    SPACE_1_2,
    Term,
    bracket,
    is_codifferential,
    parity_of,
)
from .linalg import ExactMatrix, nullspace, rank, span
from .scalar import ONE, ZERO, Scalar

__all__ = [
    "ExtensionSetup",
    "BidegreeError",
    "UnsupportedSetup",
    "LambdaMatrices",
    "ExtensionClass",
    "TauClassification",
    "bidegree_basis",
    "bidegree_of",
    "mc_residual",
    "lambda_matrix_form",
    "lambda_from_matrices",
    "half_bracket_from_matrices",
    "enumerate_semisimple_extensions",
    "classify_tau",
    "tau_prime",
    "exp_beta",
    "identify",
    "canonical_form",
    "solves_mc",
    "assemble",
    "setup",
    "CASES",
    "run_case",
]

HALF = Scalar(Fraction(1, 2))


class BidegreeError(ValueError):
    pass


class UnsupportedSetup(ValueError):
    pass


@dataclass(frozen=True)
class ExtensionSetup:
    name: str
    space: GradedSpace
    M: Tuple[int, ...]
    W: Tuple[int, ...]
    delta: Coderivation
    mu: Coderivation

    def __post_init__(self):
        if sorted(self.M + self.W) != list(range(1, self.space.dim + 1)):
            raise ValueError("M and W must partition the basis")
        for name, c, part in (("delta", self.delta, set(self.W)), ("mu", self.mu, set(self.M))):
            for (i, I), _ in c.items():
                if i not in part or not set(I) <= part:
                    raise ValueError(f"{name} must be supported on its own subspace")
            if not is_codifferential(c):
                raise ValueError(f"{name} is not a codifferential")

    def in_M(self, i: int) -> bool:
        return i in self.M

    def zero(self, parity: Parity = Parity.ODD) -> Coderivation:
        return Coderivation.zero(self.space, parity)


def bidegree_of(setup: ExtensionSetup, term: Term) -> Optional[Tuple[int, int]]:
    """``(k, l)`` for a term with target in ``M``, else None."""
    i, I = term
    if not setup.in_M(i):
        return None
    k = sum(1 for a in I if setup.in_M(a))
    return (k, len(I) - k)


def bidegree_basis(setup: ExtensionSetup, k: int, l: int, parity: Optional[Parity] = None) -> List[Term]:
    """Basis cochains of ``C^{k,l}``, target-major then lexicographic.

    Source words are the words of ``T^{k,l}``: ``k`` letters from ``M`` and
    ``l`` letters from ``W`` in any order.
    """
    if k < 0 or l < 0:
        raise ValueError("bidegree must be non-negative")
    out = []
    for i in setup.M:
        for I in setup.space.words(k + l):
            if sum(1 for a in I if setup.in_M(a)) != k:
                continue
            if parity is not None and parity_of(setup.space, i, I) != parity:
                continue
            out.append((i, I))
    return out


def _check_bidegree(setup: ExtensionSetup, c: Coderivation, want: Tuple[int, int], label: str) -> None:
    for term, _ in c.items():
        if bidegree_of(setup, term) != want:
            raise BidegreeError(f"{label} has term {term} outside C^{want}")


def mc_residual(setup: ExtensionSetup, lam: Coderivation, psi: Optional[Coderivation] = None):
    """``(mc, compat, cocycle)`` residuals for ``d = delta + mu + lam + psi``."""
    psi = setup.zero() if psi is None else psi
    _check_bidegree(setup, lam, (1, 1), "lambda")
    _check_bidegree(setup, psi, (0, 2), "psi")
    mc = bracket(setup.delta, lam) + bracket(lam, lam).scale(HALF) + bracket(setup.mu, psi)
    compat = bracket(setup.mu, lam)
    cocycle = bracket(setup.delta + lam, psi)
    return mc, compat, cocycle


def assemble(setup: ExtensionSetup, lam: Coderivation, psi: Optional[Coderivation] = None) -> Coderivation:
    out = setup.delta + setup.mu + lam
    return out if psi is None else out + psi


# lambda as matrices --------------------------------------------------------


@dataclass(frozen=True)
class LambdaMatrices:
    """``L[k][i][j]`` is the coefficient of ``psi_{m_i}^{w_k m_j}``; ``R`` uses ``m_j w_k``.

    Indices ``i, j`` run over positions in ``setup.M`` and ``k`` over ``setup.W``.
    """

    M: Tuple[int, ...]
    W: Tuple[int, ...]
    L: Tuple[Tuple[Tuple[Scalar, ...], ...], ...]
    R: Tuple[Tuple[Tuple[Scalar, ...], ...], ...]
    m_parity: Tuple[int, ...]

    def _part(self, mats, odd: bool):
        return tuple(
            tuple(
                tuple(v if (self.m_parity[i] != self.m_parity[j]) == odd else ZERO for j, v in enumerate(row))
                for i, row in enumerate(A)
            )
            for A in mats
        )

    @property
    def LE(self):
        return self._part(self.L, False)

    @property
    def LO(self):
        return self._part(self.L, True)

    @property
    def RE(self):
        return self._part(self.R, False)

    @property
    def RO(self):
        return self._part(self.R, True)

    def is_zero(self) -> bool:
        return not any(v for mats in (self.L, self.R) for A in mats for row in A for v in row)

    def to_json(self) -> dict:
        enc = lambda mats: [[[str(v) for v in row] for row in A] for A in mats]
        return {"M": list(self.M), "W": list(self.W), "L": enc(self.L), "R": enc(self.R)}


def lambda_matrix_form(setup: ExtensionSetup, lam: Coderivation) -> LambdaMatrices:
    _check_bidegree(setup, lam, (1, 1), "lambda")
    pos = {m: p for p, m in enumerate(setup.M)}
    q = len(setup.M)
    L = [[[ZERO] * q for _ in range(q)] for _ in setup.W]
    R = [[[ZERO] * q for _ in range(q)] for _ in setup.W]
    wpos = {w: p for p, w in enumerate(setup.W)}
    for (i, (a, b)), c in lam.items():
        if a in wpos:
            L[wpos[a]][pos[i]][pos[b]] = c
        else:
            R[wpos[b]][pos[i]][pos[a]] = c
    freeze = lambda mats: tuple(tuple(tuple(r) for r in A) for A in mats)
    par = tuple(int(setup.space.parity(m)) for m in setup.M)
    return LambdaMatrices(setup.M, setup.W, freeze(L), freeze(R), par)


def lambda_from_matrices(setup: ExtensionSetup, mats: LambdaMatrices) -> Coderivation:
    terms = []
    for k, w in enumerate(setup.W):
        for i, mi in enumerate(setup.M):
            for j, mj in enumerate(setup.M):
                if mats.L[k][i][j]:
                    terms.append(((mi, (w, mj)), mats.L[k][i][j]))
                if mats.R[k][i][j]:
                    terms.append(((mi, (mj, w)), mats.R[k][i][j]))
    return Coderivation(setup.space, terms, Parity.ODD)


def _mm(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]


def _msub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _madd(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def half_bracket_from_matrices(setup: ExtensionSetup, mats: LambdaMatrices) -> Coderivation:
    """``1/2 [lambda, lambda]`` rebuilt from matrix products alone.

    Only for ``W`` purely odd, where ``L_k = LE_k`` and ``R_k = RE_k``:

        -psi_i^{klj} (L_k L_l) + psi_i^{kjl} (R_l L_k - L_k R_l) + psi_i^{jkl} (R_l R_k)
    """
    if any(setup.space.parity(w) == Parity.EVEN for w in setup.W):
        raise UnsupportedSetup("matrix form implemented for purely odd W")
    terms: Dict[Term, Scalar] = {}

    def put(i, I, v):
        if v:
            terms[(i, I)] = terms.get((i, I), ZERO) + v

    for k, wk in enumerate(setup.W):
        for l, wl in enumerate(setup.W):
            LL = _mm(mats.L[k], mats.L[l])
            mid = _msub(_mm(mats.R[l], mats.L[k]), _mm(mats.L[k], mats.R[l]))
            RR = _mm(mats.R[l], mats.R[k])
            for i, mi in enumerate(setup.M):
                for j, mj in enumerate(setup.M):
                    put(mi, (wk, wl, mj), -LL[i][j])
                    put(mi, (wk, mj, wl), mid[i][j])
                    put(mi, (mj, wk, wl), RR[i][j])
    return Coderivation(setup.space, [(t, c) for t, c in terms.items() if c], Parity.EVEN)


# enumeration ---------------------------------------------------------------


def _admissible_permutations(setup: ExtensionSetup) -> List[Dict[int, int]]:
    """Basis permutations preserving ``M``, ``W``, parity, ``delta`` and ``mu``."""
    from .equivalence import GradedAutomorphism, transport

    sp = setup.space
    out = []
    blocks = []
    for part in (setup.M, setup.W):
        for p in (Parity.EVEN, Parity.ODD):
            blocks.append([i for i in part if sp.parity(i) == p])
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = {}
        for b, img in zip(blocks, choice):
            perm.update(zip(b, img))
        g = _perm_automorphism(sp, perm)
        if transport(g, setup.delta) == setup.delta and transport(g, setup.mu) == setup.mu:
            out.append(perm)
    return out


def _perm_automorphism(sp: GradedSpace, perm: Dict[int, int]):
    from .equivalence import GradedAutomorphism

    n = sp.dim
    G = [[ZERO] * n for _ in range(n)]
    for j, i in perm.items():
        G[i - 1][j - 1] = ONE
    e = sp.even_dim
    return GradedAutomorphism.from_blocks([r[:e] for r in G[:e]], [r[e:] for r in G[e:]])


def _key(d: Coderivation) -> tuple:
    return tuple(sorted(((i, I), c.sort_key()) for (i, I), c in d.items()))


def canonical_form(setup: ExtensionSetup, d: Coderivation, perms=None) -> Coderivation:
    """Least transport of ``d`` over the admissible permutations."""
    from .equivalence import transport

    perms = _admissible_permutations(setup) if perms is None else perms
    best = None
    for perm in perms:
        t = transport(_perm_automorphism(setup.space, perm), d)
        if best is None or _key(t) < _key(best):
            best = t
    return best


def _is_diagonal_semisimple(setup: ExtensionSetup) -> bool:
    if any(setup.space.parity(w) == Parity.EVEN for w in setup.W):
        return False
    want = Coderivation(setup.space, [((w, (w, w)), 1) for w in setup.W])
    return setup.delta == want


def _diagonal_candidates(setup: ExtensionSetup, values=None) -> Iterable[Coderivation]:
    """Diagonal ``L_k``, ``R_k`` obeying orthogonality across ``k``.

    Each ``M`` index gets at most one ``k`` with a nonzero ``L_k`` entry and at
    most one with a nonzero ``R_k`` entry.  The entry values default to the
    admissible eigenvalues: 1 for ``L``; -1 on even and 1 on odd ``M`` for ``R``.
    """
    sp = setup.space
    slots = []
    for m in setup.M:
        l_vals = [ONE] if values is None else values
        r_vals = [(-ONE if sp.parity(m) == Parity.EVEN else ONE)] if values is None else values
        l_opts = [None] + [(w, v) for w in setup.W for v in l_vals]
        r_opts = [None] + [(w, v) for w in setup.W for v in r_vals]
        slots.append((m, l_opts, r_opts))
    per_m = [list(itertools.product(lo, ro)) for _, lo, ro in slots]
    for combo in itertools.product(*per_m):
        terms = []
        for (m, _, _), (lc, rc) in zip(slots, combo):
            if lc is not None:
                terms.append(((m, (lc[0], m)), lc[1]))
            if rc is not None:
                terms.append(((m, (m, rc[0])), rc[1]))
        yield Coderivation(sp, terms, Parity.ODD)


def _generic_candidates(setup: ExtensionSetup, values=(-1, 0, 1), limit: int = 8) -> Iterable[Coderivation]:
    basis = bidegree_basis(setup, 1, 1, Parity.ODD)
    if len(basis) > limit:
        raise UnsupportedSetup(f"C^(1,1) has {len(basis)} odd basis elements; brute force is capped at {limit}")
    for coeffs in itertools.product(values, repeat=len(basis)):
        yield Coderivation(setup.space, [(t, c) for t, c in zip(basis, coeffs) if c], Parity.ODD)


@dataclass
class ExtensionClass:
    setup: str
    d: Coderivation
    lam: Coderivation
    tau: Optional[Coderivation] = None
    raw_members: int = 1

    def to_json(self) -> dict:
        return {
            "setup": self.setup,
            "codifferential": str(self.d),
            "lambda": str(self.lam),
            "tau": None if self.tau is None else str(self.tau),
            "raw_members": self.raw_members,
        }


def solves_mc(setup: ExtensionSetup, lam: Coderivation, psi: Optional[Coderivation] = None) -> bool:
    return all(r.is_zero() for r in mc_residual(setup, lam, psi))


def enumerate_semisimple_extensions(setup: ExtensionSetup, values=None) -> Tuple[List[ExtensionClass], int]:
    """Classes of ``lambda`` with ``psi = 0`` and the number of raw solutions.

    Diagonal candidates are used when ``delta`` is ``C^n`` on a purely odd
    ``W``; otherwise every odd ``lambda`` with coefficients in {-1, 0, 1} is
    tried, which is only feasible for small ``C^{1,1}``.
    """
    if _is_diagonal_semisimple(setup):
        cands = _diagonal_candidates(setup, values)
    else:
        cands = _generic_candidates(setup)
    perms = _admissible_permutations(setup)
    classes: Dict[tuple, ExtensionClass] = {}
    raw = 0
    for lam in cands:
        if not solves_mc(setup, lam):
            continue
        raw += 1
        d = assemble(setup, lam)
        canon = canonical_form(setup, d, perms)
        key = _key(canon)
        if key in classes:
            classes[key].raw_members += 1
        else:
            classes[key] = ExtensionClass(setup.name, canon, canon - setup.delta - setup.mu)
    ordered = [classes[k] for k in sorted(classes)]
    return ordered, raw


# tau classification ----------------------------------------------------------


@dataclass
class TauClassification:
    setup: str
    h_basis: List[Coderivation]
    representatives: List[Coderivation]
    codifferentials: List[Coderivation]
    action_rank: int
    note: str

    def to_json(self) -> dict:
        return {
            "setup": self.setup,
            "h_dim": len(self.h_basis),
            "h_basis": [str(x) for x in self.h_basis],
            "representatives": [str(x) for x in self.representatives],
            "codifferentials": [str(x) for x in self.codifferentials],
            "action_rank": self.action_rank,
            "note": self.note,
        }


def _vec(basis: List[Term], c: Coderivation) -> Dict[int, Scalar]:
    idx = {t: n for n, t in enumerate(basis)}
    return {idx[t]: v for t, v in c.items()}


def _kernel(basis: List[Term], maps, parity: Parity, space: GradedSpace) -> List[Coderivation]:
    """Common kernel of the linear maps ``f: Coderivation -> Coderivation`` on ``span(basis)``."""
    if not basis:
        return []
    cols = []
    images = []
    for t in basis:
        x = Coderivation(space, [(t, 1)], parity)
        images.append([f(x) for f in maps])
    targets = sorted({k for im in images for y in im for k, _ in y.items()})
    tidx = {k: n for n, k in enumerate(targets)}
    for im in images:
        col = {}
        for slot, y in enumerate(im):
            for k, v in y.items():
                col[slot * len(targets) + tidx[k]] = v
        cols.append(col)
    M = ExactMatrix.from_columns(cols, max(1, len(maps) * len(targets)))
    ns = nullspace(M)
    return [Coderivation(space, [(basis[j], v) for j, v in vec.items()], parity) for vec in ns.sparse_basis()]


def stabilizer_algebra(setup: ExtensionSetup, lam: Coderivation) -> List[Coderivation]:
    """Even block-diagonal arity-1 ``X`` with ``[X, delta] = [X, mu] = [X, lam] = 0``."""
    sp = setup.space
    basis = []
    for part in (setup.M, setup.W):
        for i in part:
            for j in part:
                if sp.parity(i) == sp.parity(j):
                    basis.append((i, (j,)))
    maps = [
        lambda X: bracket(X, setup.delta),
        lambda X: bracket(X, setup.mu),
        lambda X: bracket(X, lam),
    ]
    return _kernel(basis, maps, Parity.EVEN, sp)


def classify_tau(setup: ExtensionSetup, lam: Optional[Coderivation] = None) -> TauClassification:
    """Orbit representatives of ``H^{0,2}_{mu, delta+lambda}`` under the stabilizer of ``(delta, mu, lambda)``.

    ``B_mu^{0,2} = 0``, so the space is the odd ``tau`` in ``C^{0,2}`` killed by
    ``D_mu`` and ``D_{delta+lambda}``, modulo ``D_{delta+lambda}`` of the even
    ``D_mu``-cocycles in ``C^{0,1}``.  When the infinitesimal action of the
    stabilizer spans all of ``gl(H)`` the group acts transitively on nonzero
    classes and the representatives are ``0`` and one nonzero class.
    """
    sp = setup.space
    lam = setup.zero() if lam is None else lam
    if not solves_mc(setup, lam):
        raise ValueError("lambda does not satisfy the Maurer-Cartan system with psi = 0")
    dl = setup.delta + lam
    basis2 = bidegree_basis(setup, 0, 2, Parity.ODD)
    Z = _kernel(basis2, [lambda t: bracket(setup.mu, t), lambda t: bracket(dl, t)], Parity.ODD, sp)
    basis1 = bidegree_basis(setup, 0, 1, Parity.EVEN)
    Z1 = _kernel(basis1, [lambda b: bracket(setup.mu, b)], Parity.EVEN, sp)
    B = [bracket(dl, b) for b in Z1]
    amb = len(basis2)
    Bsp = span([_vec(basis2, b) for b in B], amb)
    # complement of B inside Z, in echelon form
    Zred = span([_reduce(Bsp, _vec(basis2, z)) for z in Z], amb)
    H = [Coderivation(sp, [(basis2[j], v) for j, v in row.items()], Parity.ODD) for row in Zred.sparse_basis()]
    h = len(H)
    if h == 0:
        d = assemble(setup, lam)
        return TauClassification(setup.name, [], [setup.zero()], [d], 0, "H is zero; single orbit")
    X = stabilizer_algebra(setup, lam)
    mats = []
    for x in X:
        cols = []
        for t in H:
            y = _reduce(Bsp, _vec(basis2, bracket(x, t)))
            coords = Zred.coordinates(y)
            if coords is None:
                raise AssertionError("stabilizer does not preserve the cocycle space")
            cols.append(coords)
        mats.append({r * h + c: cols[c][r] for c in range(h) for r in range(h) if cols[c][r]})
    act_rank = span(mats, h * h).dim if mats else 0
    if act_rank != h * h:
        raise NotImplementedError(
            f"stabilizer acts on the {h}-dimensional class space with rank {act_rank}; orbit solver not available"
        )
    reps = [setup.zero(), H[0]]
    ds = [assemble(setup, lam, r) if not r.is_zero() else assemble(setup, lam) for r in reps]
    return TauClassification(setup.name, H, reps, ds, act_rank, "stabilizer acts as gl(H): orbits {0} and H minus 0")


def _reduce(sub, x):
    from .linalg import reduce_sparse

    return reduce_sparse(sub, x)


def tau_prime(
    setup: ExtensionSetup,
    lam: Coderivation,
    psi: Coderivation,
    tau: Coderivation,
    g,
    beta: Coderivation,
    sign: int = 1,
) -> Coderivation:
    """``g*(psi) - psi + [delta + lambda + sign/2 [mu, beta], beta] + g*(tau)``.

    With ``exp(beta) = 1 + beta`` and ``g* d = g^-1 d (g x g)``, only
    ``sign = +1`` agrees with the ``C^{0,2}`` part of a direct transport once
    ``[mu, beta] != 0``; ``sign = -1`` is kept so the two can be compared.
    """
    from .equivalence import transport

    inner = setup.delta + lam + bracket(setup.mu, beta).scale(HALF * sign)
    return transport(g, psi) - psi + bracket(inner, beta) + transport(g, tau)


def exp_beta(setup: ExtensionSetup, beta: Coderivation):
    """The even automorphism ``v -> v + beta(v)`` for ``beta`` in ``C^{0,1}``."""
    from .equivalence import GradedAutomorphism

    sp = setup.space
    n = sp.dim
    G = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = ONE
    for (i, (j,)), c in beta.items():
        G[i - 1][j - 1] = G[i - 1][j - 1] + c
    e = sp.even_dim
    return GradedAutomorphism.from_blocks([r[:e] for r in G[:e]], [r[e:] for r in G[e:]])


# the setups used in the construction of the catalog ---------------------------


def _c(text: str) -> Coderivation:
    from .catalog import parse_expression

    return parse_expression(text) if text else Coderivation.zero(SPACE_1_2)


def setup(name: str) -> List[ExtensionSetup]:
    """Named setups; some names cover two structures ``mu`` on ``M``."""
    S = SPACE_1_2
    simple11 = "+1:13 -1:31 +3:11 -3:33"
    table = {
        "s4": [("s4-mu-simple", (2,), (1, 3), simple11, "+2:22"), ("s4-mu0", (2,), (1, 3), simple11, "")],
        "s5": [("s5", (1,), (2, 3), "+2:22 +3:33", "")],
        "s6-mu0": [("s6-mu0", (1, 2), (3,), "+3:33", "")],
        "s6-mu1": [("s6-mu1", (1, 2), (3,), "+3:33", "+2:11")],
        "s6t-mu1": [("s6t-mu1", (1, 2), (3,), "", "+2:11")],
        "s6t-mu0": [("s6t-mu0", (1, 2), (3,), "", "")],
        "s7-mu1": [("s7-mu1", (2, 3), (1,), "", "+2:33")],
        "s7-mu0": [("s7-mu0", (2, 3), (1,), "", "")],
    }
    if name not in table:
        raise KeyError(f"unknown setup {name!r}; choose from {sorted(table)}")
    return [ExtensionSetup(n, S, M, W, _c(dl), _c(mu)) for n, M, W, dl, mu in table[name]]


# cases whose delta is semisimple go through lambda; the rest through tau
CASES = {
    "s4": "semisimple",
    "s5": "semisimple",
    "s6-mu0": "semisimple",
    "s6-mu1": "semisimple",
    "s6t-mu1": "nilpotent",
    "s6t-mu0": "nilpotent",
    "s7-mu1": "nilpotent",
    "s7-mu0": "nilpotent",
}


@dataclass
class CaseResult:
    case: str
    classes: List[ExtensionClass]
    raw_solutions: int
    matches: List[Tuple[int, Optional[object]]] = field(default_factory=list)

    def to_json(self) -> dict:
        out = []
        for cls, (idx, wit) in zip(self.classes, self.matches):
            row = cls.to_json()
            row["catalog"] = idx
            row["witness"] = None if wit is None else wit.to_json()
            out.append(row)
        return {"case": self.case, "raw_solutions": self.raw_solutions, "classes": out}


def identify(d: Coderivation, with_witness: bool = True):
    """Catalog index of ``d`` (0 for the zero codifferential) and a verified witness.

    The fingerprint selects the candidate; the witness is searched only for it.
    Returns ``(None, None)`` when no catalog fingerprint matches.
    """
    from .algebra import fingerprint
    from .catalog import entries
    from .equivalence import GradedAutomorphism, find_isomorphism

    if d.is_zero():
        return 0, GradedAutomorphism.identity(d.space) if with_witness else None
    fp = fingerprint(d)
    for e in entries():
        if fingerprint(e.d) == fp:
            if not with_witness:
                return e.index, None
            res = find_isomorphism(d, e.d, screen=False)
            return e.index, res.witness
    return None, None


def run_case(name: str, with_witness: bool = True) -> CaseResult:
    kind = CASES.get(name)
    if kind is None:
        raise KeyError(f"unknown case {name!r}; choose from {sorted(CASES)}")
    classes: List[ExtensionClass] = []
    raw = 0
    for s in setup(name):
        if kind == "semisimple":
            found, r = enumerate_semisimple_extensions(s)
            classes.extend(found)
            raw += r
        else:
            tc = classify_tau(s)
            for rep, d in zip(tc.representatives, tc.codifferentials):
                classes.append(ExtensionClass(s.name, d, s.zero(), rep))
            raw += len(tc.representatives)
    result = CaseResult(name, classes, raw)
    for cls in classes:
        result.matches.append(identify(cls.d, with_witness))
    return result
