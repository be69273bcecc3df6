"""Even automorphisms of a graded space and isomorphism search between codifferentials.

``transport(g, d) = g^{-1} o d o (g x ... x g)``.  The search is sound but
not complete: a returned witness is always verified exactly, while "none
found" proves nothing unless the fingerprints already differ.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .graded import Coderivation, GradedSpace, SPACE_1_2, is_codifferential
from .linalg import ExactMatrix, rank, solve
from .scalar import I, ONE, ZERO, Scalar, as_scalar

__all__ = [
    "GradedAutomorphism",
    "SingularAutomorphism",
    "transport",
    "verify",
    "find_isomorphism",
    "SearchResult",
    "SCALINGS",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 200_000

Matrix = Tuple[Tuple[Scalar, ...], ...]


class SingularAutomorphism(ValueError):
    pass


def _matrix(rows) -> Matrix:
    return tuple(tuple(as_scalar(x) for x in r) for r in rows)


def _mat_inverse(M: Matrix) -> Matrix:
    n = len(M)
    if n == 0:
        return ()
    A = ExactMatrix.from_rows([list(r) for r in M], n)
    if rank(A) < n:
        raise SingularAutomorphism("block is singular")
    cols = [solve(A, [ONE if i == j else ZERO for i in range(n)]) for j in range(n)]
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def _mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(n)), ZERO) for j in range(len(B[0]) if B else 0))
        for i in range(n)
    )


@dataclass(frozen=True)
class GradedAutomorphism:
    """Block-diagonal even map: ``even`` acts on ``v_1..v_e``, ``odd`` on the rest.

    Column ``j`` of a block holds the image of the ``j``-th basis vector.
    """

    even: Matrix
    odd: Matrix

    def __post_init__(self):
        for M in (self.even, self.odd):
            if any(len(r) != len(M) for r in M):
                raise ValueError("blocks must be square")
        _mat_inverse(self.even)
        _mat_inverse(self.odd)

    @classmethod
    def from_blocks(cls, even, odd) -> "GradedAutomorphism":
        return cls(_matrix(even), _matrix(odd))

    @classmethod
    def identity(cls, space: GradedSpace = SPACE_1_2) -> "GradedAutomorphism":
        eye = lambda n: tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        return cls(eye(space.even_dim), eye(space.odd_dim))

    @property
    def space(self) -> GradedSpace:
        return GradedSpace(len(self.even), len(self.odd))

    def full(self) -> Matrix:
        e, o = len(self.even), len(self.odd)
        n = e + o
        rows = [[ZERO] * n for _ in range(n)]
        for i in range(e):
            for j in range(e):
                rows[i][j] = self.even[i][j]
        for i in range(o):
            for j in range(o):
                rows[e + i][e + j] = self.odd[i][j]
        return tuple(tuple(r) for r in rows)

    def inverse(self) -> "GradedAutomorphism":
        return GradedAutomorphism(_mat_inverse(self.even), _mat_inverse(self.odd))

    def __matmul__(self, other: "GradedAutomorphism") -> "GradedAutomorphism":
        return GradedAutomorphism(_mat_mul(self.even, other.even), _mat_mul(self.odd, other.odd))

    def to_json(self) -> dict:
        return {
            "even": [[c.to_json() for c in r] for r in self.even],
            "odd": [[c.to_json() for c in r] for r in self.odd],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GradedAutomorphism":
        return cls(
            tuple(tuple(Scalar.from_json(c) for c in r) for r in obj["even"]),
            tuple(tuple(Scalar.from_json(c) for c in r) for r in obj["odd"]),
        )

    def __str__(self) -> str:
        return "\n".join("[" + "  ".join(f"{str(c):>6}" for c in r) + "]" for r in self.full())


def _columns(M: Matrix) -> List[Dict[int, Scalar]]:
    """Sparse images ``g(v_j)`` with 1-based indices."""
    n = len(M)
    return [{i + 1: M[i][j] for i in range(n) if M[i][j]} for j in range(n)]


def transport(g: GradedAutomorphism, d: Coderivation) -> Coderivation:
    """``g^* d = g^{-1} o d o g^{x n}`` on each arity-``n`` part."""
    if g.space != d.space:
        raise ValueError("automorphism and coderivation live on different spaces")
    G = g.full()
    cols = _columns(G)
    inv_cols = _columns(_mat_inverse(G))
    n = d.space.dim
    # d(g v_x1, ..., g v_xk) summed over the terms of d
    by_source: Dict[Tuple[int, ...], Dict[int, Scalar]] = {}
    for (k, src), c in d.items():
        by_source.setdefault(src, {})[k] = c
    out: Dict[Tuple[int, Tuple[int, ...]], Scalar] = {}
    arities = sorted({len(s) for s in by_source})
    for ar in arities:
        for word in itertools.product(range(1, n + 1), repeat=ar):
            image: Dict[int, Scalar] = {}
            # expand g v_w1 x ... x g v_wk
            expansions = [cols[w - 1] for w in word]
            for combo in itertools.product(*(e.items() for e in expansions)):
                src = tuple(a for a, _ in combo)
                hit = by_source.get(src)
                if not hit:
                    continue
                coef = ONE
                for _, c in combo:
                    coef = coef * c
                for k, c in hit.items():
                    image[k] = image.get(k, ZERO) + coef * c
            for k, c in image.items():
                if not c:
                    continue
                for i, a in inv_cols[k - 1].items():
                    key = (i, word)
                    out[key] = out.get(key, ZERO) + a * c
    return Coderivation(d.space, [(k, c) for k, c in out.items() if c], d.parity)


def verify(g: GradedAutomorphism, d1: Coderivation, d2: Coderivation) -> bool:
    """Exact check of ``transport(g, d1) == d2``."""
    try:
        return transport(g, d1) == d2
    except (ValueError, SingularAutomorphism):
        return False


def _scaling_set() -> Tuple[Scalar, ...]:
    base = [ONE, -ONE, I, -I]
    for k in (2, 3):
        for s in (1, -1):
            base.append(Scalar(s * k))
            base.append(Scalar(Fraction(s, k)))
    return tuple(base)


SCALINGS = _scaling_set()


@dataclass
class SearchResult:
    witness: Optional[GradedAutomorphism]
    reason: str
    spent: int

    def __bool__(self) -> bool:
        return self.witness is not None


def _monomial_search(d1: Coderivation, d2: Coderivation, budget: int) -> Tuple[Optional[GradedAutomorphism], int]:
    """Permutation within each parity block times diagonal scalings from ``SCALINGS``.

    For a monomial ``g`` the transported support is a relabelling of the support
    of ``d1``, so a permutation is skipped unless supports agree, and each
    scaling candidate is checked coefficient by coefficient.
    """
    space = d1.space
    e, o = space.even_dim, space.odd_dim
    spent = 0
    terms1 = list(d1.items())
    for pe in itertools.permutations(range(e)):
        for po in itertools.permutations(range(o)):
            perm = [0] * (space.dim + 1)  # g v_j = s_j v_perm[j]
            for j in range(e):
                perm[j + 1] = pe[j] + 1
            for j in range(o):
                perm[e + j + 1] = e + po[j] + 1
            inv = {perm[j]: j for j in range(1, space.dim + 1)}
            # g^* d1 has term (inv k, inv src) with coeff c * prod s_src / s_k
            relabeled = {}
            for (k, src), c in terms1:
                relabeled[(inv[k], tuple(inv[a] for a in src))] = (c, k, src)
            if set(relabeled) != set(k for k, _ in d2.items()):
                continue
            for scales in itertools.product(SCALINGS, repeat=space.dim):
                spent += 1
                if spent > budget:
                    return None, spent
                s = {j: scales[j - 1] for j in range(1, space.dim + 1)}
                ok = True
                for key, (c, k, src) in relabeled.items():
                    val = c
                    for a in src:
                        val = val * s[inv[a]]
                    val = val / s[inv[k]]
                    if val != d2.coefficient(*key):
                        ok = False
                        break
                if not ok:
                    continue
                G = [[ZERO] * space.dim for _ in range(space.dim)]
                for j in range(1, space.dim + 1):
                    G[perm[j] - 1][j - 1] = s[j]
                g = GradedAutomorphism.from_blocks(
                    [r[:e] for r in G[:e]], [r[e:] for r in G[e:]]
                )
                if verify(g, d1, d2):
                    return g, spent
    return None, spent


def _algebraic_search(d1: Coderivation, d2: Coderivation, budget: int) -> Tuple[Optional[GradedAutomorphism], int]:
    """Solve ``d1 o (g x g) = g o d2`` for triangular and then general block shapes.

    Free parameters left by the solver are set to small integers until an
    invertible exact solution is found.
    """
    import sympy

    space = d1.space
    e, o = space.even_dim, space.odd_dim
    n = space.dim
    spent = 0

    def shapes():
        # entries: None = unknown, 0 = fixed zero; even block always diagonal-unknown
        full = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if (i < e) != (j < e):
                    full[i][j] = 0
        yield "upper", [[(0 if (i > j) else x) for j, x in enumerate(r)] for i, r in enumerate(full)]
        yield "lower", [[(0 if (i < j) else x) for j, x in enumerate(r)] for i, r in enumerate(full)]
        yield "general", full

    for name, shape in shapes():
        for perm in itertools.permutations(range(o)):
            spent += 1
            if spent > budget:
                return None, spent
            symbols = {}
            G = [[sympy.Integer(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(n):
                    if shape[i][j] is None:
                        sym = sympy.Symbol(f"g{i + 1}{j + 1}")
                        symbols[(i, j)] = sym
                        G[i][j] = sym
            # permute odd columns
            if o:
                Gp = [row[:] for row in G]
                for j in range(o):
                    for i in range(n):
                        Gp[i][e + j] = G[i][e + perm[j]]
                G = Gp
            eqs = _transport_equations(d1, d2, G, sympy)
            if eqs is None:
                continue
            try:
                sols = sympy.solve(eqs, list(symbols.values()), dict=True)
            except (NotImplementedError, ValueError):
                continue
            for sol in sols:
                for fill in itertools.product((1, 2, -1), repeat=len(symbols)):
                    Gn = _instantiate(G, sol, dict(zip(symbols.values(), fill)), sympy)
                    if Gn is None:
                        break
                    try:
                        g = GradedAutomorphism.from_blocks(
                            [r[:e] for r in Gn[:e]], [r[e:] for r in Gn[e:]]
                        )
                    except SingularAutomorphism:
                        continue
                    if verify(g, d1, d2):
                        return g, spent
    return None, spent


def _transport_equations(d1, d2, G, sympy):
    n = d1.space.dim
    if d1.arities() | d2.arities() != {2} and not (d1.is_zero() or d2.is_zero()):
        return None
    eqs = []
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            # lhs = d1(g v_x, g v_y), rhs = g d2(v_x, v_y)
            for k in range(1, n + 1):
                lhs = 0
                for a in range(1, n + 1):
                    if G[a - 1][x - 1] == 0:
                        continue
                    for b in range(1, n + 1):
                        if G[b - 1][y - 1] == 0:
                            continue
                        c = d1.coefficient(k, (a, b))
                        if c:
                            lhs += _sym(c, sympy) * G[a - 1][x - 1] * G[b - 1][y - 1]
                rhs = 0
                for i in range(1, n + 1):
                    c = d2.coefficient(i, (x, y))
                    if c and G[k - 1][i - 1] != 0:
                        rhs += G[k - 1][i - 1] * _sym(c, sympy)
                expr = sympy.expand(lhs - rhs)
                if expr != 0:
                    eqs.append(expr)
    return eqs


def _sym(c: Scalar, sympy):
    return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
        c.im.numerator, c.im.denominator
    )


def _from_sym(v, sympy) -> Optional[Scalar]:
    v = sympy.nsimplify(sympy.expand(v)) if not v.is_Rational else v
    re, im = v.as_real_imag()
    if not (re.is_Rational and im.is_Rational):
        return None
    return Scalar(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def _instantiate(G, sol, fill, sympy):
    out = []
    for row in G:
        r = []
        for x in row:
            v = sympy.sympify(x).subs(sol)
            v = v.subs(fill)
            if v.free_symbols:
                return None
            s = _from_sym(v, sympy)
            if s is None:
                return None
            r.append(s)
        out.append(r)
    return out


def find_isomorphism(
    d1: Coderivation,
    d2: Coderivation,
    budget: int = DEFAULT_BUDGET,
    screen: bool = True,
    algebraic: bool = True,
) -> SearchResult:
    """Look for ``g`` with ``transport(g, d1) == d2``.

    Order: fingerprint screen, monomial templates, then algebraic solves.
    """
    if d1.space != d2.space:
        return SearchResult(None, "different spaces", 0)
    if d1 == d2:
        return SearchResult(GradedAutomorphism.identity(d1.space), "identical", 0)
    if screen and is_codifferential(d1) and is_codifferential(d2) and d1.arities() <= {2} and d2.arities() <= {2}:
        from .algebra import fingerprint

        diff = fingerprint(d1).differences(fingerprint(d2))
        if diff:
            return SearchResult(None, "fingerprints differ: " + ", ".join(diff), 0)
    g, spent = _monomial_search(d1, d2, budget)
    if g is not None:
        return SearchResult(g, "monomial template", spent)
    if algebraic and spent < budget:
        g, more = _algebraic_search(d1, d2, budget - spent)
        spent += more
        if g is not None:
            return SearchResult(g, "algebraic solve", spent)
    return SearchResult(None, "none found within budget", spent)
