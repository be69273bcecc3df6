"""Hochschild cohomology of a codifferential through ``D(f) = [d, f]``.

Cochains of degree ``n`` are ``C^n = Hom(W^n, W)`` with basis ``phi_i^I``
ordered target-major, then ``I`` lexicographically.  ``C^0`` is ``W`` itself
(constant coderivations), so ``h^0`` is the graded dimension of the center.
``D`` raises parity by one, so it is block diagonal once cochains are split
by parity, and all subspaces below are computed one block at a time.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .graded import (
    Coderivation,
    GradedSpace,
    InvalidCodifferential,
    MultiIndex,
    Parity,
    Term,
    bracket,
    is_codifferential,
    parity_of,
)
from .linalg import ExactMatrix, Subspace, nullspace, reduce_sparse, solve, span
from .scalar import ONE, Scalar

__all__ = [
    "CochainBasis",
    "CohomologyReport",
    "NotACocycle",
    "cochain_basis",
    "coboundary_matrix",
    "cohomology",
    "cohomology_row",
    "reduce",
    "class_coordinates",
    "solve_coboundary",
    "complex_of",
]


class NotACocycle(ValueError):
    """``reduce`` was given a cochain with ``D f != 0``."""


@dataclass(frozen=True)
class CochainBasis:
    degree: int
    elements: Tuple[Term, ...]
    parities: Tuple[Parity, ...]
    index: Dict[Term, int] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def block(self, parity: Parity) -> List[int]:
        return [k for k, p in enumerate(self.parities) if p == parity]

    def to_vector(self, f: Coderivation) -> Dict[int, Scalar]:
        out = {}
        for key, c in f.items():
            if len(key[1]) != self.degree:
                raise ValueError(f"term {key} is not of degree {self.degree}")
            out[self.index[key]] = c
        return out

    def to_coderivation(self, space: GradedSpace, vec, parity: Optional[Parity] = None) -> Coderivation:
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        return Coderivation(space, [(self.elements[k], c) for k, c in items if c], parity)


@lru_cache(maxsize=None)
def cochain_basis(space: GradedSpace, n: int) -> CochainBasis:
    """Basis of ``C^n``: ``dim W * (dim W)^n`` elements, target-major then lexicographic."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    elems = tuple((i, I) for i in range(1, space.dim + 1) for I in space.words(n))
    pars = tuple(parity_of(space, i, I) for i, I in elems)
    return CochainBasis(n, elems, pars, {e: k for k, e in enumerate(elems)})


def _check(d: Coderivation) -> None:
    if not d.is_zero() and d.arities() != {2}:
        raise InvalidCodifferential("expected an arity-2 codifferential")
    if not is_codifferential(d):
        raise InvalidCodifferential("[d, d] != 0")


def _columns(d: Coderivation, n: int) -> List[Dict[int, Scalar]]:
    src = cochain_basis(d.space, n)
    tgt = cochain_basis(d.space, n + 1)
    cols = []
    for key, p in zip(src.elements, src.parities):
        image = bracket(d, Coderivation._trusted(d.space, {key: ONE}, p))
        cols.append({tgt.index[k]: c for k, c in image.items()})
    return cols


def coboundary_matrix(d: Coderivation, n: int) -> ExactMatrix:
    """Matrix of ``D: C^n -> C^{n+1}`` in the documented bases."""
    _check(d)
    return ExactMatrix.from_columns(_columns(d, n), len(cochain_basis(d.space, n + 1)))


@dataclass
class CohomologyReport:
    degree: int
    even_dim: int
    odd_dim: int
    even_representatives: List[Coderivation]
    odd_representatives: List[Coderivation]

    @property
    def total(self) -> int:
        return self.even_dim + self.odd_dim

    @property
    def representatives(self) -> List[Coderivation]:
        return self.even_representatives + self.odd_representatives

    def split(self) -> str:
        return f"{self.even_dim}|{self.odd_dim}"


class _Complex:
    """Lazily built cocycle/coboundary data for one codifferential."""

    def __init__(self, d: Coderivation):
        self.d = d
        self.space = d.space
        self._lock = threading.Lock()
        self._blocks: Dict[Tuple[int, Parity], Tuple[List[int], List[Dict[int, Scalar]]]] = {}
        self._Z: Dict[Tuple[int, Parity], Subspace] = {}
        self._B: Dict[Tuple[int, Parity], Subspace] = {}
        self._H: Dict[Tuple[int, Parity], Subspace] = {}

    def block(self, n: int, p: Parity):
        """Columns of ``D`` restricted to parity-``p`` cochains of degree ``n``."""
        key = (n, p)
        if key not in self._blocks:
            basis = cochain_basis(self.space, n)
            idx = basis.block(p)
            tgt = cochain_basis(self.space, n + 1)
            cols = []
            for k in idx:
                image = bracket(self.d, Coderivation._trusted(self.space, {basis.elements[k]: ONE}, p))
                cols.append({tgt.index[t]: c for t, c in image.items()})
            self._blocks[key] = (idx, cols)
        return self._blocks[key]

    def Z(self, n: int, p: Parity) -> Subspace:
        key = (n, p)
        with self._lock:
            if key not in self._Z:
                idx, cols = self.block(n, p)
                M = ExactMatrix.from_columns(cols, len(cochain_basis(self.space, n + 1)))
                ns = nullspace(M)
                amb = len(cochain_basis(self.space, n))
                self._Z[key] = span(
                    [{idx[j]: v for j, v in vec.items()} for vec in ns.sparse_basis()], amb
                )
            return self._Z[key]

    def B(self, n: int, p: Parity) -> Subspace:
        """Coboundaries of parity ``p`` in degree ``n`` (images of parity ``p+1``)."""
        key = (n, p)
        with self._lock:
            if key not in self._B:
                amb = len(cochain_basis(self.space, n))
                if n == 0:
                    self._B[key] = span([], amb)
                else:
                    _, cols = self.block(n - 1, p + 1)
                    self._B[key] = span(cols, amb)
            return self._B[key]

    def H(self, n: int, p: Parity) -> Subspace:
        """Canonical representatives: Z reduced modulo B, then put in RREF."""
        key = (n, p)
        if key not in self._H:
            Z, B = self.Z(n, p), self.B(n, p)
            reduced = [reduce_sparse(B, z) for z in Z.sparse_basis()]
            self._H[key] = span(reduced, Z.ambient)
        return self._H[key]


@lru_cache(maxsize=256)
def complex_of(d: Coderivation) -> _Complex:
    _check(d)
    return _Complex(d)


def cohomology(d: Coderivation, n: int) -> CohomologyReport:
    """Graded dimension and canonical representatives of ``H^n(d)``."""
    cx = complex_of(d)
    basis = cochain_basis(d.space, n)
    reps = {}
    for p in (Parity.EVEN, Parity.ODD):
        H = cx.H(n, p)
        reps[p] = [basis.to_coderivation(d.space, row, p) for row in H.sparse_basis()]
    return CohomologyReport(n, len(reps[Parity.EVEN]), len(reps[Parity.ODD]), reps[Parity.EVEN], reps[Parity.ODD])


def cohomology_row(d: Coderivation, max_degree: int = 4) -> List[Tuple[int, int]]:
    """``[(even, odd)]`` dimensions of ``H^0 .. H^max_degree``."""
    cx = complex_of(d)
    out = []
    for n in range(max_degree + 1):
        dims = []
        for p in (Parity.EVEN, Parity.ODD):
            dims.append(cx.Z(n, p).dim - cx.B(n, p).dim)
        out.append(tuple(dims))
    return out


def _pure_degree(f: Coderivation) -> int:
    if f.is_zero():
        raise ValueError("degree of the zero cochain is ambiguous; pass it explicitly")
    return f.arity()


def reduce(d: Coderivation, f: Coderivation, degree: Optional[int] = None) -> Coderivation:
    """Canonical representative of the class of the cocycle ``f`` modulo ``B^n``."""
    cx = complex_of(d)
    n = _pure_degree(f) if degree is None else degree
    if f.is_zero():
        return f
    if not bracket(d, f).is_zero():
        raise NotACocycle("D f != 0")
    basis = cochain_basis(d.space, n)
    vec = reduce_sparse(cx.B(n, f.parity), basis.to_vector(f))
    return basis.to_coderivation(d.space, vec, f.parity)


def class_coordinates(d: Coderivation, f: Coderivation, degree: Optional[int] = None) -> List[Scalar]:
    """Coefficients of the class of ``f`` on the representatives of its parity."""
    cx = complex_of(d)
    n = _pure_degree(f) if degree is None else degree
    H = cx.H(n, f.parity)
    if f.is_zero():
        return [Scalar(0)] * H.dim
    r = reduce(d, f, n)
    basis = cochain_basis(d.space, n)
    coords = H.coordinates(basis.to_vector(r))
    if coords is None:  # pragma: no cover - reduce() output always lies in span(H)
        raise AssertionError("reduced cocycle outside the representative span")
    return coords


def solve_coboundary(d: Coderivation, target: Coderivation, degree: int) -> Optional[Coderivation]:
    """Some ``g`` of degree ``degree - 1`` with ``[d, g] = target``, or None."""
    cx = complex_of(d)
    p = target.parity + 1
    idx, cols = cx.block(degree - 1, p)
    tgt_basis = cochain_basis(d.space, degree)
    M = ExactMatrix.from_columns(cols, len(tgt_basis))
    rhs = [Scalar(0)] * len(tgt_basis)
    for k, c in tgt_basis.to_vector(target).items():
        rhs[k] = c
    x = solve(M, rhs)
    if x is None:
        return None
    src = cochain_basis(d.space, degree - 1)
    return Coderivation(d.space, [(src.elements[idx[j]], c) for j, c in enumerate(x) if c], p)
