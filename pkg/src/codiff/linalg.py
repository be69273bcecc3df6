"""Sparse exact linear algebra over the Gaussian rationals.

Matrices are stored as row-sparse dictionaries.  Elimination uses the first
nonzero entry of each incoming row as its pivot; arithmetic is exact so no
magnitude pivoting is needed and results are deterministic.  When every
entry is real the elimination runs on :class:`fractions.Fraction` directly,
which gives the same reduced form as the complex path.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "ExactMatrix",
    "Subspace",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "reduce_mod",
    "span",
]

SparseRow = Dict[int, object]


class ExactMatrix:
    """``rows x cols`` matrix with exact entries, stored row-sparse."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Optional[Dict[int, Dict[int, Scalar]]] = None):
        self.rows = rows
        self.cols = cols
        clean: Dict[int, Dict[int, Scalar]] = {}
        for r, row in (data or {}).items():
            if not 0 <= r < rows:
                raise IndexError(f"row {r} out of range")
            kept = {}
            for c, v in row.items():
                if not 0 <= c < cols:
                    raise IndexError(f"column {c} out of range")
                v = as_scalar(v)
                if v:
                    kept[c] = v
            if kept:
                clean[r] = kept
        self._data = clean

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "ExactMatrix":
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        data = {r: {c: v for c, v in enumerate(row) if v} for r, row in enumerate(rows)}
        return cls(len(rows), ncols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Dict[int, Scalar]], rows: int) -> "ExactMatrix":
        data: Dict[int, Dict[int, Scalar]] = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                data.setdefault(r, {})[c] = v
        return cls(rows, len(columns), data)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, rc: Tuple[int, int]) -> Scalar:
        r, c = rc
        return self._data.get(r, {}).get(c, ZERO)

    def row(self, r: int) -> Dict[int, Scalar]:
        return dict(self._data.get(r, {}))

    def sparse_rows(self) -> Dict[int, Dict[int, Scalar]]:
        return {r: dict(row) for r, row in self._data.items()}

    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def is_zero(self) -> bool:
        return not self._data

    def to_lists(self) -> List[List[Scalar]]:
        return [[self[r, c] for c in range(self.cols)] for r in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        data: Dict[int, Dict[int, Scalar]] = {}
        for r, row in self._data.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return ExactMatrix(self.cols, self.rows, data)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out: Dict[int, Dict[int, Scalar]] = {}
        for r, row in self._data.items():
            acc: Dict[int, Scalar] = {}
            for k, a in row.items():
                orow = other._data.get(k)
                if not orow:
                    continue
                for c, b in orow.items():
                    acc[c] = acc.get(c, ZERO) + a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        return ExactMatrix(self.rows, other.cols, out)

    def apply(self, x: Sequence) -> List[Scalar]:
        if len(x) != self.cols:
            raise ValueError("dimension mismatch")
        out = [ZERO] * self.rows
        for r, row in self._data.items():
            s = ZERO
            for c, v in row.items():
                if x[c]:
                    s = s + v * as_scalar(x[c])
            out[r] = s
        return out

    def is_real(self) -> bool:
        return all(v.is_real() for row in self._data.values() for v in row.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


# core elimination -------------------------------------------------------------


def _to_field(rows: Iterable[Dict[int, Scalar]], real: bool) -> List[SparseRow]:
    if real:
        return [{c: v.re for c, v in row.items() if v} for row in rows]
    return [{c: v for c, v in row.items() if v} for row in rows]


def _from_field(row: SparseRow, real: bool) -> Dict[int, Scalar]:
    if real:
        return {c: Scalar._make(v, Fraction(0)) for c, v in row.items()}
    return dict(row)


def _reduce_row(row: SparseRow, pivots: Dict[int, SparseRow]) -> SparseRow:
    """Eliminate every pivot column from ``row`` (pivot rows have leading 1)."""
    heap = [c for c in row if c in pivots]
    heapq.heapify(heap)
    seen = set()
    while heap:
        c = heapq.heappop(heap)
        if c in seen:
            continue
        seen.add(c)
        a = row.get(c)
        if not a:
            continue
        for k, v in pivots[c].items():
            nv = row.get(k)
            nv = -a * v if nv is None else nv - a * v
            if nv:
                row[k] = nv
                if k in pivots and k not in seen:
                    heapq.heappush(heap, k)
            else:
                row.pop(k, None)
    return row


def _echelon(rows: Iterable[SparseRow]) -> Dict[int, SparseRow]:
    """Insert rows one at a time; returns pivot column -> normalized row."""
    pivots: Dict[int, SparseRow] = {}
    for row in rows:
        row = _reduce_row(dict(row), pivots)
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        if inv != 1:
            row = {c: v * inv for c, v in row.items()}
        pivots[p] = row
    return pivots


def _back_substitute(pivots: Dict[int, SparseRow]) -> Dict[int, SparseRow]:
    order = sorted(pivots, reverse=True)
    done: Dict[int, SparseRow] = {}
    for p in order:
        row = pivots[p]
        if any(c in done for c in row if c != p):
            lead = row[p]
            rest = {c: v for c, v in row.items() if c != p}
            rest = _reduce_row(rest, done)
            rest[p] = lead
            row = rest
        done[p] = row
    return done


def _rref_rows(rows: List[Dict[int, Scalar]]) -> Tuple[Dict[int, Dict[int, Scalar]], List[int]]:
    real = all(v.is_real() for row in rows for v in row.values())
    pivots = _back_substitute(_echelon(_to_field(rows, real)))
    cols = sorted(pivots)
    return {p: _from_field(pivots[p], real) for p in cols}, cols


def rref(M: ExactMatrix) -> Tuple[ExactMatrix, int, List[int]]:
    """Reduced row-echelon form, rank and pivot columns of ``M``."""
    rows = [M._data.get(r, {}) for r in range(M.rows)]
    reduced, cols = _rref_rows(rows)
    data = {i: reduced[p] for i, p in enumerate(cols)}
    return ExactMatrix(M.rows, M.cols, data), len(cols), cols


def rank(M: ExactMatrix) -> int:
    rows = list(M._data.values())
    if not rows:
        return 0
    real = all(v.is_real() for row in rows for v in row.values())
    return len(_echelon(_to_field(rows, real)))


class Subspace:
    """Subspace of ``K^ambient`` given by an RREF basis (pivots increasing)."""

    __slots__ = ("ambient", "_rows", "pivots")

    def __init__(self, ambient: int, rows: Dict[int, Dict[int, Scalar]]):
        self.ambient = ambient
        self._rows = rows
        self.pivots = sorted(rows)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def basis(self) -> List[List[Scalar]]:
        return [_dense(self._rows[p], self.ambient) for p in self.pivots]

    def sparse_basis(self) -> List[Dict[int, Scalar]]:
        return [dict(self._rows[p]) for p in self.pivots]

    def reduce(self, x) -> List[Scalar]:
        return reduce_mod(self, x)

    def contains(self, x) -> bool:
        return not any(reduce_mod(self, x))

    def coordinates(self, x) -> Optional[List[Scalar]]:
        """Coefficients of ``x`` on the RREF basis, or None if ``x`` is outside."""
        xs = _sparse(x, self.ambient)
        coords = [xs.get(p, ZERO) for p in self.pivots]
        residue = dict(xs)
        for a, p in zip(coords, self.pivots):
            if a:
                for c, v in self._rows[p].items():
                    nv = residue.get(c, ZERO) - a * v
                    if nv:
                        residue[c] = nv
                    else:
                        residue.pop(c, None)
        return None if residue else coords

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self._rows == other._rows

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def _dense(row: Dict[int, Scalar], n: int) -> List[Scalar]:
    out = [ZERO] * n
    for c, v in row.items():
        out[c] = v
    return out


def _sparse(x, n: int) -> Dict[int, Scalar]:
    if isinstance(x, dict):
        if any(not 0 <= c < n for c in x):
            raise ValueError("vector index outside ambient dimension")
        return {c: as_scalar(v) for c, v in x.items() if v}
    if len(x) != n:
        raise ValueError(f"vector of length {len(x)} in ambient dimension {n}")
    return {c: as_scalar(v) for c, v in enumerate(x) if v}


def span(vectors: Iterable, ambient: int) -> Subspace:
    rows = [_sparse(v, ambient) for v in vectors]
    reduced, _ = _rref_rows(rows)
    return Subspace(ambient, reduced)


def nullspace(M: ExactMatrix) -> Subspace:
    """Basis of ``{x : M x = 0}``; ``dim = cols - rank``."""
    R, r, pivots = rref(M)
    pivot_set = set(pivots)
    free = [c for c in range(M.cols) if c not in pivot_set]
    by_col: Dict[int, List[Tuple[int, Scalar]]] = {}
    for i, p in enumerate(pivots):
        for c, v in R._data.get(i, {}).items():
            if c != p:
                by_col.setdefault(c, []).append((p, v))
    vecs = []
    for f in free:
        vec = {f: ONE}
        for p, v in by_col.get(f, ()):
            vec[p] = -v
        vecs.append(vec)
    # vectors are already independent; RREF them for a canonical basis
    reduced, _ = _rref_rows(vecs)
    return Subspace(M.cols, reduced)


def solve(M: ExactMatrix, b: Sequence) -> Optional[List[Scalar]]:
    """Some ``x`` with ``M x = b``, or ``None`` when the system is inconsistent."""
    if len(b) != M.rows:
        raise ValueError("right-hand side has wrong length")
    bsp = _sparse(b, M.rows)
    rows = []
    for r in range(M.rows):
        row = dict(M._data.get(r, {}))
        if r in bsp:
            row[M.cols] = bsp[r]
        rows.append(row)
    reduced, pivots = _rref_rows(rows)
    if M.cols in reduced:
        return None
    x = [ZERO] * M.cols
    for p in pivots:
        x[p] = reduced[p].get(M.cols, ZERO)
    return x


def reduce_mod(sub: Subspace, x) -> List[Scalar]:
    """Canonical representative of ``x + span(sub)``: pivot coordinates of ``sub`` cleared."""
    xs = _sparse(x, sub.ambient)
    for p in sub.pivots:
        a = xs.get(p)
        if a:
            for c, v in sub._rows[p].items():
                nv = xs.get(c, ZERO) - a * v
                if nv:
                    xs[c] = nv
                else:
                    xs.pop(c, None)
    return _dense(xs, sub.ambient)


def reduce_sparse(sub: Subspace, xs: Dict[int, Scalar]) -> Dict[int, Scalar]:
    """Sparse variant of :func:`reduce_mod`; does not modify its input."""
    xs = dict(xs)
    for p in sub.pivots:
        a = xs.get(p)
        if a:
            for c, v in sub._rows[p].items():
                nv = xs.get(c, ZERO) - a * v
                if nv:
                    xs[c] = nv
                else:
                    xs.pop(c, None)
    return xs
