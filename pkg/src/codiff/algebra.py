"""Multiplications on ``A = Pi W`` and their invariants.

An arity-2 odd coderivation ``d`` on ``W`` corresponds to a multiplication on
the parity-reversed space ``A`` (same basis labels, flipped parities) by

    m(a, b) = (-1)^{|a|_A} d(a, b).

With this sign ``m`` is associative exactly when ``[d, d] = 0``; the other
natural placement, ``(-1)^{|b|_A}``, does not have that property.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .graded import Coderivation, GradedSpace, Parity, SPACE_1_2
from .linalg import ExactMatrix, nullspace, solve, span
from .scalar import ONE, ZERO, Scalar

__all__ = [
    "Multiplication",
    "GradedSubspace",
    "Fingerprint",
    "to_multiplication",
    "from_multiplication",
    "center",
    "unit",
    "is_commutative",
    "is_commutative_ungraded",
    "is_nilpotent",
    "left_annihilator",
    "right_annihilator",
    "opposite",
    "fingerprint",
]

Vector = Dict[int, Scalar]


def _down(v: Vector) -> Vector:
    return {i - 1: c for i, c in v.items()}


def _up(v: Vector) -> Vector:
    return {i + 1: c for i, c in v.items()}


def _a_parity(space: GradedSpace, i: int) -> int:
    return 1 - int(space.parity(i))


@dataclass(frozen=True)
class Multiplication:
    """Structure constants ``m(v_a, v_b) = sum_k c[(a, b)][k] v_k`` on ``A``."""

    space: GradedSpace
    table: Tuple[Tuple[Tuple[int, int], Tuple[Tuple[int, Scalar], ...]], ...]

    @classmethod
    def from_dict(cls, space: GradedSpace, table: Dict[Tuple[int, int], Vector]) -> "Multiplication":
        rows = tuple(
            sorted((ab, tuple(sorted((k, c) for k, c in v.items() if c))) for ab, v in table.items() if any(v.values()))
        )
        return cls(space, rows)

    @property
    def dim(self) -> int:
        return self.space.dim

    def parity(self, i: int) -> int:
        """Parity of ``v_i`` in ``A``."""
        return _a_parity(self.space, i)

    def constants(self) -> Dict[Tuple[int, int], Vector]:
        return {ab: dict(v) for ab, v in self.table}

    def basis_product(self, a: int, b: int) -> Vector:
        return self._lookup.get((a, b), {})

    @property
    def _lookup(self):
        cache = self.__dict__.get("_cache")
        if cache is None:
            cache = self.constants()
            object.__setattr__(self, "_cache", cache)
        return cache

    def product(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for k, c in self.basis_product(a, b).items():
                    out[k] = out.get(k, ZERO) + ca * cb * c
        return {k: v for k, v in out.items() if v}

    def is_associative(self) -> bool:
        n = self.dim
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                ab = self.basis_product(a, b)
                for c in range(1, n + 1):
                    if self.product(ab, {c: ONE}) != self.product({a: ONE}, self.basis_product(b, c)):
                        return False
        return True


def to_multiplication(d: Coderivation) -> Multiplication:
    table: Dict[Tuple[int, int], Vector] = {}
    for (k, I), c in d.items():
        if len(I) != 2:
            raise ValueError("only the arity-2 part encodes a multiplication")
        a, b = I
        sign = -1 if _a_parity(d.space, a) else 1
        table.setdefault((a, b), {})[k] = c * sign
    return Multiplication.from_dict(d.space, table)


def from_multiplication(m: Multiplication) -> Coderivation:
    terms = []
    for (a, b), v in m.table:
        sign = -1 if m.parity(a) else 1
        terms.extend(((k, (a, b)), c * sign) for k, c in v)
    return Coderivation(m.space, terms, Parity.ODD)


@dataclass(frozen=True)
class GradedSubspace:
    """Subspace of ``A`` split by parity in ``A``; vectors are ``{index: coeff}``."""

    even: Tuple[Tuple[Tuple[int, Scalar], ...], ...]
    odd: Tuple[Tuple[Tuple[int, Scalar], ...], ...]

    @property
    def dims(self) -> Tuple[int, int]:
        """``(even, odd)`` in the grading of ``A``."""
        return (len(self.even), len(self.odd))

    @property
    def w_dims(self) -> Tuple[int, int]:
        """``(even, odd)`` after reversing parity back to ``W``, the grading of ``h^0``."""
        return (len(self.odd), len(self.even))

    def vectors(self) -> List[Vector]:
        return [dict(v) for v in self.even + self.odd]

    def same_span(self, vectors, ambient: int) -> bool:
        mine = span([_down(dict(v)) for v in self.even + self.odd], ambient)
        theirs = span([_down(v) for v in vectors], ambient)
        return mine.dim == theirs.dim and all(mine.contains(v) for v in theirs.sparse_basis())


def _graded_kernel(m: Multiplication, equations) -> GradedSubspace:
    """Solve, per parity block, the linear conditions ``equations(p, i) -> list of vectors``."""
    blocks = []
    for p in (0, 1):
        idx = [i for i in range(1, m.dim + 1) if m.parity(i) == p]
        if not idx:
            blocks.append(())
            continue
        cols = [equations(p, i) for i in idx]
        rows = max((len(c) for c in cols), default=0)
        M = ExactMatrix.from_rows(
            [[cols[j][r] for j in range(len(idx))] for r in range(rows)], len(idx)
        )
        ns = nullspace(M)
        blocks.append(
            tuple(tuple(sorted((idx[j], c) for j, c in v.items())) for v in ns.sparse_basis())
        )
    return GradedSubspace(blocks[0], blocks[1])


def _flatten(m: Multiplication, vecs: List[Vector]) -> List[Scalar]:
    return [v.get(k, ZERO) for v in vecs for k in range(1, m.dim + 1)]


def center(m: Multiplication) -> GradedSubspace:
    """Graded center: ``m(a, b) = (-1)^{|a||b|} m(b, a)`` for all ``b``."""
    n = m.dim

    def eq(p, i):
        vecs = []
        for b in range(1, n + 1):
            s = -1 if p and m.parity(b) else 1
            left = m.basis_product(i, b)
            right = m.basis_product(b, i)
            vecs.append({k: left.get(k, ZERO) - s * right.get(k, ZERO) for k in range(1, n + 1)})
        return _flatten(m, vecs)

    return _graded_kernel(m, eq)


def left_annihilator(m: Multiplication) -> GradedSubspace:
    """``{a : m(a, b) = 0 for all b}``."""
    n = m.dim
    return _graded_kernel(m, lambda p, i: _flatten(m, [m.basis_product(i, b) for b in range(1, n + 1)]))


def right_annihilator(m: Multiplication) -> GradedSubspace:
    """``{a : m(b, a) = 0 for all b}``."""
    n = m.dim
    return _graded_kernel(m, lambda p, i: _flatten(m, [m.basis_product(b, i) for b in range(1, n + 1)]))


def unit(m: Multiplication) -> Optional[Vector]:
    """The two-sided unit, found by solving ``m(e, b) = b = m(b, e)``."""
    n = m.dim
    if n == 0:
        return {}
    rows, rhs = [], []
    for b in range(1, n + 1):
        for k in range(1, n + 1):
            target = ONE if k == b else ZERO
            rows.append([m.basis_product(i, b).get(k, ZERO) for i in range(1, n + 1)])
            rhs.append(target)
            rows.append([m.basis_product(b, i).get(k, ZERO) for i in range(1, n + 1)])
            rhs.append(target)
    x = solve(ExactMatrix.from_rows(rows, n), rhs)
    if x is None:
        return None
    return {i + 1: c for i, c in enumerate(x) if c}


def is_commutative(m: Multiplication) -> bool:
    """Graded commutativity ``m(a, b) = (-1)^{|a||b|} m(b, a)``."""
    n = m.dim
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            s = -1 if m.parity(a) and m.parity(b) else 1
            ba = {k: c * s for k, c in m.basis_product(b, a).items()}
            if m.basis_product(a, b) != ba:
                return False
    return True


def is_commutative_ungraded(m: Multiplication) -> bool:
    n = m.dim
    return all(
        m.basis_product(a, b) == m.basis_product(b, a) for a in range(1, n + 1) for b in range(a, n + 1)
    )


def is_nilpotent(m: Multiplication) -> bool:
    n = m.dim
    current = span([{i: ONE} for i in range(n)], n)
    for _ in range(n + 1):
        if current.dim == 0:
            return True
        products = [
            _down(m.product(_up(x), {b: ONE})) for x in current.sparse_basis() for b in range(1, n + 1)
        ]
        nxt = span(products, n)
        if nxt.dim == current.dim:
            return False
        current = nxt
    return current.dim == 0


def opposite(d: Coderivation) -> Coderivation:
    """Codifferential of ``m_op(a, b) = (-1)^{|a||b|} m(b, a)``."""
    m = to_multiplication(d)
    table: Dict[Tuple[int, int], Vector] = {}
    for (b, a), v in m.table:
        s = -1 if m.parity(a) and m.parity(b) else 1
        table[(a, b)] = {k: c * s for k, c in v}
    return from_multiplication(Multiplication.from_dict(d.space, table))


@dataclass(frozen=True)
class Fingerprint:
    cohomology: Tuple[Tuple[int, int], ...]
    center: Tuple[int, int]
    unital: bool
    commutative: bool
    nilpotent: bool
    left_annihilator: Tuple[int, int]
    right_annihilator: Tuple[int, int]

    FIELDS = (
        "cohomology",
        "center",
        "unital",
        "commutative",
        "nilpotent",
        "left_annihilator",
        "right_annihilator",
    )

    def differences(self, other: "Fingerprint") -> List[str]:
        return [f for f in self.FIELDS if getattr(self, f) != getattr(other, f)]

    def to_json(self) -> dict:
        return {
            "cohomology": [list(x) for x in self.cohomology],
            "center": list(self.center),
            "unital": self.unital,
            "commutative": self.commutative,
            "nilpotent": self.nilpotent,
            "left_annihilator": list(self.left_annihilator),
            "right_annihilator": list(self.right_annihilator),
        }


@lru_cache(maxsize=1024)
def fingerprint(d: Coderivation, max_degree: int = 3) -> Fingerprint:
    """Invariants of ``d``; dims are in the grading of ``A`` except cohomology (``W``)."""
    from .hochschild import cohomology_row

    m = to_multiplication(d)
    return Fingerprint(
        tuple(cohomology_row(d, max_degree)),
        center(m).dims,
        unit(m) is not None,
        is_commutative(m),
        is_nilpotent(m),
        left_annihilator(m).dims,
        right_annihilator(m).dims,
    )
