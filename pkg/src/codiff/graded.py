"""Coderivations of the tensor coalgebra of a finite Z2-graded space.

A cochain ``phi_i^I`` in ``Hom(W^n, W)`` sends the basis word ``v_I`` to
``v_i`` and every other word of length ``n`` to zero.  Its parity is
``|v_i| + |v_I|``.  Sums of basis cochains with exact coefficients are
stored sparsely as ``{(i, I): c}``.

Composition follows the insertion rule

    phi_i^I o phi_j^J = sum_k (-1)^{(|v_{i_1}| + ... + |v_{i_{k-1}}|) |phi_j^J|}
                        [i_k == j] phi_i^{(I, J, k)}

where ``(I, J, k)`` replaces the k-th letter of ``I`` by ``J``; the graded
bracket is ``[f, g] = f o g - (-1)^{|f||g|} g o f``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from .scalar import ONE, ZERO, Scalar, ScalarLike, as_scalar

__all__ = [
    "Parity",
    "GradedSpace",
    "SPACE_1_2",
    "MultiIndex",
    "Term",
    "Coderivation",
    "phi",
    "parity_of",
    "compose",
    "bracket",
    "coboundary",
    "is_codifferential",
    "evaluate",
    "evaluate_sum",
    "InvalidCodifferential",
    "InhomogeneousError",
    "IndexRangeError",
]

MultiIndex = Tuple[int, ...]
Term = Tuple[int, MultiIndex]


class InvalidCodifferential(ValueError):
    """Raised when an operator needs ``[d, d] = 0`` and it fails."""


class InhomogeneousError(ValueError):
    """Raised when terms of different parities are mixed in one coderivation."""


class IndexRangeError(IndexError):
    """Raised for basis indices outside ``1..dim``."""


class Parity(IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other: int) -> "Parity":  # type: ignore[override]
        return Parity((int(self) + int(other)) % 2)

    __radd__ = __add__

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class GradedSpace:
    """Space with ``even_dim`` even basis vectors listed before ``odd_dim`` odd ones."""

    even_dim: int
    odd_dim: int

    def __post_init__(self) -> None:
        if self.even_dim < 0 or self.odd_dim < 0:
            raise ValueError("dimensions must be non-negative")

    @property
    def dim(self) -> int:
        return self.even_dim + self.odd_dim

    def check(self, i: int) -> None:
        if not (isinstance(i, int) and 1 <= i <= self.dim):
            raise IndexRangeError(f"basis index {i!r} outside 1..{self.dim}")

    def parity(self, i: int) -> Parity:
        self.check(i)
        return Parity.EVEN if i <= self.even_dim else Parity.ODD

    def word_parity(self, word: Iterable[int]) -> Parity:
        p = 0
        for i in word:
            self.check(i)
            p += i > self.even_dim
        return Parity(p % 2)

    def words(self, n: int) -> Iterator[MultiIndex]:
        """All multi-indices of length ``n`` in lexicographic order."""
        return product(range(1, self.dim + 1), repeat=n)

    def to_json(self) -> dict:
        return {"even": self.even_dim, "odd": self.odd_dim}

    def __str__(self) -> str:
        return f"{self.even_dim}|{self.odd_dim}"


SPACE_1_2 = GradedSpace(1, 2)


def parity_of(space: GradedSpace, i: int, I: Iterable[int]) -> Parity:
    """Parity of the basis cochain ``phi_i^I``."""
    return space.parity(i) + space.word_parity(I)


class Coderivation:
    """Finite homogeneous sum of basis cochains with :class:`Scalar` coefficients.

    Instances are immutable; zero coefficients are never stored.  The zero
    coderivation still carries a declared parity so that sums stay typed.
    """

    __slots__ = ("space", "_terms", "parity", "_hash")

    def __init__(
        self,
        space: GradedSpace,
        terms: Union[Mapping[Term, ScalarLike], Iterable[Tuple[Term, ScalarLike]]] = (),
        parity: Optional[Parity] = None,
    ):
        self.space = space
        items = terms.items() if isinstance(terms, Mapping) else terms
        store: Dict[Term, Scalar] = {}
        found: Optional[Parity] = None
        for (i, I), c in items:
            I = tuple(I)
            p = parity_of(space, i, I)
            if found is None:
                found = p
            elif p != found:
                raise InhomogeneousError(f"term phi_{i}^{I} has parity {p}, expected {found}")
            c = as_scalar(c)
            key = (i, I)
            if key in store:
                c = store[key] + c
            if c:
                store[key] = c
            else:
                store.pop(key, None)
        if parity is not None and found is not None and Parity(parity) != found:
            raise InhomogeneousError(f"declared parity {Parity(parity)} but terms are {found}")
        self._terms = store
        self.parity = Parity(parity) if parity is not None else (found if found is not None else Parity.ODD)
        self._hash = None

    @classmethod
    def _trusted(cls, space: GradedSpace, terms: Dict[Term, Scalar], parity: Parity) -> "Coderivation":
        obj = object.__new__(cls)
        obj.space = space
        obj._terms = terms
        obj.parity = parity
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, space: GradedSpace = SPACE_1_2, parity: Parity = Parity.ODD) -> "Coderivation":
        return cls._trusted(space, {}, Parity(parity))

    # access ---------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Term, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, i: int, I: Iterable[int]) -> Scalar:
        return self._terms.get((i, tuple(I)), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def arities(self) -> set:
        return {len(I) for (_, I) in self._terms}

    def arity(self) -> int:
        """The single arity of a nonzero cochain of pure degree."""
        a = self.arities()
        if len(a) != 1:
            raise ValueError(f"coderivation has arities {sorted(a)}, not a pure degree")
        return a.pop()

    def of_arity(self, n: int) -> "Coderivation":
        return Coderivation._trusted(
            self.space, {k: c for k, c in self._terms.items() if len(k[1]) == n}, self.parity
        )

    def support(self) -> list:
        return sorted(self._terms)

    # linear structure -----------------------------------------------------

    def _merge_parity(self, other: "Coderivation") -> Parity:
        if self.space != other.space:
            raise ValueError("coderivations live on different spaces")
        if not self._terms:
            return other.parity
        if not other._terms:
            return self.parity
        if self.parity != other.parity:
            raise InhomogeneousError("cannot add coderivations of different parity")
        return self.parity

    def __add__(self, other: "Coderivation") -> "Coderivation":
        if not isinstance(other, Coderivation):
            return NotImplemented
        parity = self._merge_parity(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k)
            v = c if v is None else v + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Coderivation._trusted(self.space, out, parity)

    def __neg__(self) -> "Coderivation":
        return Coderivation._trusted(self.space, {k: -c for k, c in self._terms.items()}, self.parity)

    def __sub__(self, other: "Coderivation") -> "Coderivation":
        if not isinstance(other, Coderivation):
            return NotImplemented
        return self + (-other)

    def scale(self, c: ScalarLike) -> "Coderivation":
        c = as_scalar(c)
        if not c:
            return Coderivation.zero(self.space, self.parity)
        return Coderivation._trusted(self.space, {k: v * c for k, v in self._terms.items()}, self.parity)

    def __mul__(self, c: ScalarLike) -> "Coderivation":
        if isinstance(c, Coderivation):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    # equality -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coderivation):
            return NotImplemented
        return self.space == other.space and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.space, frozenset(self._terms.items())))
        return self._hash

    # text -----------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, I) in sorted(self._terms, key=lambda k: (len(k[1]), k)):
            c = self._terms[(i, I)]
            sym = "psi" if parity_of(self.space, i, I) else "phi"
            base = f"{sym}_{i}^{''.join(map(str, I)) if self.space.dim < 10 else I}"
            if c == 1:
                parts.append(f"+ {base}")
            elif c == -1:
                parts.append(f"- {base}")
            elif c.is_real():
                sign = "+" if c.re > 0 else "-"
                parts.append(f"{sign} {abs(c.re) if c.re.denominator == 1 else abs(c.re)}*{base}")
            else:
                parts.append(f"+ {c}*{base}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[1:]

    def __repr__(self) -> str:
        return f"Coderivation({self})"

    def to_json(self) -> dict:
        return {
            "space": self.space.to_json(),
            "terms": [
                {"target": i, "sources": list(I), "coeff": c.to_json()}
                for (i, I), c in sorted(self._terms.items(), key=lambda kv: (len(kv[0][1]), kv[0]))
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict) -> "Coderivation":
        return _coderivation_from_json(obj)


def _coderivation_from_json(obj) -> Coderivation:
    from .errors import MalformedInput

    if not isinstance(obj, dict) or "terms" not in obj:
        raise MalformedInput("codifferential JSON needs a 'terms' list")
    sp = obj.get("space", {"even": 1, "odd": 2})
    try:
        space = GradedSpace(int(sp["even"]), int(sp["odd"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad 'space' field: {sp!r}") from exc
    terms = []
    for t in obj["terms"]:
        try:
            target = t["target"]
            sources = tuple(t["sources"])
            coeff = Scalar.from_json(t["coeff"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad term {t!r}: {exc}") from exc
        if not isinstance(target, int) or not all(isinstance(s, int) for s in sources):
            raise MalformedInput(f"indices must be integers in term {t!r}")
        for idx in (target,) + sources:
            space.check(idx)
        terms.append(((target, sources), coeff))
    return Coderivation(space, terms)


def phi(i: int, *I: int, coeff: ScalarLike = 1, space: GradedSpace = SPACE_1_2) -> Coderivation:
    """Basis cochain ``coeff * phi_i^I``; ``phi(1, 1, 3)`` is psi_1^{13}."""
    return Coderivation(space, [((i, tuple(I)), coeff)])


# composition and bracket ------------------------------------------------------


def _compose_terms(f: Coderivation, g: Coderivation, out: Dict[Term, Scalar], sign: int) -> None:
    space = f.space
    even_dim = space.even_dim
    gp = int(g.parity)
    by_target: Dict[int, list] = {}
    for (j, J), c in g._terms.items():
        by_target.setdefault(j, []).append((J, c))
    if not by_target:
        return
    for (i, I), a in f._terms.items():
        prefix = 0
        for k, ik in enumerate(I):
            hits = by_target.get(ik)
            if hits:
                s = -sign if (prefix & gp) else sign
                head, tail = I[:k], I[k + 1:]
                for J, b in hits:
                    key = (i, head + J + tail)
                    v = a * b
                    if s < 0:
                        v = -v
                    prev = out.get(key)
                    if prev is not None:
                        v = prev + v
                    if v:
                        out[key] = v
                    else:
                        del out[key]
            prefix ^= ik > even_dim


def compose(f: Coderivation, g: Coderivation) -> Coderivation:
    """The composite ``f o g`` of coderivations, projected to ``W``."""
    if f.space != g.space:
        raise ValueError("coderivations live on different spaces")
    out: Dict[Term, Scalar] = {}
    _compose_terms(f, g, out, 1)
    return Coderivation._trusted(f.space, out, f.parity + g.parity)


def bracket(f: Coderivation, g: Coderivation) -> Coderivation:
    """Graded commutator ``f o g - (-1)^{|f||g|} g o f``."""
    if f.space != g.space:
        raise ValueError("coderivations live on different spaces")
    out: Dict[Term, Scalar] = {}
    _compose_terms(f, g, out, 1)
    _compose_terms(g, f, out, 1 if (f.parity and g.parity) else -1)
    return Coderivation._trusted(f.space, out, f.parity + g.parity)


def is_codifferential(d: Coderivation) -> bool:
    """True iff ``d`` is odd and ``[d, d] = 0`` exactly."""
    if d.is_zero():
        return True
    return d.parity == Parity.ODD and bracket(d, d).is_zero()


def coboundary(d: Coderivation, f: Coderivation) -> Coderivation:
    """``D(f) = [d, f]``; ``d`` must be a codifferential."""
    if not is_codifferential(d):
        raise InvalidCodifferential("coboundary needs an odd d with [d, d] = 0")
    return bracket(d, f)


# evaluation on words ----------------------------------------------------------

WordSum = Dict[MultiIndex, Scalar]


def evaluate(f: Coderivation, word: Iterable[int]) -> WordSum:
    """Apply the coderivation extension of ``f`` to the basis word ``v_word``.

    ``f(v_1...v_n) = sum_i (-1)^{(|v_1|+...+|v_i|)|f|} v_1..v_i f(v_{i+1}..v_{i+k}) v_{i+k+1}..v_n``
    summed over every arity ``k`` present in ``f``.  Words shorter than an
    arity contribute nothing.
    """
    space = f.space
    word = tuple(word)
    for i in word:
        space.check(i)
    fp = int(f.parity)
    n = len(word)
    out: WordSum = {}
    by_source: Dict[MultiIndex, list] = {}
    for (i, I), c in f._terms.items():
        by_source.setdefault(I, []).append((i, c))
    arities = sorted({len(I) for I in by_source})
    prefix_par = [0] * (n + 1)
    for pos, letter in enumerate(word):
        prefix_par[pos + 1] = prefix_par[pos] ^ (letter > space.even_dim)
    for k in arities:
        for start in range(0, n - k + 1):
            hits = by_source.get(word[start:start + k])
            if not hits:
                continue
            neg = prefix_par[start] & fp
            for i, c in hits:
                key = word[:start] + (i,) + word[start + k:]
                v = -c if neg else c
                prev = out.get(key)
                if prev is not None:
                    v = prev + v
                if v:
                    out[key] = v
                else:
                    del out[key]
    return out


def evaluate_sum(f: Coderivation, words: Mapping[MultiIndex, Scalar]) -> WordSum:
    """Linear extension of :func:`evaluate` to a formal sum of words."""
    out: WordSum = {}
    for w, a in words.items():
        for key, c in evaluate(f, w).items():
            v = out.get(key, ZERO) + a * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out
