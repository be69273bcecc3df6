"""Multivariate polynomials in deformation parameters ``t1 .. tr``."""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .scalar import ONE, ZERO, Scalar, as_scalar

Monomial = Tuple[int, ...]

__all__ = ["Monomial", "ParamPolynomial", "monomials_of_degree", "parse_polynomial", "evaluate_expression"]


def monomials_of_degree(nvars: int, degree: int) -> List[Monomial]:
    """All exponent vectors of total ``degree``, in descending lex order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def _order_key(m: Monomial):
    return (-sum(m), tuple(-e for e in m))


class ParamPolynomial:
    """Sparse polynomial; monomials listed by degree, then lex with ``t1 > t2 > ...``."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] = ()):
        self.nvars = nvars
        clean: Dict[Monomial, Scalar] = {}
        for m, c in dict(terms).items():
            if len(m) != nvars:
                raise ValueError("monomial length does not match the number of variables")
            c = as_scalar(c)
            if c:
                clean[tuple(m)] = c
        self._terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "ParamPolynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "ParamPolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "ParamPolynomial":
        """The variable ``t_{i+1}`` (0-based ``i``)."""
        m = [0] * nvars
        m[i] = 1
        return cls(nvars, {tuple(m): ONE})

    def items(self) -> List[Tuple[Monomial, Scalar]]:
        return sorted(self._terms.items(), key=lambda kv: _order_key(kv[0]))

    def coefficient(self, m: Monomial) -> Scalar:
        return self._terms.get(tuple(m), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(m) for m in self._terms), default=-1)

    def homogeneous_part(self, d: int) -> "ParamPolynomial":
        return ParamPolynomial(self.nvars, {m: c for m, c in self._terms.items() if sum(m) == d})

    def truncate(self, d: int) -> "ParamPolynomial":
        return ParamPolynomial(self.nvars, {m: c for m, c in self._terms.items() if sum(m) <= d})

    def __add__(self, other: "ParamPolynomial") -> "ParamPolynomial":
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, ZERO) + c
        return ParamPolynomial(self.nvars, out)

    def __neg__(self) -> "ParamPolynomial":
        return ParamPolynomial(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "ParamPolynomial") -> "ParamPolynomial":
        return self + (-other)

    def scale(self, c) -> "ParamPolynomial":
        c = as_scalar(c)
        return ParamPolynomial(self.nvars, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ParamPolynomial):
            return self.scale(other)
        out: Dict[Monomial, Scalar] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, ZERO) + c1 * c2
        return ParamPolynomial(self.nvars, out)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        return isinstance(other, ParamPolynomial) and self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def __call__(self, values: Sequence) -> Scalar:
        return self.evaluate(values)

    def evaluate(self, values: Sequence) -> Scalar:
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(values)}")
        vals = [as_scalar(v) for v in values]
        total = ZERO
        for m, c in self._terms.items():
            term = c
            for v, e in zip(vals, m):
                for _ in range(e):
                    term = term * v
            total = total + term
        return total

    def substitute(self, images: Sequence["ParamPolynomial"]) -> "ParamPolynomial":
        """Replace ``t_i`` by ``images[i]`` (all in a common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        n = images[0].nvars if images else 0
        total = ParamPolynomial.zero(n)
        for m, c in self._terms.items():
            term = ParamPolynomial.constant(n, c)
            for img, e in zip(images, m):
                for _ in range(e):
                    term = term * img
            total = total + term
        return total

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            mono = "*".join(f"t{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if " " in cs or "i" in cs else f"{cs}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    __repr__ = __str__

    def to_sympy(self, symbols):
        import sympy

        expr = sympy.Integer(0)
        for m, c in self._terms.items():
            coeff = sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
                c.im.numerator, c.im.denominator
            )
            term = coeff
            for s, e in zip(symbols, m):
                term = term * s**e
            expr += term
        return expr


# tiny exact expression language for branch plans ---------------------------

_ALLOWED = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow,
            ast.USub, ast.UAdd, ast.Name, ast.Load, ast.Constant)


def evaluate_expression(text: str, env: Mapping[str, Fraction]) -> Fraction:
    """Evaluate ``text`` (``+ - * / **``, integer literals, names) exactly."""
    tree = ast.parse(text, mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise ValueError(f"unsupported syntax in {text!r}")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if not isinstance(node.value, int):
                raise ValueError(f"only integer literals allowed in {text!r}")
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ValueError(f"unknown name {node.id!r} in {text!r}")
            return Fraction(env[node.id])
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        a, b = ev(node.left), ev(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
        if b.denominator != 1 or b < 0:
            raise ValueError("exponents must be non-negative integers")
        return a ** int(b)

    return ev(tree)


def parse_polynomial(text: str, nvars: int) -> ParamPolynomial:
    """Parse a polynomial in ``t1 .. t{nvars}`` written with ``+ - * **``."""
    tree = ast.parse(text, mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise ValueError(f"unsupported syntax in {text!r}")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            return ParamPolynomial.constant(nvars, node.value)
        if isinstance(node, ast.Name):
            name = node.id
            if not (name.startswith("t") and name[1:].isdigit() and 1 <= int(name[1:]) <= nvars):
                raise ValueError(f"unknown variable {name!r}")
            return ParamPolynomial.var(nvars, int(name[1:]) - 1)
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        a, b = ev(node.left), ev(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Pow):
            k = b.coefficient((0,) * nvars)
            out = ParamPolynomial.constant(nvars, 1)
            for _ in range(int(k.re)):
                out = out * a
            return out
        raise ValueError(f"unsupported operator in {text!r}")

    return ev(tree)
