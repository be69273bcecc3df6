"""Reference parameter frames and branch plans for the deformation families.

For each catalog index with odd ``H^2``: the directions of the reference
parametrization (one cochain per parameter, compact ``"+i:jk"`` notation),
optional correction hints for higher monomials, the reference relations at
order two, and the loci of the base on which the family is sampled.  The
hints are proposals only; the constructor keeps a hint only if the order it
belongs to remains solvable with it.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .deformations import Branch
from .polynomial import Monomial, parse_polynomial

__all__ = ["PLANS", "Plan", "plan"]


class Plan:
    def __init__(self, index: int, frame: List[str], relations: List[str] = (), hints: Dict[str, str] = None,
                 branches: List[Branch] = (), order: int = 3):
        self.index = index
        self.frame = list(frame)
        self.relations = list(relations)
        self.hints = dict(hints or {})
        self.branches = list(branches)
        self.order = order

    @property
    def nparams(self) -> int:
        return len(self.frame)

    def directions(self):
        from .catalog import parse_expression

        return [parse_expression(x) for x in self.frame]

    def reference_relations(self):
        return [parse_polynomial(r, self.nparams) for r in self.relations]

    def hint_terms(self) -> Dict[Monomial, object]:
        from .catalog import parse_expression

        out = {}
        for mono, expr in self.hints.items():
            p = parse_polynomial(mono, self.nparams)
            ((m, c),) = p.items()
            out[m] = parse_expression(expr).scale(c)
        return out


def B(name, params, point, avoid=(), expect=None):
    return Branch(name, tuple(params.split()), tuple(point), tuple(avoid), expect)


_PLANS = [
    Plan(2, ["+2:22"], branches=[B("t != 0", "a", ["a"], expect=1)]),
    Plan(6, ["+2:11"], branches=[B("t != 0", "a", ["a"], expect=1)]),
    Plan(8, ["-3:11 +2:22"], branches=[B("t != 0", "a", ["a"], expect=1)]),
    Plan(9, ["-1:12 +1:21 +2:22"], branches=[B("t != 0", "a", ["a"], expect=1)]),
    Plan(18, ["+2:22"], branches=[B("t != 0", "a", ["a"])]),
    Plan(19, ["+2:22"], branches=[B("t != 0", "a", ["a"])]),
    Plan(20, ["+3:22"], branches=[B("t != 0", "a", ["a"], expect=7)]),
    Plan(
        21,
        ["+1:21", "+2:22"],
        ["t1*(t2 - t1)"],
        branches=[
            B("t1 = 0", "a", ["0", "a"], expect=3),
            B("t1 = t2", "a", ["a", "a"], expect=5),
        ],
    ),
    Plan(
        22,
        ["+1:12", "+2:22"],
        ["t1*(t2 + t1)"],
        branches=[
            B("t1 = 0", "a", ["0", "a"], expect=4),
            B("t1 = -t2", "a", ["a", "-a"], expect=5),
        ],
    ),
    Plan(
        23,
        ["+3:11", "+2:22"],
        [],
        branches=[
            B("generic", "a b", ["a", "b"], expect=1),
            B("t2 = 0", "a", ["a", "0"], expect=2),
            B("t1 = 0", "a", ["0", "a"], expect=7),
        ],
    ),
    Plan(
        24,
        ["+2:22", "+1:12", "+2:11"],
        ["t2*(t1 + t2)", "t2*t3"],
        hints={"t1*t3": "-3:11", "t2*t3": "-3:11", "t1*t2": "+3:22", "t2**2": "+3:22"},
        branches=[
            B("t2 = 0 generic", "a b", ["a", "0", "b"], expect=1),
            B("t2 = 0, t3 = 0", "a", ["a", "0", "0"], expect=7),
            B("t2 = 0, t1 = 0", "a", ["0", "0", "a"], expect=8),
            B("t3 = 0, t2 = -t1", "a", ["a", "-a", "0"], expect=5),
        ],
    ),
    Plan(
        25,
        ["+2:22", "+1:21", "+1:12", "+2:11"],
        ["t4*(t2 + t3)", "t3*(t1 + t3)", "t4*(t1 + t3)", "t4*(t1 - t2)", "t2*(t2 - t1)"],
        branches=[
            B("t2 = t3 = t4 = 0", "a", ["a", "0", "0", "0"], expect=6),
            B("t3 = t4 = 0, t1 = t2", "a", ["a", "a", "0", "0"], expect=4),
            B("t2 = t4 = 0, t1 = -t3", "a", ["a", "0", "-a", "0"], expect=3),
            B("t1 = t2, t3 = -t2 generic", "a b", ["a", "a", "-a", "b"], expect=1),
            B("t1 = t2, t3 = -t2, t4 = 0", "a", ["a", "a", "-a", "0"], expect=7),
            B("t1 = t2 = t3 = 0", "a", ["0", "0", "0", "a"], expect=9),
        ],
    ),
    Plan(
        26,
        ["+3:33", "-1:13 +1:31 +3:11"],
        [],
        hints={
            "t2**2": "-1:12 +1:21 +2:22 +3:23 +3:32",
            "t1*t2": "+1:12 -1:21 -2:22 -3:23 -3:32",
        },
        branches=[
            B("generic", "a b", ["a", "b"], avoid=["a - b", "a - 2*b"], expect=1),
            B("t1 = t2", "a", ["a", "a"], expect=2),
            B("t1 = 2*t2", "a", ["2*a", "a"], expect=8),
            B("t2 = 0", "a", ["a", "0"], expect=9),
        ],
    ),
    Plan(
        27,
        ["+2:33", "-1:12 +1:21 +2:22", "+2:23 +2:32 +1:31 -1:13", "+3:33"],
        ["t1*t2 - t3**2 + t3*t4"],
        branches=[
            B("t2 != 0, t4 != 0", "b c e", ["(c*c - c*e)/b", "b", "c", "e"], avoid=["c - e", "c"], expect=1),
            B("t2 != 0, t4 = 0", "b c", ["c*c/b", "b", "c", "0"], expect=2),
            B("t2 = t3 = 0, t4 != 0", "a e", ["a", "0", "0", "e"], expect=9),
            B("t2 = t3 = t4 = 0", "a", ["a", "0", "0", "0"], expect=26),
            B("t2 = 0, t3 = t4 != 0", "a e", ["a", "0", "e", "e"], expect=8),
        ],
    ),
    Plan(
        28,
        ["+2:11", "+3:33", "+2:22 +3:23 +3:32", "+1:31", "+1:13"],
        ["t3*t4", "t1*(t4 + t5)", "t3*t5", "t1*t3"],
        hints={"t1*t5": "-3:11", "t2*t5": "-1:12", "t5**2": "-1:12", "t4**2": "+1:21", "t2*t4": "-1:21"},
        branches=[
            B("S1 generic", "b c", ["0", "b", "c", "0", "0"], avoid=["4*c + b*b"], expect=6),
            B("S1 t3 = -t2^2/4", "b", ["0", "2*b", "-b*b", "0", "0"], expect=20),
            B("S1 t3 = 0", "b", ["0", "b", "0", "0", "0"], expect=25),
            B("S2 generic", "b f", ["0", "b", "f*(b + f)", "0", "f"], avoid=["b + f", "b + 2*f"], expect=3),
            B("S2 t5 = -t2/2", "f", ["0", "-2*f", "-f*f", "0", "f"], expect=18),
            B("S2 t5 = -t2", "f", ["0", "-f", "0", "0", "f"], expect=21),
            B("S2 t5 = 0", "b", ["0", "b", "0", "0", "0"], expect=25),
            B("S3 generic", "b e", ["0", "b", "e*(e - b)", "e", "0"], avoid=["e - b", "2*e - b"], expect=4),
            B("S3 t4 = t2/2", "e", ["0", "2*e", "-e*e", "e", "0"], expect=19),
            B("S3 t4 = t2", "e", ["0", "e", "0", "e", "0"], expect=22),
            B("S4 generic", "b f", ["0", "b", "f*(b + f)", "-f", "f"], avoid=["b + f", "b + 2*f"], expect=6),
            B("S4 t5 = -t2/2", "f", ["0", "-2*f", "-f*f", "-f", "f"], expect=24),
            B("S4 t5 = -t2", "f", ["0", "-f", "0", "-f", "f"], expect=23),
            B("S5 generic", "e f", ["0", "e - f", "e*f", "e", "f"], avoid=["e + f"], expect=5),
            B("S5 t4 = 0", "f", ["0", "-f", "0", "0", "f"], expect=21),
            B("S5 t5 = 0", "e", ["0", "e", "0", "e", "0"], expect=22),
            B("S5 t4 = -t5", "f", ["0", "-2*f", "-f*f", "-f", "f"], expect=24),
            B("H generic", "a b e", ["a", "b", "e*(e - b)", "e", "-e"], avoid=["2*e - b", "e - b"], expect=1),
            B("H t2 = t4", "a e", ["a", "e", "0", "e", "-e"], expect=2),
            B("H t1 = 0", "b e", ["0", "b", "e*(e - b)", "e", "-e"], avoid=["2*e - b", "e - b"], expect=6),
            B("H t4 = t2/2", "a e", ["a", "2*e", "-e*e", "e", "-e"], expect=8),
            B("H t4 = 0", "a b", ["a", "b", "0", "0", "0"], expect=9),
            B("H t1 = 0, t4 = t2", "e", ["0", "e", "0", "e", "-e"], expect=23),
            B("H t1 = 0, t4 = t2/2", "e", ["0", "2*e", "-e*e", "e", "-e"], expect=24),
            B("H t1 = t4 = 0", "b", ["0", "b", "0", "0", "0"], expect=25),
            B("H t2 = t4 = 0", "a", ["a", "0", "0", "0", "0"], expect=26),
        ],
    ),
]

PLANS: Dict[int, Plan] = {p.index: p for p in _PLANS}


def plan(index: int) -> Optional[Plan]:
    return PLANS.get(index)
