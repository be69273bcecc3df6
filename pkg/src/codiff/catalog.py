"""The 28 codifferentials ``d1 .. d28`` on the 1|2 space and reference data.

The reference data (cohomology rows, stated graded splits, flags, centers,
opposite partners, jump targets) is used only for comparison with computed
values, never as input to a computation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Tuple

from .errors import MalformedInput
from .graded import SPACE_1_2, Coderivation, GradedSpace

__all__ = [
    "CatalogEntry",
    "get",
    "entries",
    "expected_row",
    "parse_expression",
    "parse_entries",
    "emit_entries",
    "load_file",
    "lookup",
    "data_path",
    "errata",
    "CATALOG_SIZE",
]

CATALOG_SIZE = 28

# target:sources with a sign, e.g. "-1:31" is -psi_1^{31}
_EXPRESSIONS = {
    1: "+1:13 -1:31 +3:11 +2:22 -3:33",
    2: "+1:13 -1:31 +3:11 -3:33",
    3: "+2:22 +3:33 -1:12",
    4: "+2:22 +3:33 +1:21",
    5: "+2:22 +3:33 +1:21 -1:13",
    6: "+2:22 +3:33 +1:21 -1:12",
    7: "+2:22 +3:33",
    8: "+3:33 +2:11 +1:31 -1:13 +2:32 +2:23",
    9: "+3:33 +2:11",
    10: "+3:33 -1:13 +2:23",
    11: "+3:33 +1:31 +2:32",
    12: "+3:33 +1:31 +2:23",
    13: "+3:33 -1:13 +2:32",
    14: "+3:33 +1:31 -1:13 +2:23",
    15: "+3:33 +1:31 -1:13 +2:32",
    16: "+3:33 +2:23",
    17: "+3:33 +2:32",
    18: "+3:33 -1:13 +2:23 +2:32",
    19: "+3:33 +1:31 +2:23 +2:32",
    20: "+3:33 +2:23 +2:32",
    21: "+3:33 -1:13",
    22: "+3:33 +1:31",
    23: "+3:33 -1:13 +1:31",
    24: "+3:33 -1:13 +1:31 +2:23 +2:32",
    25: "+3:33",
    26: "+2:11 +2:33",
    27: "+2:11",
    28: "+2:33",
}

_ROWS = {
    1: (2, 0, 0, 0, 0),
    2: (2, 1, 1, 1, 1),
    3: (1, 0, 0, 0, 0),
    4: (1, 0, 0, 0, 0),
    5: (1, 0, 0, 0, 0),
    6: (3, 2, 2, 2, 2),
    7: (3, 1, 1, 1, 1),
    8: (2, 1, 1, 1, 1),
    9: (2, 1, 2, 2, 1),
    10: (0, 3, 0, 0, 0),
    11: (0, 3, 0, 0, 0),
    12: (0, 1, 0, 1, 0),
    13: (0, 1, 0, 1, 0),
    14: (1, 1, 1, 1, 1),
    15: (1, 1, 1, 1, 1),
    16: (1, 1, 2, 2, 2),
    17: (1, 1, 2, 2, 2),
    18: (1, 1, 1, 1, 1),
    19: (1, 1, 1, 1, 1),
    20: (3, 2, 2, 2, 2),
    21: (1, 1, 2, 2, 2),
    22: (1, 1, 2, 2, 2),
    23: (3, 3, 3, 3, 3),
    24: (3, 4, 6, 12, 24),
    25: (3, 4, 8, 16, 32),
    26: (2, 2, 3, 5, 6),
    27: (3, 4, 9, 18, 32),
    28: (3, 5, 9, 17, 33),
}

# degree -> (even, odd), only where the prose commits to a split
_SPLITS = {
    1: {0: (0, 2), 1: (0, 0), 2: (0, 0), 3: (0, 0), 4: (0, 0)},
    3: {0: (0, 1), 1: (0, 0), 2: (0, 0), 3: (0, 0), 4: (0, 0)},
    4: {0: (0, 1), 1: (0, 0), 2: (0, 0), 3: (0, 0), 4: (0, 0)},
    5: {0: (0, 1), 1: (0, 0), 2: (0, 0), 3: (0, 0), 4: (0, 0)},
    7: {2: (1, 0)},
    8: {1: (1, 0), 2: (0, 1), 3: (1, 0), 4: (0, 1)},
    9: {2: (1, 1)},
    16: {2: (2, 0)},
    17: {2: (2, 0)},
    21: {3: (2, 0)},
    22: {3: (2, 0)},
    24: {2: (3, 3)},
    25: {2: (4, 4), 3: (8, 8)},
    26: {2: (1, 2), 3: (3, 2)},
    27: {2: (5, 4), 3: (6, 11)},
    28: {2: (5, 4), 3: (9, 8)},
}

_UNITAL = {1: True, 2: False, 3: False, 4: False, 5: False, 6: True, 7: False, 8: True, 9: False,
           10: False, 11: False, 12: False, 13: False, 14: False, 15: False, 16: False, 17: False,
           18: False, 19: False, 20: False, 21: False, 22: False, 23: False, 24: True, 25: False,
           26: False}
_COMMUTATIVE = {6: True, 7: True, 8: False, 10: False, 11: False, 12: False, 13: False, 14: False,
                15: False, 18: False, 19: False, 20: True, 21: False, 22: False, 23: True, 24: True,
                25: True, 28: True}
_NILPOTENT = {26: True, 27: True, 28: True}

# center spans, as lists of A-vectors {index: coefficient}
_CENTERS = {
    1: [{2: 1}, {3: 1}],
    2: [{2: 1}, {3: 1}],
    3: [{3: 1}],
    4: [{3: 1}],
    5: [{2: 1, 3: 1}],
    8: [{2: 1}, {3: 1}],
    9: [{2: 1}, {3: 1}],
    16: [{1: 1}],
    17: [{1: 1}],
    26: [{2: 1}, {3: 1}],
    27: [{2: 1}, {3: 1}],
}

_OPPOSITES = {3: 4, 4: 3, 10: 11, 11: 10, 12: 13, 13: 12, 14: 15, 15: 14, 16: 17, 17: 16,
              18: 19, 19: 18, 21: 22, 22: 21, 5: 5}

_RIGID = (1, 3, 4, 5, 7, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19)
_JUMPS = {k: () for k in _RIGID}
_JUMPS.update({
    2: (1,),
    6: (1,),
    8: (1,),
    9: (1,),
    20: (7,),
    21: (3, 5),
    22: (4, 5),
    23: (1, 2, 7),
    24: (1, 5, 7, 8),
    25: (1, 3, 4, 6, 7, 9),
    26: (1, 2, 8, 9),
    27: (1, 2, 8, 9, 26),
    28: (1, 2, 3, 4, 5, 6, 7, 8, 9, 18, 19, 20, 21, 22, 23, 24, 25, 26),
})


@dataclass(frozen=True)
class CatalogEntry:
    index: int
    d: Coderivation
    expression: str
    expected_row: Tuple[int, ...]
    expected_splits: Dict[int, Tuple[int, int]] = field(default_factory=dict, hash=False, compare=False)
    unital: Optional[bool] = None
    commutative: Optional[bool] = None
    nilpotent: Optional[bool] = None
    center: Optional[Tuple[Dict[int, int], ...]] = field(default=None, hash=False, compare=False)
    opposite: Optional[int] = None
    jump_targets: Optional[FrozenSet[int]] = None

    @property
    def name(self) -> str:
        return f"d{self.index}"

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "name": self.name,
            "codifferential": self.d.to_json(),
            "expression": self.expression,
            "expected_row": list(self.expected_row),
            "expected_splits": {str(n): list(s) for n, s in sorted(self.expected_splits.items())},
            "unital": self.unital,
            "commutative": self.commutative,
            "nilpotent": self.nilpotent,
            "center": None if self.center is None else [{str(k): v for k, v in c.items()} for c in self.center],
            "opposite": self.opposite,
            "jump_targets": None if self.jump_targets is None else sorted(self.jump_targets),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CatalogEntry":
        try:
            idx = int(obj["index"])
            d = Coderivation.from_json(obj["codifferential"])
            center = obj.get("center")
            jumps = obj.get("jump_targets")
            return cls(
                idx,
                d,
                str(obj.get("expression", str(d))),
                tuple(int(x) for x in obj["expected_row"]),
                {int(n): tuple(s) for n, s in obj.get("expected_splits", {}).items()},
                obj.get("unital"),
                obj.get("commutative"),
                obj.get("nilpotent"),
                None if center is None else tuple({int(k): v for k, v in c.items()} for c in center),
                obj.get("opposite"),
                None if jumps is None else frozenset(int(j) for j in jumps),
            )
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad catalog entry: {exc}") from exc


_TOKEN = re.compile(r"^([+-])(\d+):(\d+)$")


def parse_expression(text: str, space: GradedSpace = SPACE_1_2) -> Coderivation:
    """Build a coderivation from the compact ``"+1:13 -1:31"`` notation."""
    terms = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise MalformedInput(f"bad term {tok!r}")
        sign, target, sources = m.groups()
        idx = (int(target),) + tuple(int(c) for c in sources)
        for i in idx:
            space.check(i)
        terms.append(((idx[0], idx[1:]), -1 if sign == "-" else 1))
    return Coderivation(space, terms)


def _pretty(text: str) -> str:
    parts = []
    for tok in text.split():
        sign, rest = tok[0], tok[1:]
        t, s = rest.split(":")
        parts.append(f"{sign} psi_{t}^{s}")
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


@lru_cache(maxsize=None)
def get(k: int) -> CatalogEntry:
    if not isinstance(k, int) or not 1 <= k <= CATALOG_SIZE:
        raise KeyError(f"catalog index must be in 1..{CATALOG_SIZE}, got {k!r}")
    center = _CENTERS.get(k)
    jumps = _JUMPS.get(k)
    return CatalogEntry(
        k,
        parse_expression(_EXPRESSIONS[k]),
        _pretty(_EXPRESSIONS[k]),
        _ROWS[k],
        dict(_SPLITS.get(k, {})),
        _UNITAL.get(k),
        _COMMUTATIVE.get(k),
        _NILPOTENT.get(k),
        None if center is None else tuple(center),
        _OPPOSITES.get(k),
        None if jumps is None else frozenset(jumps),
    )


def entries() -> List[CatalogEntry]:
    return [get(k) for k in range(1, CATALOG_SIZE + 1)]


def expected_row(k: int) -> Tuple[int, ...]:
    return get(k).expected_row


def lookup(name: str) -> CatalogEntry:
    """Accepts ``"d7"``, ``"7"`` or ``7``."""
    text = str(name).strip().lower()
    if text.startswith("d"):
        text = text[1:]
    try:
        return get(int(text))
    except ValueError as exc:
        raise KeyError(f"unknown catalog entry {name!r}") from exc


def emit_entries(items: List[CatalogEntry]) -> str:
    return json.dumps({"entries": [e.to_json() for e in items]}, indent=1, sort_keys=True)


def parse_entries(text: str) -> List[CatalogEntry]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict) or not isinstance(obj.get("entries"), list):
        raise MalformedInput("expected an object with an 'entries' list")
    return [CatalogEntry.from_json(e) for e in obj["entries"]]


def load_file(path: str) -> Coderivation:
    """Read a single codifferential JSON file."""
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: not valid JSON: {exc}") from exc
    return Coderivation.from_json(obj)


def data_path(name: str):
    return Path(__file__).resolve().parent / "data" / name


@lru_cache(maxsize=None)
def errata() -> dict:
    """The versioned list of known paper-internal inconsistencies."""
    return json.loads(data_path("errata.json").read_text())
