"""JSON group descriptions.

A group file looks like::

    {"name": "joyce-9-3-5", "dimension": 3, "cyclotomic_order": 4,
     "generators": [[["-1", "0", "0"], ["0", "z", "0"], ["0", "0", "z"]]]}

Matrix entries are strings in the grammar

    expression := sign? term (('+'|'-') term)*
    term       := rational ('*' 'z^' int)? | 'z^' int | 'z'
    rational   := int ('/' posint)?

where z stands for exp(2 pi i / cyclotomic_order).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import DimensionMismatch, ParseError
from .field import CycNumber
from .linalg import CycMatrix

_TOKEN = re.compile(r"\s*(?:(\d+)|(z)|([-+*/^]))")


@dataclass(frozen=True)
class GroupFile:
    name: str
    dimension: int
    cyclotomic_order: int
    generators: tuple[CycMatrix, ...]
    overrides: dict[int, dict[int, int]] = field(default_factory=dict)
    force_sp: bool = False
    source: str = ""


def _tokens(text: str, line: int, col0: int) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip()) if text[pos:].strip() else pos
            raise ParseError(f"unexpected character {text[bad]!r} in entry {text!r}", line, col0 + bad)
        start = m.start(m.lastindex)
        kind = {1: "int", 2: "z", 3: "op"}[m.lastindex]
        out.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    return out


def parse_entry(text: str, m: int, line: int = 1, col: int = 1) -> CycNumber:
    """Parse one matrix entry into an element of Q(zeta_m)."""
    toks = _tokens(text, line, col)
    i = 0
    coeffs: dict[int, Fraction] = {}

    def peek(kind=None, value=None):
        if i >= len(toks):
            return False
        k, v, _ = toks[i]
        return (kind is None or k == kind) and (value is None or v == value)

    def fail(msg):
        where = col + (toks[i][2] if i < len(toks) else len(text))
        raise ParseError(f"{msg} in entry {text!r}", line, where)

    def take(kind, value=None):
        nonlocal i
        if not peek(kind, value):
            fail(f"expected {value or kind}")
        i += 1
        return toks[i - 1][1]

    def exponent() -> int:
        take("z")
        if not peek("op", "^"):
            return 1
        take("op", "^")
        sign = 1
        if peek("op", "-"):
            take("op", "-")
            sign = -1
        return sign * int(take("int"))

    if not toks:
        fail("empty entry")
    sign = 1
    if peek("op", "-") or peek("op", "+"):
        sign = -1 if take("op") == "-" else 1
    while True:
        if peek("int"):
            q = Fraction(int(take("int")))
            if peek("op", "/"):
                take("op", "/")
                if peek("int", "0"):
                    fail("zero denominator")
                den = int(take("int"))
                q /= den
            power = 0
            if peek("op", "*"):
                take("op", "*")
                if not peek("z"):
                    fail("expected z after '*'")
                power = exponent()
        elif peek("z"):
            q, power = Fraction(1), exponent()
        else:
            fail("expected a term")
        power %= m
        coeffs[power] = coeffs.get(power, Fraction(0)) + sign * q
        if i == len(toks):
            break
        op = take("op")
        if op not in "+-":
            i -= 1
            fail("expected '+' or '-'")
        sign = 1 if op == "+" else -1
    full = [Fraction(0)] * m
    for p, c in coeffs.items():
        full[p] += c
    return CycNumber(m, full)


def _locate(raw: str, needle: str, start: int) -> tuple[int, int, int]:
    """(line, column, offset) of the first quoted occurrence of needle at or after start."""
    lit = json.dumps(needle)
    at = raw.find(lit, start)
    if at < 0:
        return 1, 1, start
    line = raw.count("\n", 0, at) + 1
    col = at - (raw.rfind("\n", 0, at) + 1) + 2  # skip the opening quote
    return line, col, at + len(lit)


def _require(obj: dict, key: str, kind):
    if key not in obj:
        raise ParseError(f"missing field {key!r}", 1, 1)
    v = obj[key]
    if not isinstance(v, kind) or isinstance(v, bool) and kind is not bool:
        raise ParseError(f"field {key!r} has the wrong type", 1, 1)
    return v


def parse_group_text(raw: str, source: str = "<string>") -> GroupFile:
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object", 1, 1)
    name = _require(obj, "name", str)
    n = _require(obj, "dimension", int)
    m = _require(obj, "cyclotomic_order", int)
    gens = _require(obj, "generators", list)
    if n < 1 or m < 1:
        raise ParseError("dimension and cyclotomic_order must be positive", 1, 1)
    if not gens:
        raise ParseError("at least one generator is required", 1, 1)

    offset = raw.find('"generators"')
    matrices = []
    for gi, g in enumerate(gens):
        if not isinstance(g, list) or len(g) != n or any(not isinstance(r, list) or len(r) != n for r in g):
            raise DimensionMismatch(f"generator {gi} is not a {n}x{n} matrix")
        rows = []
        for r in g:
            row = []
            for entry in r:
                if not isinstance(entry, str):
                    entry = str(entry)
                line, col, offset = _locate(raw, entry, offset)
                row.append(parse_entry(entry, m, line, col))
            rows.append(row)
        matrices.append(CycMatrix.from_rows(rows, m))

    overrides = {}
    for k, table in (obj.get("overrides") or {}).items():
        try:
            overrides[int(k)] = {int(d): int(v) for d, v in table.items()}
        except (ValueError, AttributeError):
            raise ParseError(f"override for orbit {k!r} must map degrees to integers", 1, 1) from None
    force_sp = obj.get("force_sp", False)
    if not isinstance(force_sp, bool):
        raise ParseError("force_sp must be a boolean", 1, 1)
    return GroupFile(name, n, m, tuple(matrices), overrides, force_sp, source)


def parse_group_file(path) -> GroupFile:
    p = Path(path)
    if not p.exists():
        bundled = resources.files("qale") / "data" / (p.name if p.suffix else p.name + ".json")
        if bundled.is_file():
            return parse_group_text(bundled.read_text(), str(p))
    return parse_group_text(p.read_text(), str(p))


def bundled_names() -> list[str]:
    folder = resources.files("qale") / "data"
    return sorted(f.name[:-5] for f in folder.iterdir() if f.name.endswith(".json"))


def bundled_path(name: str):
    return resources.files("qale") / "data" / f"{name}.json"


def dump_group(gf_name: str, n: int, m: int, generators, overrides=None, force_sp=False) -> str:
    """Serialize generators back to the file format (inverse of parse_group_text)."""
    from .field import format_cyc

    obj = {
        "name": gf_name,
        "dimension": n,
        "cyclotomic_order": m,
        "generators": [[[format_cyc(g.promote(m)[i, j]) for j in range(n)] for i in range(n)] for g in generators],
    }
    if overrides:
        obj["overrides"] = {str(k): {str(d): v for d, v in t.items()} for k, t in overrides.items()}
    if force_sp:
        obj["force_sp"] = True
    # one matrix row per line keeps the files readable
    text = json.dumps(obj, indent=2)
    text = re.sub(r"\[\s+((?:\"[^\"]*\",?\s*)+)\]",
                  lambda mt: "[" + ", ".join(x.strip().rstrip(",") for x in re.findall(r"\"[^\"]*\",?", mt.group(1))) + "]",
                  text)
    return text + "\n"
