"""Text and JSON forms of tables and series.

Tables and series are written one term per line as ``e1,e2,...<TAB>coeff``,
sorted by exponent.  The JSON variant carries the same data, with
coefficients as decimal (or ``p/q``) strings so nothing loses precision.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .series import Coefficient, ExactSeries, Multidegree


def format_exponent(e: Multidegree) -> str:
    return ",".join(str(x) for x in e)


def parse_exponent(text: str) -> Multidegree:
    text = text.strip().strip("()[]")
    return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")


def format_coefficient(c: Coefficient) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def table_lines(table: Mapping[Multidegree, Coefficient] | Iterable[tuple[Multidegree, Coefficient]]) -> list[str]:
    items = table.items() if isinstance(table, Mapping) else table
    return [f"{format_exponent(e)}\t{format_coefficient(c)}" for e, c in sorted(items)]


def parse_table(text: str) -> dict[Multidegree, int]:
    out: dict[Multidegree, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split("\t") if "\t" in line else line.rsplit(None, 1)
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'exponent<TAB>coefficient'")
        e = parse_exponent(parts[0])
        if e in out:
            raise ValueError(f"line {lineno}: duplicate exponent {e}")
        c = Fraction(parts[1].strip())
        if c.denominator != 1:
            raise ValueError(f"line {lineno}: table entries must be integers")
        out[e] = int(c)
    return out


def read_table(path) -> dict[Multidegree, int]:
    with open(path) as fh:
        return parse_table(fh.read())


def table_json(table: Mapping[Multidegree, Coefficient]) -> list[dict]:
    return [{"exponent": list(e), "coefficient": format_coefficient(c)} for e, c in sorted(table.items())]


def series_lines(s: ExactSeries) -> list[str]:
    return table_lines(s.terms)


def series_json(s: ExactSeries) -> dict:
    return {
        "box": {"lower": list(s.box.lower), "upper": list(s.box.upper), "max_height": s.box.max_height},
        "terms": table_json(s.terms),
    }


def table_from_json(items: list[dict]) -> dict[Multidegree, Fraction]:
    return {tuple(d["exponent"]): Fraction(d["coefficient"]) for d in items}
