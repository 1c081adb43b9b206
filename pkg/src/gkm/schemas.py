"""JSON Schema (draft 2020-12) for every ``gkm ... --json`` report.

Big integers and rationals are carried as strings ("196884", "-3/2") so
reports never lose precision.
"""

_integer = {"type": "string", "pattern": r"^-?[0-9]+$"}
_rational = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_exponent = {"type": "array", "items": {"type": "integer"}}

_mismatch = {
    "type": "object",
    "required": ["exponent", "left", "right"],
    "properties": {"exponent": _exponent, "left": _rational, "right": _rational},
    "additionalProperties": False,
}
_mismatches = {"type": "array", "items": _mismatch}

_table = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["exponent", "coefficient"],
        "properties": {"exponent": _exponent, "coefficient": _rational},
        "additionalProperties": False,
    },
}

_violation = {
    "type": "object",
    "required": ["condition", "i", "j", "detail"],
    "properties": {
        "condition": {"enum": ["C1", "C2", "C3", "size"]},
        "i": {"type": "string"},
        "j": {"type": "string"},
        "detail": {"type": "string"},
    },
}


def _report(command: str, props: dict, required=()) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "required": ["command", "ok", *required],
        "properties": {"command": {"const": command}, "ok": {"type": "boolean"}, **props},
        "additionalProperties": False,
    }


SCHEMAS = {
    "validate": _report("validate", {"violations": {"type": "array", "items": _violation}}, ["violations"]),
    "classify": _report("classify", {
        "real": {"type": "array", "items": {"type": "string"}},
        "imaginary": {"type": "array", "items": {"type": "string"}},
        "free_split_applicable": {"type": "boolean"},
        "violations": {"type": "array", "items": _violation},
    }),
    "center-pairs": _report("center-pairs", {
        "blocks": {"type": "array", "items": {
            "type": "object", "required": ["i", "j", "count"],
            "properties": {"i": {"type": "string"}, "j": {"type": "string"}, "count": _integer},
        }},
        "total": _integer,
    }, ["blocks", "total"]),
    "witt": _report("witt", {"dims": _table, "mismatches": _mismatches}, ["dims"]),
    "oracle": _report("oracle", {
        "dims": _table,
        "basis": {"type": "object", "additionalProperties": {"type": "array", "items": {"type": "string"}}},
        "gJ_dims": _table,
        "free_gens": _table,
    }, ["dims"]),
    "denom": _report("denom", {
        "mode": {"enum": ["full", "factored"]},
        "height": {"type": "integer", "minimum": 1},
        "mismatches": _mismatches,
    }, ["mode", "height", "mismatches"]),
    "compare": _report("compare", {
        "height": {"type": "integer", "minimum": 1},
        "compared": {"type": "integer", "minimum": 0},
        "mismatches": _mismatches,
    }, ["height", "compared", "mismatches"]),
    "moonshine": _report("moonshine", {
        "order": {"type": "integer", "minimum": 1},
        "coefficients_file": {"type": "string"},
        "coefficients": {"type": "object", "additionalProperties": _integer},
        "product": {"type": "object", "required": ["ok", "compared", "matched", "mismatches"], "properties": {
            "ok": {"type": "boolean"}, "compared": {"type": "integer"}, "matched": {"type": "integer"},
            "mismatches": _mismatches}},
        "dims": {"type": "object", "required": ["ok", "mismatches"], "properties": {
            "ok": {"type": "boolean"}, "mismatches": _mismatches}},
        "kang": {"type": "object", "required": ["ok", "checked", "failures"], "properties": {
            "ok": {"type": "boolean"}, "checked": {"type": "integer"},
            "failures": {"type": "array", "items": {
                "type": "object", "required": ["degree", "expected", "computed", "terms"],
                "properties": {"degree": _exponent, "expected": _integer, "computed": _rational,
                               "terms": {"type": "array"}}}}}},
    }, ["order"]),
}
