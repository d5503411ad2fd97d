"""JSON spec files: schema, validation and construction of submeasures."""
from __future__ import annotations

import hashlib
import json
from collections.abc import Mapping
from pathlib import Path

import jsonschema

from .core import (
    COVER_CAP,
    CoverNumber,
    Filtration,
    PointMeasure,
    SupMeasures,
    Submeasure,
    TableSubmeasure,
    VectorSeq,
    finset,
)
from .errors import PreconditionError
from .extended import as_ext
from .ideals import CanonicalIdeal, scheme_by_name
from .instances import INSTANCE_NAMES, named_instance


class SpecError(PreconditionError):
    """The spec file is malformed or fails the schema."""


RATIONAL = {"type": "string", "pattern": r"^(inf|-?[0-9]+(/[0-9]+)?)$"}
NATURAL = {"type": "integer", "minimum": 0}
SET = {"type": "array", "items": NATURAL, "uniqueItems": True}
POINT_VALUES = {
    "type": "array",
    "items": {"type": "array", "prefixItems": [NATURAL, RATIONAL], "items": False, "minItems": 2},
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["kind"],
    "oneOf": [
        {
            "properties": {
                "kind": {"const": "table"},
                "name": {"type": "string"},
                "universe": {"type": "integer", "minimum": 0, "maximum": 20},
                "entries": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["set", "value"],
                        "properties": {"set": SET, "value": RATIONAL},
                        "additionalProperties": False,
                    },
                },
                "default": RATIONAL,
            },
            "required": ["kind", "universe", "entries"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "kind": {"const": "sup_measures"},
                "name": {"type": "string"},
                "measures": {"type": "array", "items": POINT_VALUES},
            },
            "required": ["kind", "measures"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "kind": {"const": "vector_seq"},
                "name": {"type": "string"},
                "vectors": {"type": "array", "items": POINT_VALUES},
            },
            "required": ["kind", "vectors"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "kind": {"const": "filtration"},
                "name": {"type": "string"},
                "universe": NATURAL,
                "levels": {"type": "array", "items": {"type": "array", "items": SET}},
            },
            "required": ["kind", "levels"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "kind": {"const": "cover"},
                "name": {"type": "string"},
                "universe": NATURAL,
                "base": {"type": "array", "items": SET},
                "cap": {"type": "integer", "minimum": 1, "maximum": COVER_CAP},
            },
            "required": ["kind", "base"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "kind": {"const": "named"},
                "ideal": {"enum": ["FinTimesEmpty", "ED", "EDfin", "Summable", "SubBlocksA", "SubBlocksB"]},
                "representation": {"type": "string"},
                "scheme": {"enum": ["arith-v1", "segments-v1"]},
            },
            "required": ["kind", "ideal"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "kind": {"const": "named"},
                "instance": {"enum": list(INSTANCE_NAMES)},
                "scheme": {"enum": ["arith-v1", "segments-v1"]},
            },
            "required": ["kind", "instance"],
            "additionalProperties": False,
        },
    ],
}


def validate_spec(doc: Mapping) -> list[str]:
    """Schema error messages, empty when the document is valid."""
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    out = []
    for err in errors:
        if err.validator == "oneOf" and err.context:
            # report the branch matching the declared kind
            kind = doc.get("kind") if isinstance(doc, Mapping) else None
            for sub in err.context:
                branch = SCHEMA["oneOf"][sub.schema_path[0]]
                if branch["properties"]["kind"].get("const") == kind:
                    loc = "/".join(str(p) for p in sub.path) or "<root>"
                    out.append(f"{loc}: {sub.message}")
            if not out:
                out.append(f"no spec kind matches: {err.message[:200]}")
        else:
            loc = "/".join(str(p) for p in err.path) or "<root>"
            out.append(f"{loc}: {err.message}")
    return sorted(set(out))


def digest(doc: Mapping) -> str:
    """sha256 of the canonical JSON form."""
    text = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def load_spec_file(path: str | Path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path} is not valid JSON: {exc}") from exc
    return doc


def _point_map(pairs) -> dict[int, object]:
    out: dict[int, object] = {}
    for n, v in pairs:
        if n in out:
            raise SpecError(f"point {n} listed twice")
        out[n] = as_ext(v)
    return out


def build_spec(doc: Mapping) -> Submeasure:
    """Validate ``doc`` and construct the submeasure it describes."""
    errs = validate_spec(doc)
    if errs:
        raise SpecError("; ".join(errs))
    kind = doc["kind"]
    name = doc.get("name", kind)
    if kind == "table":
        entries = {tuple(sorted(e["set"])): e["value"] for e in doc["entries"]}
        default = doc.get("default")
        u = doc["universe"]
        for S in entries:
            if any(x >= u for x in S):
                raise SpecError(f"set {list(S)} leaves the universe of size {u}")
        try:
            return TableSubmeasure.from_sets(u, entries, default=default, name=name)
        except (KeyError, ValueError) as exc:
            raise SpecError(f"incomplete or invalid table: {exc}") from exc
    if kind == "sup_measures":
        return SupMeasures([PointMeasure(_point_map(m)) for m in doc["measures"]], name=name)
    if kind == "vector_seq":
        return VectorSeq([_point_map(v) for v in doc["vectors"]], name=name)
    if kind == "filtration":
        levels = [[finset(S) for S in level] for level in doc["levels"]]

        # level n lists the maximal sets of K_n; a set in K_n has value n + 1
        def K(n: int, F: frozenset[int]) -> bool:
            return n < len(levels) and any(F <= S for S in levels[n])

        # the listed levels are the whole family: anything outside them is infinite
        return Filtration(K, max_level=max(len(levels) - 1, 0), universe=doc.get("universe"), name=name,
                          exhaustive=True)
    if kind == "cover":
        base_sets = [finset(S) for S in doc["base"]]
        return CoverNumber(lambda S: any(S <= B for B in base_sets), cap=doc.get("cap", COVER_CAP),
                           universe=doc.get("universe"), name=name)
    scheme = scheme_by_name(doc.get("scheme", "arith-v1"))
    if "instance" in doc:
        return named_instance(doc["instance"], scheme).spec
    return CanonicalIdeal(doc["ideal"], scheme).representation(doc.get("representation"))
