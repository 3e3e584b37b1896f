"""JSON round trips for algebras and morphisms, with schema validation.

The schemas live in ``nmorph/schemas``; every loader validates first so a
malformed file fails with a readable diagnostic instead of a KeyError.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Mapping

import jsonschema

from .ainf import AInfAlgebra, NMorphism
from .koszul import GradedMap, GradedModule
from .ombas import OmbasMorphism, OmegaBAsAlgebra
from .simplex import check_face
from .trees import GaugedTree, shape_from_json, shape_to_json

SCHEMAS = ("bar_pair", "hom_simplex", "horn", "pin_rep", "ainf_morphism", "ombas_morphism")


class SchemaError(ValueError):
    """Input JSON does not match its schema."""


@lru_cache(maxsize=None)
def schema(name: str) -> dict:
    if name not in SCHEMAS:
        raise KeyError(name)
    text = resources.files("nmorph").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


def validate(data, name: str) -> None:
    try:
        jsonschema.validate(data, schema(name))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{name}: {exc.message} at {where}") from None


# A-infinity flavour

def ainf_to_json(A: AInfAlgebra) -> dict:
    return {"module": A.module.to_json(), "cap": A.cap,
            "ops": {str(k): f.to_json() for k, f in sorted(A.ops.items()) if not f.is_zero()}}


def ainf_from_json(data: Mapping) -> AInfAlgebra:
    M = GradedModule.from_json(data["module"])
    ops = {int(k): GradedMap.from_json(f, [M] * int(k), M) for k, f in data["ops"].items()}
    return AInfAlgebra(M, ops, int(data["cap"]))


def nmorphism_to_json(F: NMorphism) -> dict:
    rows = sorted(([list(I), m, f.to_json()] for (I, m), f in F.maps.items() if not f.is_zero()),
                  key=lambda r: (len(r[0]), r[0], r[1]))
    return {"flavor": "ainf", "n": F.n, "cap": F.cap,
            "source": ainf_to_json(F.source), "target": ainf_to_json(F.target), "maps": rows}


def nmorphism_from_json(data: Mapping) -> NMorphism:
    validate(data, "ainf_morphism")
    A, B = ainf_from_json(data["source"]), ainf_from_json(data["target"])
    n = int(data["n"])
    maps = {}
    for I, m, f in data["maps"]:
        I = check_face(I, n)
        maps[(I, int(m))] = GradedMap.from_json(f, [A.module] * int(m), B.module)
    return NMorphism(n, A, B, maps, int(data["cap"]))


# OmegaB(As) flavour

def ombas_to_json(A: OmegaBAsAlgebra) -> dict:
    ops = sorted(([shape_to_json(t), f.to_json()] for t, f in A.ops.items() if not f.is_zero()),
                 key=lambda r: json.dumps(r[0]))
    return {"module": A.module.to_json(), "d": A.d.to_json(), "cap": A.cap, "ops": ops}


def ombas_from_json(data: Mapping) -> OmegaBAsAlgebra:
    M = GradedModule.from_json(data["module"])
    d = GradedMap.from_json(data["d"], [M], M)
    ops = {}
    for t, f in data["ops"]:
        shape = shape_from_json(t)
        ops[shape] = GradedMap.from_json(f, [M] * int(f["arity"]), M)
    return OmegaBAsAlgebra(M, d, ops, int(data["cap"]))


def ombas_morphism_to_json(F: OmbasMorphism) -> dict:
    rows = sorted(([list(I), t.to_json(), f.to_json()] for (I, t), f in F.maps.items()
                   if not f.is_zero()), key=lambda r: (len(r[0]), r[0], json.dumps(r[1], sort_keys=True)))
    return {"flavor": "ombas", "n": F.n, "cap": F.cap,
            "source": ombas_to_json(F.source), "target": ombas_to_json(F.target), "maps": rows}


def ombas_morphism_from_json(data: Mapping) -> OmbasMorphism:
    validate(data, "ombas_morphism")
    A, B = ombas_from_json(data["source"]), ombas_from_json(data["target"])
    n = int(data["n"])
    maps = {}
    for I, t, f in data["maps"]:
        I = check_face(I, n)
        gt = GaugedTree.from_json(t)
        maps[(I, gt)] = GradedMap.from_json(f, [A.module] * gt.arity, B.module)
    return OmbasMorphism(n, A, B, maps, int(data["cap"]))


__all__ = [
    "SCHEMAS", "SchemaError", "schema", "validate", "ainf_to_json", "ainf_from_json",
    "nmorphism_to_json", "nmorphism_from_json", "ombas_to_json", "ombas_from_json",
    "ombas_morphism_to_json", "ombas_morphism_from_json",
]
