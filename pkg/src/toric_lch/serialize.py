"""JSON forms of generators, tables, augmentations and chain maps."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping

from .augmentation import Augmentation, ChainMap, MCProblem
from .ce_algebra import CEElement, CoefficientRing, DifferentialTable, Truncation
from .laurent import LaurentPoly
from .lift import Generator, Kind, ReebChordComponent

SCHEMA = 1


def generator_to_json(g: Generator) -> dict:
    out: dict[str, Any] = {"symbol": g.symbol, "kind": g.kind.value, "deg_R": str(g.deg_R),
                           "deg_Z2": g.deg_Z2, "morse_index": g.morse_index}
    if g.component is not None:
        out["component"] = g.component
    if g.directions:
        out["directions"] = list(g.directions)
    if g.chord is not None:
        out["chord"] = {"angle": str(g.chord.angle), "source": g.chord.source,
                        "target": g.chord.target}
    return out


def generator_from_json(d: Mapping) -> Generator:
    chord = None
    if "chord" in d:
        c = d["chord"]
        chord = ReebChordComponent(Fraction(c["angle"]), c["source"], c["target"])
    deg = Fraction(str(d.get("deg_R", 0)))
    z2 = d.get("deg_Z2")
    if z2 is None:
        z2 = int(deg) % 2 if deg.denominator == 1 else 0
    return Generator(d["symbol"], Kind(d.get("kind", "reeb")), deg, z2,
                     int(d.get("morse_index", 0)), chord, d.get("component"),
                     tuple(d.get("directions", ())))


def truncation_to_json(t: Truncation) -> dict:
    return {"max_word_len": t.max_word_len,
            "max_area": None if t.max_area is None else str(t.max_area)}


def truncation_from_json(d) -> Truncation:
    if not d:
        return Truncation()
    A = d.get("max_area")
    return Truncation(d.get("max_word_len"), None if A is None else Fraction(str(A)))


def table_to_json(T: DifferentialTable) -> dict:
    return {
        "ring": T.ring.to_json(),
        "generators": [generator_to_json(g) for g in T.generators],
        "truncation": truncation_to_json(T.truncation),
        "truncated": T.truncated,
        "entries": {g.symbol: T.entries[g].to_json()
                    for g in sorted(T.entries, key=lambda h: h.sort_key())},
    }


def table_from_json(d: Mapping) -> DifferentialTable:
    ring = CoefficientRing.from_json(d["ring"])
    gens = [generator_from_json(g) for g in d["generators"]]
    by = {g.symbol: g for g in gens}
    tr = truncation_from_json(d.get("truncation"))
    entries = {}
    for sym, data in d.get("entries", {}).items():
        if sym not in by:
            raise ValueError(f"entry for unknown generator {sym!r}")
        entries[by[sym]] = CEElement.from_json(data, ring, by, tr)
    return DifferentialTable(ring, tuple(gens), entries, tr, bool(d.get("truncated", False)))


def poly_from_any(data, nvars: int) -> LaurentPoly:
    """A polynomial given as a JSON term list or as a bare rational."""
    if isinstance(data, list):
        return LaurentPoly.from_json(data, nvars)
    return LaurentPoly.constant(Fraction(str(data)), nvars)


def augmentation_to_json(eps: Augmentation) -> dict:
    return {"target": eps.target.to_json(),
            "values": {g.symbol: v.to_json()
                       for g, v in sorted(eps.values.items(), key=lambda t: t[0].symbol)},
            "variables": [v.to_json() for v in eps.variables]}


def augmentation_from_json(d: Mapping, table: DifferentialTable) -> Augmentation:
    target = CoefficientRing.from_json(d["target"]) if "target" in d else CoefficientRing(())
    by = table.by_symbol()
    values = {}
    for sym, v in d.get("values", {}).items():
        if sym not in by:
            raise ValueError(f"value for unknown generator {sym!r}")
        values[by[sym]] = poly_from_any(v, target.nvars)
    variables = tuple(poly_from_any(v, target.nvars) for v in d.get("variables", ()))
    return Augmentation(table.ring, target, values, variables)


def chain_map_to_json(phi: ChainMap) -> dict:
    return {"images": {g.symbol: img.to_json()
                       for g, img in sorted(phi.images.items(), key=lambda t: t[0].symbol)},
            "variables": [v.to_json() for v in phi.variables],
            "truncation": truncation_to_json(phi.truncation)}


def chain_map_from_json(d: Mapping, source: DifferentialTable, target: DifferentialTable) -> ChainMap:
    src, tgt = source.by_symbol(), target.by_symbol()
    images = {}
    for sym, data in d.get("images", {}).items():
        if sym not in src:
            raise ValueError(f"image for unknown generator {sym!r}")
        images[src[sym]] = CEElement.from_json(data, target.ring, tgt, target.truncation)
    variables = tuple(poly_from_any(v, target.ring.nvars) for v in d.get("variables", ()))
    return ChainMap(source.ring, target.ring, images, variables,
                    truncation_from_json(d.get("truncation")) if "truncation" in d
                    else target.truncation)


def mc_problem_from_json(d: Mapping) -> MCProblem:
    """{"ring", "generators", "m": {"0": [{"inputs": [...], "output": element}]}, "b": element}"""
    ring = CoefficientRing.from_json(d.get("ring", {"variables": []}))
    gens = {g["symbol"]: generator_from_json(g) for g in d["generators"]}
    tr = truncation_from_json(d.get("truncation"))
    tables = {}
    for key, rows in d.get("m", {}).items():
        k = int(key)
        table = {}
        for row in rows:
            args = tuple(gens[s] for s in row["inputs"])
            table[args] = CEElement.from_json(row["output"], ring, gens, tr)
        tables[k] = table
    b = CEElement.from_json(d.get("b", []), ring, gens, tr)
    return MCProblem(tables, b, d.get("max_d"))
