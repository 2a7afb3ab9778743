"""Input documents (TOML or JSON) and the built-in presets."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

import tomli

from .ce_algebra import Truncation
from .lattice import IntegerLattice, Sublattice, generated_sublattice
from .lift import Component, LiftSpec
from .toric import DelzantPolytope, Facet, box, cube, standard_simplex


class InputError(ValueError):
    pass


class ParseError(InputError):
    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


class ValidationError(InputError):
    def __init__(self, fieldname: str, message: str):
        self.field = fieldname
        super().__init__(f"{fieldname}: {message}")


@dataclass(frozen=True)
class InputSpec:
    polytope: DelzantPolytope
    lift: LiftSpec
    signs: Optional[tuple[int, ...]] = None
    vertex: Optional[tuple[int, ...]] = None
    truncation: Truncation = Truncation()
    name: str = ""

    def to_json(self) -> dict:
        doc: dict[str, Any] = {
            "polytope": {"dim": self.polytope.dim,
                         "facets": [{"normal": list(f.normal), "offset": str(f.offset)}
                                    for f in self.polytope.facets]},
            "lift": {"sublattice": [list(v) for v in self.lift.pi1_image.basis],
                     "fiber_points": self.lift.fiber_points,
                     "bundle_scale": str(self.lift.bundle_scale),
                     "components": [{"label": c.label, "phase": str(c.phase)}
                                    for c in self.lift.components]},
            "options": {},
        }
        opts = doc["options"]
        if self.signs is not None:
            opts["signs"] = list(self.signs)
        if self.vertex is not None:
            opts["vertex"] = list(self.vertex)
        if self.truncation.max_word_len is not None:
            opts["max_word_len"] = self.truncation.max_word_len
        if self.truncation.max_area is not None:
            opts["max_area"] = str(self.truncation.max_area)
        return doc


# ---------- presets ----------

def _unit(i: int, d: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(d))


def clifford(n: int, phases: Sequence = (0,)) -> InputSpec:
    """Clifford torus of CP^(n-1) lifted to S^(2n-1): n points per fiber,
    capped at the facet e_1."""
    if n < 2:
        raise ValidationError("n", "clifford needs n >= 2")
    d = n - 1
    e1 = _unit(0, d)
    basis = [tuple(a - b for a, b in zip(_unit(i, d), e1)) for i in range(1, d)]
    basis.append(tuple(-1 - b for b in e1))
    comps = tuple(Component(str(i + 1), p) for i, p in enumerate(phases))
    lift = LiftSpec(Sublattice(IntegerLattice(d), basis), comps, n)
    return InputSpec(standard_simplex(d), lift, vertex=e1, name=f"clifford {n}")


def cliffordanti(n: int) -> InputSpec:
    """Clifford torus lifted to the unit anticanonical bundle: the projection
    is an isomorphism and the capping vertex is the anticanonical facet."""
    if n < 2:
        raise ValidationError("n", "cliffordanti needs n >= 2")
    d = n - 1
    lift = LiftSpec(Sublattice.full(d), (Component("1", 0),), 1, Fraction(1, n))
    return InputSpec(standard_simplex(d), lift, vertex=tuple([-1] * d), name=f"cliffordanti {n}")


def hopf(n: int) -> InputSpec:
    """Two lifts of the Clifford torus with fiber phases 0 and half a step."""
    spec = clifford(n, phases=(0, Fraction(1, 2 * n)))
    return InputSpec(spec.polytope, spec.lift, vertex=spec.vertex, name=f"hopf {n}")


def p1xp1() -> InputSpec:
    """Monotone square, lifted with two points per fiber."""
    lift = LiftSpec(Sublattice(IntegerLattice(2), [(1, 1), (1, -1)]), (Component("1", 0),), 2)
    return InputSpec(cube(2), lift, vertex=(-1, 0), name="p1xp1")


PRESETS = {
    "clifford": (clifford, True),
    "cliffordanti": (cliffordanti, True),
    "hopf": (hopf, True),
    "p1xp1": (p1xp1, False),
}


def preset(name: str, args: Sequence[str] = ()) -> InputSpec:
    if name not in PRESETS:
        raise ValidationError("example", f"unknown preset {name!r}; known: {', '.join(PRESETS)}")
    fn, takes_n = PRESETS[name]
    if takes_n:
        if len(args) != 1:
            raise ValidationError("example", f"preset {name} takes one integer argument")
        try:
            n = int(args[0])
        except ValueError:
            raise ValidationError("example", f"expected an integer, got {args[0]!r}") from None
        return fn(n)
    if args:
        raise ValidationError("example", f"preset {name} takes no arguments")
    return fn()


# ---------- documents ----------

def load_document(path: Optional[str]) -> dict:
    """Read a TOML or JSON document from a path ('-' or None for stdin)."""
    if path in (None, "-"):
        text, where = sys.stdin.read(), "<stdin>"
    else:
        p = Path(path)
        if not p.exists():
            raise ParseError(str(path), "no such file")
        text, where = p.read_text(), str(path)
    stripped = text.lstrip()
    if stripped.startswith("{") or (path and str(path).endswith(".json")):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{where}:{exc.lineno}:{exc.colno}", exc.msg) from None
    try:
        return tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ParseError(where, str(exc)) from None


def _rational(value, fieldname: str) -> Fraction:
    if isinstance(value, bool):
        raise ValidationError(fieldname, "expected a rational number")
    if isinstance(value, float):
        if not value.is_integer():
            raise ValidationError(fieldname, "write non-integers as exact strings like \"1/3\"")
        return Fraction(int(value))
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ValidationError(fieldname, f"not a rational number: {value!r}") from None


def _int_vector(value, fieldname: str, length: Optional[int] = None) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool)
                                              for x in value):
        raise ValidationError(fieldname, f"expected a list of integers, got {value!r}")
    if length is not None and len(value) != length:
        raise ValidationError(fieldname, f"expected {length} entries, got {len(value)}")
    return tuple(value)


def parse_input(doc: dict) -> InputSpec:
    """Validate a parsed document into an InputSpec."""
    from .toric import disk_potential, monotone_fiber, validate_delzant
    from .lift import LiftError
    from .lattice import LatticeError

    if not isinstance(doc, dict):
        raise ValidationError("document", "top level must be a table/object")
    if "example" in doc:
        ex = doc["example"]
        args = [str(a) for a in ex.get("args", [])] if isinstance(ex, dict) else []
        name = ex["name"] if isinstance(ex, dict) else str(ex)
        return preset(name, args)
    poly = doc.get("polytope")
    if not isinstance(poly, dict) or "facets" not in poly:
        raise ValidationError("polytope.facets", "missing")
    facets = []
    for i, f in enumerate(poly["facets"]):
        where = f"polytope.facets[{i}]"
        if not isinstance(f, dict):
            raise ValidationError(where, "expected a table with normal and offset")
        normal = _int_vector(f.get("normal"), where + ".normal")
        facets.append(Facet(normal, _rational(f.get("offset", 0), where + ".offset")))
    dims = {len(f.normal) for f in facets}
    if len(dims) != 1:
        raise ValidationError("polytope.facets", "normals have different lengths")
    dim = dims.pop()
    if "dim" in poly and poly["dim"] != dim:
        raise ValidationError("polytope.dim", f"declared {poly['dim']} but normals have length {dim}")
    P = DelzantPolytope(tuple(facets))

    lift = doc.get("lift", {})
    opts = doc.get("options", {})
    signs = None
    if "signs" in opts or "sign_convention" in opts:
        raw = opts.get("signs", opts.get("sign_convention"))
        if raw == "all-plus":
            raw = [1] * len(facets)
        signs = _int_vector(raw, "options.signs", len(facets))
        if any(s not in (1, -1) for s in signs):
            raise ValidationError("options.signs", "entries must be 1 or -1")
    vertex = _int_vector(opts["vertex"], "options.vertex", dim) if "vertex" in opts else None
    L = opts.get("max_word_len")
    if L is not None and (not isinstance(L, int) or L < 0):
        raise ValidationError("options.max_word_len", "expected a nonnegative integer")
    A = _rational(opts["max_area"], "options.max_area") if "max_area" in opts else None

    sub = lift.get("sublattice", "auto")
    if sub == "auto":
        # an invalid polytope surfaces as PolytopeError, not as bad input
        validate_delzant(P)
        W = disk_potential(P, monotone_fiber(P))
        exps = W.exponents()
        diffs = [tuple(a - b for a, b in zip(e, exps[0])) for e in exps[1:]]
    try:
        if sub == "auto":
            S = generated_sublattice(diffs, dim)
        else:
            rows = [_int_vector(r, f"lift.sublattice[{i}]", dim) for i, r in enumerate(sub)]
            S = Sublattice(IntegerLattice(dim), rows)
        comps_raw = lift.get("components", [{"label": "1", "phase": 0}])
        comps = []
        for i, c in enumerate(comps_raw):
            if not isinstance(c, dict) or "label" not in c:
                raise ValidationError(f"lift.components[{i}]", "expected label and phase")
            comps.append(Component(str(c["label"]),
                                   _rational(c.get("phase", c.get("offset", 0)),
                                             f"lift.components[{i}].phase")))
        m = lift.get("fiber_points", 1)
        if not isinstance(m, int) or isinstance(m, bool):
            raise ValidationError("lift.fiber_points", "expected a positive integer")
        scale = _rational(lift.get("bundle_scale", 1), "lift.bundle_scale")
        spec = LiftSpec(S, tuple(comps), m, scale)
    except (LiftError, LatticeError) as exc:
        raise ValidationError("lift", str(exc)) from None
    return InputSpec(P, spec, signs, vertex, Truncation(L, A), str(doc.get("name", "")))
