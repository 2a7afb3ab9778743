"""Command-line front end."""

from __future__ import annotations

import argparse
import cmath
import json
import sys
import warnings
from fractions import Fraction
from typing import Optional, Sequence

from . import fixtures
from .augmentation import CEError, check_augmentation, check_chain_map, mc_contributions, mc_residual
from .augpoly import AugPolyError, augmentation_polynomial, variety_member
from .ce_algebra import (Truncation, abelianize, check_squares_zero, project_degree0)
from .inputs import PRESETS, InputError, InputSpec, load_document, parse_input, preset
from .lattice import LatticeError
from .leading_diff import leading_differential
from .lift import LiftError, format_angle, generators
from .serialize import (SCHEMA, augmentation_from_json, chain_map_from_json, generator_to_json,
                        mc_problem_from_json, table_from_json, table_to_json)
from .toric import PolytopeError, disk_potential, monotone_fiber, validate_delzant

OK, FAILED, INPUT_ERROR = 0, 1, 2

COMMANDS = ("validate", "potential", "augpoly", "generators", "leading-diff", "d2check",
            "abelianize", "augcheck", "chaincheck", "mc-residual", "variety-member", "examples")


class Report:
    def __init__(self, command: str):
        self.data = {"schema": SCHEMA, "command": command}
        self.lines: list[str] = []

    def emit(self, as_json: bool, out) -> None:
        if as_json:
            out.write(json.dumps(self.data, sort_keys=True, indent=2) + "\n")
        else:
            out.write("\n".join(self.lines) + ("\n" if self.lines else ""))


def _parse_vector(text: Optional[str]) -> Optional[tuple[int, ...]]:
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _parse_point(text: str) -> list:
    out = []
    for raw in text.split(","):
        raw = raw.strip()
        try:
            out.append(Fraction(raw))
        except (ValueError, ZeroDivisionError):
            try:
                out.append(complex(raw.replace("i", "j")))
            except ValueError:
                raise InputError(f"not a number: {raw!r}") from None
    return out


def _spec(args) -> InputSpec:
    if args.example:
        spec = preset(args.example[0], args.example[1:])
    elif args.inputs and args.inputs[0] in PRESETS:
        spec = preset(args.inputs[0], args.inputs[1:])
    elif args.inputs:
        spec = parse_input(load_document(args.inputs[0]))
    else:
        raise InputError("give a preset name, --example NAME [N], or an input file")
    vertex = _parse_vector(args.vertex) if args.vertex else spec.vertex
    signs = _parse_vector(args.signs) if args.signs else spec.signs
    L = args.max_word_len if args.max_word_len is not None else spec.truncation.max_word_len
    A = Fraction(args.max_area) if args.max_area is not None else spec.truncation.max_area
    return InputSpec(spec.polytope, spec.lift, signs, vertex, Truncation(L, A), spec.name)


def _table(args):
    """A differential table from --fixture, a table JSON file, or a polytope input."""
    if args.fixture:
        if args.fixture not in fixtures.TABLES:
            raise InputError(f"unknown table fixture {args.fixture!r}; known: "
                             f"{', '.join(fixtures.TABLES)}")
        return fixtures.TABLES[args.fixture]()
    if args.inputs and args.inputs[0] not in PRESETS:
        doc = load_document(args.inputs[0])
        if "entries" in doc:
            return table_from_json(doc)
    spec = _spec(args)
    return leading_differential(spec.polytope, spec.lift, spec.signs, spec.vertex, spec.truncation)


# ---------- commands ----------

def cmd_validate(args, rep: Report) -> int:
    try:
        spec = _spec(args)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            vr = validate_delzant(spec.polytope)
            fib = monotone_fiber(spec.polytope)
    except PolytopeError as exc:
        rep.data.update(ok=False, error=type(exc).__name__, message=str(exc))
        rep.lines.append(f"invalid: {type(exc).__name__}: {exc}")
        return FAILED
    idx = spec.lift.index
    rep.data.update(ok=True, dim=vr.dim, vertices=[[str(x) for x in v] for v in vr.vertices],
                    integral=vr.integral, monotone_point=[str(x) for x in fib.point],
                    tau=str(fib.tau), index=None if idx == float("inf") else idx,
                    warnings=[str(w.message) for w in caught])
    rep.lines += [f"Delzant polytope of dimension {vr.dim} with {vr.n_vertices} vertices",
                  f"monotone point ({', '.join(str(x) for x in fib.point)}), tau = {fib.tau}",
                  f"lift: index {idx}, {spec.lift.fiber_points} point(s) per fiber, "
                  f"{len(spec.lift.components)} component(s)"]
    rep.lines += [f"warning: {w.message}" for w in caught]
    return OK


def cmd_potential(args, rep: Report) -> int:
    spec = _spec(args)
    validate_delzant(spec.polytope)
    W = disk_potential(spec.polytope, monotone_fiber(spec.polytope), spec.signs)
    rep.data.update(polynomial=W.format(), terms=W.to_json())
    rep.lines.append(W.format())
    return OK


def cmd_augpoly(args, rep: Report) -> int:
    spec = _spec(args)
    W = augmentation_polynomial(spec.polytope, spec.lift, spec.vertex, spec.signs)
    rep.data.update(polynomial=W.format(), terms=W.poly.to_json(),
                    basis=[list(b) for b in W.basis_used], vertex=list(W.vertex_used),
                    positive=W.positive)
    rep.lines.append(W.format())
    return OK


def cmd_generators(args, rep: Report) -> int:
    spec = _spec(args)
    fib = monotone_fiber(spec.polytope)
    theta = Fraction(args.theta_max) if args.theta_max else None
    gs = generators(spec.lift, fib.tau, theta)
    rows = []
    for g in gs.all():
        d = generator_to_json(g)
        rows.append(d)
        angle = format_angle(g.chord.angle) if g.chord else "-"
        rep.lines.append(f"{g.symbol:<12} {g.kind.value:<9} deg_R={g.deg_R} deg_Z2={g.deg_Z2} "
                         f"angle={angle}")
    rep.data.update(tau=str(fib.tau), integral=gs.integral, generators=rows)
    return OK


def cmd_leading_diff(args, rep: Report) -> int:
    T = _table(args)
    rep.data.update(table=table_to_json(T))
    for g in sorted(T.entries, key=lambda h: h.sort_key()):
        rep.lines.append(f"d({g.symbol}) = {T.entries[g].format()}")
    if T.truncated:
        rep.lines.append("(leading order only; higher terms unknown)")
    return OK


def cmd_d2check(args, rep: Report) -> int:
    T = _table(args)
    r = check_squares_zero(T, Truncation(args.max_word_len,
                                         Fraction(args.max_area) if args.max_area else None)
                           if (args.max_word_len is not None or args.max_area) else None)
    rep.data.update(status=r.status, missing=sorted(g.symbol for g in r.missing),
                    failures=[{"generator": g.symbol, "residual": e.to_json(),
                               "text": e.format()} for g, e in r.failures])
    rep.lines.append(r.status if r.status != "inconclusive" else "inconclusive: table not closed "
                     "(leading order only)")
    rep.lines += [f"missing: {g.symbol}" for g in sorted(r.missing, key=lambda h: h.symbol)]
    rep.lines += [f"d(d({g.symbol})) = {e.format()}" for g, e in r.failures]
    return OK if r.status in ("ok", "inconclusive") else FAILED


def cmd_abelianize(args, rep: Report) -> int:
    T = _table(args)
    out = {}
    for g in sorted(T.entries, key=lambda h: h.sort_key()):
        e = abelianize(T.entries[g])
        if args.degree0:
            e = project_degree0(e)
        out[g.symbol] = e.to_json()
        rep.lines.append(f"d_ab({g.symbol}) = {e.format()}")
    rep.data.update(entries=out, degree0=bool(args.degree0))
    return OK


def _load_pair(args, registry, loader):
    if args.fixture:
        if args.fixture not in registry:
            raise InputError(f"unknown fixture {args.fixture!r}; known: {', '.join(registry)}")
        return registry[args.fixture]()
    if not args.inputs:
        raise InputError("give --fixture NAME or a JSON file")
    return loader(load_document(args.inputs[0]))


def cmd_augcheck(args, rep: Report) -> int:
    def load(doc):
        T = table_from_json(doc["table"])
        return T, augmentation_from_json(doc["augmentation"], T)
    T, eps = _load_pair(args, fixtures.AUGMENTATIONS, load)
    r = check_augmentation(T, eps)
    rep.data.update(ok=r.ok, graded=eps.is_graded(),
                    residuals=[{"generator": g.symbol, "value": v.to_json(), "text": str(v)}
                               for g, v in r.residuals])
    rep.lines.append("ok" if r.ok else "failed")
    rep.lines += [f"eps(d({g.symbol})) = {v}" for g, v in r.residuals]
    return OK if r.ok else FAILED


def cmd_chaincheck(args, rep: Report) -> int:
    def load(doc):
        src = table_from_json(doc["source"])
        tgt = table_from_json(doc["target"]) if "target" in doc else src
        return src, tgt, chain_map_from_json(doc["map"], src, tgt)
    loaded = _load_pair(args, fixtures.CHAIN_MAPS, load)
    if len(loaded) == 2:
        src, phi = loaded
        tgt = src
    else:
        src, tgt, phi = loaded
    r = check_chain_map(phi, src, tgt)
    rep.data.update(ok=r.ok, residuals=[{"generator": g.symbol, "residual": e.to_json(),
                                         "text": e.format()} for g, e in r.residuals])
    rep.lines.append("ok" if r.ok else "failed")
    rep.lines += [f"phi(d({g.symbol})) - d(phi({g.symbol})) = {e.format()}" for g, e in r.residuals]
    return OK if r.ok else FAILED


def cmd_mc_residual(args, rep: Report) -> int:
    if args.fixture:
        if args.fixture not in fixtures.MC_PROBLEMS:
            raise InputError(f"unknown fixture {args.fixture!r}; known: "
                             f"{', '.join(fixtures.MC_PROBLEMS)}")
        problem = fixtures.mc_problem(args.fixture)
    elif args.inputs:
        problem = mc_problem_from_json(load_document(args.inputs[0]))
    else:
        raise InputError("give --fixture NAME or a JSON file")
    parts = mc_contributions(problem)
    res = mc_residual(problem)
    rep.data.update(bounding=res.is_zero(), residual=res.to_json(),
                    contributions={str(d): e.to_json() for d, e in sorted(parts.items())})
    rep.lines.append(f"m(b) = {res.format()}")
    rep.lines.append("b is a bounding chain" if res.is_zero() else "b is not a bounding chain")
    return OK if res.is_zero() else FAILED


def cmd_variety_member(args, rep: Report) -> int:
    spec = _spec(args)
    if not args.point:
        raise InputError("--point is required")
    W = augmentation_polynomial(spec.polytope, spec.lift, spec.vertex, spec.signs)
    pt = _parse_point(args.point)
    if len(pt) != W.poly.nvars:
        raise InputError(f"point needs {W.poly.nvars} coordinates")
    member = variety_member(W, pt, args.tolerance)
    val = W.poly.evaluate(pt if all(isinstance(x, Fraction) for x in pt) else [complex(x) for x in pt])
    rep.data.update(member=member, value=str(val), polynomial=W.format())
    rep.lines.append(f"W({', '.join(str(x) for x in pt)}) = {val}: "
                     f"{'on' if member else 'not on'} the hypersurface")
    return OK if member else FAILED


def cmd_examples(args, rep: Report) -> int:
    if args.inputs or args.example:
        spec = _spec(args)
        doc = spec.to_json()
        rep.data.update(input=doc)
        rep.lines.append(json.dumps(doc, sort_keys=True, indent=2))
        return OK
    rep.data.update(presets=sorted(PRESETS), tables=sorted(fixtures.TABLES),
                    augmentations=sorted(fixtures.AUGMENTATIONS),
                    chain_maps=sorted(fixtures.CHAIN_MAPS), mc=list(fixtures.MC_PROBLEMS))
    rep.lines += ["presets: clifford N, cliffordanti N, hopf N, p1xp1",
                  f"table fixtures: {', '.join(sorted(fixtures.TABLES))}",
                  f"augmentation fixtures: {', '.join(sorted(fixtures.AUGMENTATIONS))}",
                  f"chain map fixtures: {', '.join(sorted(fixtures.CHAIN_MAPS))}",
                  f"mc fixtures: {', '.join(fixtures.MC_PROBLEMS)}"]
    return OK


HANDLERS = {
    "validate": cmd_validate, "potential": cmd_potential, "augpoly": cmd_augpoly,
    "generators": cmd_generators, "leading-diff": cmd_leading_diff, "d2check": cmd_d2check,
    "abelianize": cmd_abelianize, "augcheck": cmd_augcheck, "chaincheck": cmd_chaincheck,
    "mc-residual": cmd_mc_residual, "variety-member": cmd_variety_member,
    "examples": cmd_examples,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toric-lch", description=__doc__)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("inputs", nargs="*", help="preset name and argument, or an input file")
    p.add_argument("--example", nargs="+", metavar="NAME", help="built-in preset, e.g. clifford 3")
    p.add_argument("--fixture", help="built-in table/augmentation/chain-map/MC fixture")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--max-word-len", type=int)
    p.add_argument("--max-area")
    p.add_argument("--vertex", help="capping vertex, e.g. 1,0")
    p.add_argument("--signs", help="one sign per facet, e.g. 1,-1,-1")
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--theta-max", help="largest chord angle in turns (generators)")
    p.add_argument("--point", help="torus point for variety-member, e.g. -1,3/2")
    p.add_argument("--degree0", action="store_true", help="abelianize: keep degree-zero words only")
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    rep = Report(args.command)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            code = HANDLERS[args.command](args, rep)
    except (InputError, LatticeError, LiftError, PolytopeError, AugPolyError, CEError,
            KeyError, ValueError) as exc:
        rep.data.update(ok=False, error=type(exc).__name__, message=str(exc))
        if args.json:
            rep.emit(True, out)
        else:
            sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return INPUT_ERROR
    rep.emit(args.json, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
