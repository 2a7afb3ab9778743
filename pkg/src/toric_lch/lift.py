"""Legendrian lifts of toric moment fibers: chords, generators and gradings.

Angles are exact rationals measured in full turns, so an angle of 1/3
means 2*pi/3.
"""

from __future__ import annotations

import enum
import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .lattice import Sublattice, sublattice_index


class LiftError(ValueError):
    pass


class NonIntegralGrading(UserWarning):
    pass


@dataclass(frozen=True)
class Component:
    label: str
    phase: Fraction

    def __post_init__(self):
        object.__setattr__(self, "label", str(self.label))
        object.__setattr__(self, "phase", Fraction(self.phase))


@dataclass(frozen=True)
class LiftSpec:
    pi1_image: Sublattice
    components: tuple[Component, ...]
    fiber_points: int
    # length of one full fiber circle in chord-angle turns, where a Maslov-two
    # disk has area 1/tau: 1 for the sphere bundle, 1/tau for the anticanonical one
    bundle_scale: Fraction = Fraction(1)

    def __post_init__(self):
        comps = tuple(c if isinstance(c, Component) else Component(*c) for c in self.components)
        object.__setattr__(self, "components", comps)
        m = int(self.fiber_points)
        object.__setattr__(self, "fiber_points", m)
        object.__setattr__(self, "bundle_scale", Fraction(self.bundle_scale))
        if self.bundle_scale <= 0:
            raise LiftError("bundle_scale must be positive")
        if m <= 0:
            raise LiftError("fiber_points must be a positive integer")
        if not comps:
            raise LiftError("a lift needs at least one component")
        labels = [c.label for c in comps]
        if len(set(labels)) != len(labels):
            raise LiftError(f"component labels must be distinct: {labels}")
        for c in comps:
            if not 0 <= c.phase < Fraction(1, m):
                raise LiftError(f"phase of component {c.label} must lie in [0, 1/{m})")

    @property
    def quantum(self) -> Fraction:
        """Angle between consecutive sheets over one fiber point."""
        return self.bundle_scale / self.fiber_points

    def gap(self, source: str, target: str) -> Fraction:
        """Smallest positive chord angle from one component to another."""
        q = self.quantum
        g = ((self.component(target).phase - self.component(source).phase) * self.bundle_scale) % q
        return g if g else q

    @property
    def rank(self) -> int:
        return self.pi1_image.ambient.rank

    def component(self, label: str) -> Component:
        for c in self.components:
            if c.label == label:
                return c
        raise KeyError(label)

    def phase_offsets(self) -> list[Fraction]:
        """Residues mod 1/m realized by chords between some pair of components."""
        q = self.quantum
        return sorted({self.gap(a.label, b.label) % q
                       for a in self.components for b in self.components})

    @property
    def index(self):
        return sublattice_index(self.pi1_image)


@dataclass(frozen=True, order=True)
class ReebChordComponent:
    """A Bott family of Reeb chords from one sheet to another (angle in turns)."""
    angle: Fraction
    source: str
    target: str

    def __post_init__(self):
        object.__setattr__(self, "angle", Fraction(self.angle))
        if self.angle <= 0:
            raise LiftError("Reeb chord angles are positive")

    @property
    def tag(self) -> str:
        return f"{self.source}{self.target}"

    def angle_str(self) -> str:
        return format_angle(self.angle)


def format_angle(turns: Fraction) -> str:
    """Render an angle in turns as a multiple of pi, e.g. 1/3 -> '2pi/3'."""
    x = 2 * Fraction(turns)
    num = "pi" if x.numerator == 1 else f"{x.numerator}pi"
    return num if x.denominator == 1 else f"{num}/{x.denominator}"


def enumerate_chords(spec: LiftSpec, theta_max) -> list[ReebChordComponent]:
    """All chord families with 0 < angle <= theta_max, sorted by angle."""
    theta_max = Fraction(theta_max)
    if theta_max <= 0:
        raise LiftError("theta_max must be positive")
    q = spec.quantum
    out = []
    for a in spec.components:
        for b in spec.components:
            theta = spec.gap(a.label, b.label)
            while theta <= theta_max:
                out.append(ReebChordComponent(theta, a.label, b.label))
                theta += q
    order = {c.label: i for i, c in enumerate(spec.components)}
    return sorted(out, key=lambda c: (c.angle, order[c.source], order[c.target]))


def reverse_chord(spec: LiftSpec, chord: ReebChordComponent) -> ReebChordComponent:
    """The chord with swapped endpoints and complementary phase gap."""
    return ReebChordComponent(spec.gap(chord.target, chord.source), chord.target, chord.source)


# ---------- generators and gradings ----------

class Kind(str, enum.Enum):
    REEB = "reeb"
    CLASSICAL = "classical"


def grading(kind: Kind, morse_index: int, tau, angle: Optional[Fraction] = None,
            warn: bool = True) -> tuple[Fraction, int]:
    """(deg_R, deg_Z2) of a generator.

    Reeb: ind + tau*theta/pi - 1 with theta = 2*pi*angle.  Classical: ind - 1.
    deg_Z2 is deg_R mod 2 when deg_R is an integer; otherwise the Reeb
    fallback ind + 1 mod 2 is used and a NonIntegralGrading warning is issued.
    """
    tau = Fraction(tau)
    if kind == Kind.REEB:
        if angle is None:
            raise LiftError("Reeb generators need a chord angle")
        deg = morse_index + 2 * tau * Fraction(angle) - 1
        if deg.denominator != 1:
            if warn:
                warnings.warn(f"real grading {deg} is not an integer", NonIntegralGrading,
                              stacklevel=2)
            return deg, (morse_index + 1) % 2
        return deg, int(deg) % 2
    deg = Fraction(morse_index - 1)
    return deg, int(deg) % 2


@dataclass(frozen=True)
class Generator:
    symbol: str
    kind: Kind
    deg_R: Fraction
    deg_Z2: int
    morse_index: int = 0
    chord: Optional[ReebChordComponent] = None
    component: Optional[str] = None
    directions: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "deg_R", Fraction(self.deg_R))
        object.__setattr__(self, "deg_Z2", int(self.deg_Z2) % 2)

    def __repr__(self):
        return self.symbol

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.kind != Kind.CLASSICAL, self.symbol)

    @property
    def is_reeb(self) -> bool:
        return self.kind == Kind.REEB

    @classmethod
    def abstract(cls, symbol: str, deg_R=0, kind: Kind = Kind.REEB, deg_Z2=None) -> Generator:
        """A free generator with only a name and degree (for synthetic tables)."""
        deg_R = Fraction(deg_R)
        if deg_Z2 is None:
            deg_Z2 = int(deg_R) % 2 if deg_R.denominator == 1 else 0
        return cls(symbol, kind, deg_R, deg_Z2)


def _letter(index: int, dim: int) -> str:
    if index == 0:
        return "a"
    if index == dim and dim >= 2:
        return "b"
    if index == 1:
        return "c"
    return "e"


def _dirs_suffix(dirs: tuple[int, ...], dim: int) -> str:
    if not dirs or (len(dirs) == dim and dim >= 2):
        return ""
    return "." + ",".join(str(d) for d in dirs)


def chord_generators(chord: ReebChordComponent, dim: int, tau, winding: int = 1,
                     warn: bool = True) -> list[Generator]:
    """Critical points of the perfect Morse function on a T^dim chord family.

    Critical points are subsets of the circle directions; the Morse index
    is the subset size.
    """
    tag = chord.tag + (f"^{winding}" if winding > 1 else "")
    gens = []
    for k in range(dim + 1):
        for dirs in itertools.combinations(range(1, dim + 1), k):
            deg, z2 = grading(Kind.REEB, k, tau, chord.angle, warn=warn)
            sym = _letter(k, dim) + tag + _dirs_suffix(dirs, dim)
            gens.append(Generator(sym, Kind.REEB, deg, z2, k, chord, chord.source, dirs))
    return gens


def classical_generators(label: str, dim: int) -> list[Generator]:
    """Critical points of the perfect Morse function on one T^dim component."""
    gens = []
    for k in range(dim + 1):
        for dirs in itertools.combinations(range(1, dim + 1), k):
            deg, z2 = grading(Kind.CLASSICAL, k, 0)
            sym = _letter(k, dim) + "_" + label + _dirs_suffix(dirs, dim)
            gens.append(Generator(sym, Kind.CLASSICAL, deg, z2, k, None, label, dirs))
    return gens


@dataclass(frozen=True)
class GeneratorSet:
    classical: tuple[Generator, ...]
    reeb: tuple[Generator, ...]
    integral: bool = field(default=True)

    def all(self) -> list[Generator]:
        return list(self.classical) + list(self.reeb)

    def by_symbol(self) -> dict[str, Generator]:
        return {g.symbol: g for g in self.all()}

    def __getitem__(self, symbol: str) -> Generator:
        return self.by_symbol()[symbol]


def generators(spec: LiftSpec, tau, theta_max=None) -> GeneratorSet:
    """Classical generators of every component plus Reeb generators of every
    chord family with angle <= theta_max (default 1/tau, the Maslov-two angle)."""
    tau = Fraction(tau)
    if theta_max is None:
        theta_max = 1 / tau
    dim = spec.rank
    classical = []
    for c in spec.components:
        classical.extend(classical_generators(c.label, dim))
    reeb = []
    integral = True
    seen: dict[tuple[str, str], int] = {}
    for chord in enumerate_chords(spec, theta_max):
        key = (chord.source, chord.target)
        seen[key] = seen.get(key, 0) + 1
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            gens = chord_generators(chord, dim, tau, seen[key])
        if caught:
            integral = False
        reeb.extend(gens)
    return GeneratorSet(tuple(classical), tuple(reeb), integral)


def word_degree(word: Iterable[Generator]) -> Fraction:
    return sum((g.deg_R for g in word), Fraction(0))


# ---------- angle bookkeeping for lifted disks ----------

def angle_solutions(area, tau, n_in: int, n_out: int, quantum,
                    offsets: Sequence = (0,), theta_max=None) -> list[tuple[Fraction, ...]]:
    """All angle tuples (in..., out...) of a lift of a disk of the given area.

    Each angle is positive, lies in offset + quantum*Z for one of `offsets`,
    and is at most theta_max (default: the larger of 1/tau and area).  The
    tuples satisfy sum(in) - sum(out) == area, with area measured so that a
    Maslov-two disk of a monotone fiber has area 1/tau.
    """
    area, tau, quantum = Fraction(area), Fraction(tau), Fraction(quantum)
    if theta_max is None:
        theta_max = max(1 / tau, area)
    theta_max = Fraction(theta_max)
    allowed = set()
    for off in offsets:
        base = Fraction(off) % quantum
        theta = base if base else quantum
        while theta <= theta_max:
            allowed.add(theta)
            theta += quantum
    allowed = sorted(allowed)
    out = []
    for ins in itertools.product(allowed, repeat=n_in):
        target = sum(ins, Fraction(0)) - area
        for outs in itertools.product(allowed, repeat=n_out):
            if sum(outs, Fraction(0)) == target:
                out.append(ins + outs)
    return sorted(out)
