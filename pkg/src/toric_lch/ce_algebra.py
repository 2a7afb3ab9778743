"""The free graded algebra on chord and Morse generators over a truncated group ring.

Elements are finite sums of words (tuples of generators) with Laurent
polynomial coefficients.  Coefficients are constants for the differential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .laurent import LaurentPoly
from .lift import Generator, Kind, word_degree

Word = tuple[Generator, ...]


class CEError(ValueError):
    pass


class TruncationMismatch(CEError):
    pass


class MissingGenerator(CEError):
    def __init__(self, generator):
        self.generator = generator
        super().__init__(f"no differential given for generator {generator}")


@dataclass(frozen=True)
class Truncation:
    """Words longer than max_word_len and coefficient monomials of area above
    max_area are discarded.  None means no bound."""
    max_word_len: Optional[int] = None
    max_area: Optional[Fraction] = None

    def __post_init__(self):
        if self.max_area is not None:
            object.__setattr__(self, "max_area", Fraction(self.max_area))

    def refines(self, other: Truncation) -> bool:
        """True when every term kept by self is kept by other."""
        def le(a, b):
            return b is None or (a is not None and a <= b)
        return le(self.max_word_len, other.max_word_len) and le(self.max_area, other.max_area)


NO_TRUNCATION = Truncation()


@dataclass(frozen=True)
class CoefficientRing:
    """Laurent polynomials in named variables, graded by a linear area functional."""
    variables: tuple[str, ...]
    areas: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        areas = tuple(Fraction(a) for a in self.areas) or (Fraction(0),) * len(self.variables)
        if len(areas) != len(self.variables):
            raise CEError("one area per variable is required")
        object.__setattr__(self, "areas", areas)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def one(self) -> LaurentPoly:
        return LaurentPoly.constant(1, self.nvars)

    def zero(self) -> LaurentPoly:
        return LaurentPoly.zero(self.nvars)

    def const(self, c) -> LaurentPoly:
        return LaurentPoly.constant(c, self.nvars)

    def var(self, name: str) -> LaurentPoly:
        return LaurentPoly.variable(self.variables.index(name), self.nvars)

    def area(self, exp: Sequence[int]) -> Fraction:
        return sum((a * e for a, e in zip(self.areas, exp)), Fraction(0))

    def truncate(self, poly: LaurentPoly, max_area) -> LaurentPoly:
        if max_area is None:
            return poly
        return LaurentPoly({e: c for e, c in poly.terms.items() if self.area(e) <= max_area},
                           self.nvars)

    def coerce(self, c) -> LaurentPoly:
        if isinstance(c, LaurentPoly):
            if c.nvars != self.nvars:
                raise CEError(f"coefficient has {c.nvars} variables, ring has {self.nvars}")
            return c
        return self.const(c)

    def homology(self) -> CoefficientRing:
        """The same ring with y-variables read as pure classes [mu]."""
        return CoefficientRing(tuple(f"[{v}]" for v in self.variables), self.areas)

    def format(self, poly: LaurentPoly) -> str:
        return poly.format(self.variables)

    def to_json(self) -> dict:
        return {"variables": list(self.variables), "areas": [str(a) for a in self.areas]}

    @classmethod
    def from_json(cls, data: Mapping) -> CoefficientRing:
        return cls(tuple(data["variables"]), tuple(Fraction(str(a)) for a in data.get("areas", ())))


def word_key(word: Word):
    return (len(word), tuple(g.symbol for g in word))


def format_word(word: Word) -> str:
    return "*".join(g.symbol for g in word) if word else "1"


class CEElement:
    """Finite sum of words with coefficients in a CoefficientRing."""

    __slots__ = ("ring", "truncation", "_terms")

    def __init__(self, ring: CoefficientRing, terms: Optional[Mapping[Word, object]] = None,
                 truncation: Truncation = NO_TRUNCATION):
        self.ring = ring
        self.truncation = truncation
        clean: dict[Word, LaurentPoly] = {}
        L, A = truncation.max_word_len, truncation.max_area
        for word, c in (terms or {}).items():
            word = tuple(word)
            if L is not None and len(word) > L:
                continue
            c = ring.truncate(ring.coerce(c), A)
            if word in clean:
                c = clean[word] + c
            if c.is_zero():
                clean.pop(word, None)
            else:
                clean[word] = c
        self._terms = clean

    # ---------- constructors ----------

    @classmethod
    def zero(cls, ring, truncation=NO_TRUNCATION) -> CEElement:
        return cls(ring, {}, truncation)

    @classmethod
    def unit(cls, ring, truncation=NO_TRUNCATION) -> CEElement:
        return cls(ring, {(): ring.one()}, truncation)

    @classmethod
    def scalar(cls, ring, c, truncation=NO_TRUNCATION) -> CEElement:
        return cls(ring, {(): ring.coerce(c)}, truncation)

    @classmethod
    def gen(cls, ring, g: Generator, c=1, truncation=NO_TRUNCATION) -> CEElement:
        return cls(ring, {(g,): ring.coerce(c)}, truncation)

    @classmethod
    def word(cls, ring, letters: Iterable[Generator], c=1, truncation=NO_TRUNCATION) -> CEElement:
        return cls(ring, {tuple(letters): ring.coerce(c)}, truncation)

    def with_truncation(self, truncation: Truncation) -> CEElement:
        return CEElement(self.ring, self._terms, truncation)

    # ---------- access ----------

    @property
    def terms(self) -> dict[Word, LaurentPoly]:
        return dict(self._terms)

    def items(self) -> list[tuple[Word, LaurentPoly]]:
        return sorted(self._terms.items(), key=lambda t: word_key(t[0]))

    def words(self) -> list[Word]:
        return [w for w, _ in self.items()]

    def coefficient(self, word: Iterable[Generator]) -> LaurentPoly:
        return self._terms.get(tuple(word), self.ring.zero())

    def letters(self) -> set[Generator]:
        return {g for w in self._terms for g in w}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degrees(self) -> set[Fraction]:
        return {word_degree(w) for w in self._terms}

    def __eq__(self, other):
        if isinstance(other, CEElement):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return NotImplemented

    __hash__ = None

    # ---------- arithmetic ----------

    def _check(self, other: CEElement):
        if self.ring != other.ring:
            raise CEError("elements live over different coefficient rings")
        if self.truncation != other.truncation:
            raise TruncationMismatch(f"{self.truncation} vs {other.truncation}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = CEElement.scalar(self.ring, other, self.truncation)
        self._check(other)
        terms = dict(self._terms)
        for w, c in other._terms.items():
            terms[w] = terms[w] + c if w in terms else c
        return CEElement(self.ring, terms, self.truncation)

    __radd__ = __add__

    def __neg__(self):
        return CEElement(self.ring, {w: -c for w, c in self._terms.items()}, self.truncation)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> CEElement:
        c = self.ring.coerce(c)
        return CEElement(self.ring, {w: c * v for w, v in self._terms.items()}, self.truncation)

    def __mul__(self, other):
        if isinstance(other, CEElement):
            return product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    # ---------- display / serialization ----------

    def format(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for w, c in self.items():
            coeff = self.ring.format(c)
            if not w:
                body = coeff
            elif c == 1:
                body = format_word(w)
            elif c == -1:
                body = "-" + format_word(w)
            elif len(c) == 1:
                body = f"{coeff}*{format_word(w)}"
            else:
                body = f"({coeff})*{format_word(w)}"
            pieces.append(body)
        out = pieces[0]
        for p in pieces[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"CEElement({self.format()!r})"

    def __str__(self):
        return self.format()

    def to_json(self) -> list[dict]:
        return [{"word": [g.symbol for g in w], "coeff": c.to_json()} for w, c in self.items()]

    @classmethod
    def from_json(cls, data, ring: CoefficientRing, gens: Mapping[str, Generator],
                  truncation: Truncation = NO_TRUNCATION) -> CEElement:
        terms: dict[Word, LaurentPoly] = {}
        for t in data:
            try:
                word = tuple(gens[s] for s in t["word"])
            except KeyError as exc:
                raise CEError(f"unknown generator {exc.args[0]!r}") from None
            c = LaurentPoly.from_json(t["coeff"], ring.nvars)
            terms[word] = terms[word] + c if word in terms else c
        return cls(ring, terms, truncation)


def product(a: CEElement, b: CEElement) -> CEElement:
    """Concatenation product, bilinear over the coefficient ring."""
    a._check(b)
    terms: dict[Word, LaurentPoly] = {}
    L = a.truncation.max_word_len
    for w1, c1 in a._terms.items():
        for w2, c2 in b._terms.items():
            if L is not None and len(w1) + len(w2) > L:
                continue
            w = w1 + w2
            c = c1 * c2
            terms[w] = terms[w] + c if w in terms else c
    return CEElement(a.ring, terms, a.truncation)


# ---------- differentials ----------

@dataclass(frozen=True, eq=False)
class DifferentialTable:
    """delta on generators; extended to words by the graded Leibniz rule.

    `truncated` marks a leading-order table whose omitted terms are unknown
    rather than zero.
    """
    ring: CoefficientRing
    generators: tuple[Generator, ...]
    entries: Mapping[Generator, CEElement]
    truncation: Truncation = NO_TRUNCATION
    truncated: bool = False
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        entries = {}
        for g, e in self.entries.items():
            if e.ring != self.ring:
                raise CEError(f"entry for {g} lives over a different ring")
            entries[g] = e.with_truncation(self.truncation)
        object.__setattr__(self, "entries", entries)
        known = set(self.generators)
        for g in entries:
            if g not in known:
                raise CEError(f"entry for {g} which is not a generator of the algebra")

    def __getitem__(self, g: Generator) -> CEElement:
        return self.entries[g]

    def __contains__(self, g) -> bool:
        return g in self.entries

    def by_symbol(self) -> dict[str, Generator]:
        return {g.symbol: g for g in self.generators}

    def gen(self, symbol: str) -> CEElement:
        return CEElement.gen(self.ring, self.by_symbol()[symbol], truncation=self.truncation)

    def element(self, terms: Mapping[Word, object]) -> CEElement:
        return CEElement(self.ring, terms, self.truncation)

    def missing(self) -> set[Generator]:
        """Letters appearing in entries that have no entry themselves."""
        seen = set()
        for e in self.entries.values():
            seen |= e.letters()
        return {g for g in seen if g not in self.entries}

    def is_closed(self) -> bool:
        return not self.missing()

    def degree_check(self) -> list[tuple[Generator, Fraction]]:
        """(generator, offending word degree) for every entry term not of degree deg - 1."""
        bad = []
        for g, e in self.entries.items():
            for d in sorted(e.degrees()):
                if d != g.deg_R - 1:
                    bad.append((g, d))
        return bad

    def classical_sector_violations(self) -> list[Generator]:
        """Classical generators whose differential contains a Reeb letter."""
        return [g for g, e in self.entries.items()
                if g.kind == Kind.CLASSICAL and any(h.kind == Kind.REEB for h in e.letters())]

    def with_entries(self, entries: Mapping[Generator, CEElement]) -> DifferentialTable:
        merged = dict(self.entries)
        merged.update(entries)
        return DifferentialTable(self.ring, self.generators, merged, self.truncation,
                                 self.truncated, self.notes)


def derive(table: DifferentialTable, x: CEElement) -> CEElement:
    """Apply the derivation extending `table` with Koszul signs from deg_Z2."""
    if x.ring != table.ring:
        raise CEError("element and table live over different rings")
    terms: dict[Word, LaurentPoly] = {}
    for word, c in x.terms.items():
        sign = 1
        for i, g in enumerate(word):
            if g not in table.entries:
                raise MissingGenerator(g)
            for w2, c2 in table.entries[g].terms.items():
                new = word[:i] + w2 + word[i + 1:]
                v = c * c2 * sign
                terms[new] = terms[new] + v if new in terms else v
            if g.deg_Z2:
                sign = -sign
    return CEElement(x.ring, terms, x.truncation)


@dataclass(frozen=True)
class SquaresReport:
    status: str  # "ok", "failed", "missing" or "inconclusive"
    failures: tuple[tuple[Generator, CEElement], ...] = ()
    missing: frozenset = frozenset()

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def check_squares_zero(table: DifferentialTable,
                       truncation: Optional[Truncation] = None) -> SquaresReport:
    """delta(delta(g)) for every generator with an entry, compared to zero
    after truncating the residual to `truncation` (default: the table's).

    Tables marked truncated never report ok or failed: their omitted terms
    are unknown, so the status is inconclusive and residuals are informative.
    """
    truncation = truncation or table.truncation
    missing = frozenset(table.missing())
    if missing:
        return SquaresReport("inconclusive" if table.truncated else "missing", (), missing)
    failures = []
    for g in sorted(table.entries, key=lambda h: h.symbol):
        residual = derive(table, table.entries[g]).with_truncation(truncation)
        if not residual.is_zero():
            failures.append((g, residual))
    if table.truncated:
        return SquaresReport("inconclusive", tuple(failures))
    return SquaresReport("failed" if failures else "ok", tuple(failures))


# ---------- abelianization and projections ----------

def koszul_sort(word: Word) -> tuple[int, Word]:
    """Sort letters into canonical order; return (sign, sorted word).

    Sign 0 means the word vanishes (an odd letter repeated)."""
    letters = list(word)
    sign = 1
    # insertion sort, tracking adjacent transpositions
    for i in range(1, len(letters)):
        j = i
        while j > 0 and letters[j].sort_key() < letters[j - 1].sort_key():
            if letters[j].deg_Z2 and letters[j - 1].deg_Z2:
                sign = -sign
            letters[j], letters[j - 1] = letters[j - 1], letters[j]
            j -= 1
    for a, b in zip(letters, letters[1:]):
        if a == b and a.deg_Z2:
            return 0, tuple(letters)
    return sign, tuple(letters)


def abelianize(x: CEElement) -> CEElement:
    """Identify words up to graded-commutative reordering (parity deg_Z2)."""
    terms: dict[Word, LaurentPoly] = {}
    for w, c in x.terms.items():
        sign, sw = koszul_sort(w)
        if not sign:
            continue
        v = c * sign
        terms[sw] = terms[sw] + v if sw in terms else v
    return CEElement(x.ring, terms, x.truncation)


def ab_product(a: CEElement, b: CEElement) -> CEElement:
    """Graded-commutative product of abelianized elements."""
    return abelianize(product(a, b))


def project_degree0(x: CEElement) -> CEElement:
    """Keep only words whose letters all have real degree zero."""
    return CEElement(x.ring, {w: c for w, c in x.terms.items()
                              if all(g.deg_R == 0 for g in w)}, x.truncation)


def exp_substitute(x: CEElement, assignments: Mapping[int, Generator],
                   truncation: Optional[Truncation] = None) -> CEElement:
    """Expand y_i = [mu_i] exp(c_i) into words.

    Each monomial y^e becomes [mu]^e times the product over assigned
    variables (in index order) of sum_d (e_i c_i)^d / d!, placed in front of
    the existing word.  Repeated letters from one exponential sit adjacent.
    Words are cut at the truncation's word length, which must be finite when
    any assignment is made.
    """
    truncation = truncation or x.truncation
    if not assignments:
        return x.with_truncation(truncation)
    L = truncation.max_word_len
    if L is None:
        raise CEError("exp substitution needs a finite max_word_len")
    for i, g in assignments.items():
        if g.deg_R != 0:
            raise CEError(f"divisor generator {g} must have real degree 0")
    ring = x.ring.homology()
    order = sorted(assignments)
    terms: dict[Word, LaurentPoly] = {}
    for word, coeff in x.terms.items():
        room = L - len(word)
        if room < 0:
            continue
        for e, c in coeff.terms.items():
            # blocks: list of (prefix word, weight)
            blocks: list[tuple[Word, Fraction]] = [((), Fraction(1))]
            for i in order:
                k = e[i]
                if k == 0:
                    continue
                g = assignments[i]
                nxt = []
                for pre, wt in blocks:
                    for d in range(room - len(pre) + 1):
                        nxt.append((pre + (g,) * d, wt * Fraction(k) ** d / math.factorial(d)))
                blocks = nxt
            mono = LaurentPoly.monomial(e, c)
            for pre, wt in blocks:
                new = pre + word
                v = mono * wt
                terms[new] = terms[new] + v if new in terms else v
    return CEElement(ring, terms, truncation)


def substitute_letters(x: CEElement, images: Mapping[Generator, CEElement],
                       coeff_images: Optional[Sequence[LaurentPoly]] = None,
                       target_ring: Optional[CoefficientRing] = None,
                       truncation: Optional[Truncation] = None) -> CEElement:
    """Apply the unital algebra map sending g -> images[g] and y_i -> coeff_images[i].

    Letters without an image are a MissingGenerator error.
    """
    target_ring = target_ring or x.ring
    truncation = truncation or x.truncation
    total = CEElement.zero(target_ring, truncation)
    for word, c in x.items():
        if coeff_images is not None:
            c = c.substitute(list(coeff_images)) if c.nvars else target_ring.const(c.constant_term())
        term = CEElement.scalar(target_ring, target_ring.coerce(c), truncation)
        for g in word:
            if g not in images:
                raise MissingGenerator(g)
            term = product(term, images[g].with_truncation(truncation))
        total = total + term
    return total
