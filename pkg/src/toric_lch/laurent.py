"""Sparse multivariate Laurent polynomials with exact rational coefficients."""

from __future__ import annotations

import numbers
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, numbers.Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def term_order_key(exp: Exponent):
    """Graded-lex display order: lower total degree first, then smaller L1 norm
    (so 1 precedes y1*y2^-1), then larger lex first."""
    return (sum(exp), sum(abs(e) for e in exp), tuple(-e for e in exp))


class LaurentPoly:
    """Immutable map from integer exponent vectors to nonzero rationals."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Sequence[int], Scalar]] = None, nvars: Optional[int] = None):
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if nvars is None:
                nvars = len(exp)
            elif len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not have {nvars} entries")
            c = _frac(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        if nvars is None:
            raise ValueError("nvars is required for an empty polynomial")
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    # ---------- constructors ----------

    @classmethod
    def zero(cls, nvars: int) -> LaurentPoly:
        return cls({}, nvars)

    @classmethod
    def constant(cls, c: Scalar, nvars: int) -> LaurentPoly:
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exp: Sequence[int], c: Scalar = 1) -> LaurentPoly:
        return cls({tuple(exp): c}, len(exp))

    @classmethod
    def variable(cls, i: int, nvars: int) -> LaurentPoly:
        return cls.monomial(tuple(int(j == i) for j in range(nvars)))

    # ---------- container protocol ----------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda t: term_order_key(t[0]))

    def exponents(self) -> list[Exponent]:
        return [e for e, _ in self.items()]

    def coefficients(self) -> list[Fraction]:
        return [c for _, c in self.items()]

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # ---------- arithmetic ----------

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return LaurentPoly.constant(_frac(other), self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = _frac(other)
            return LaurentPoly({e: c * v for e, v in self._terms.items()}, self.nvars)
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ZeroDivisionError("only monomials are invertible")
            (e, c), = self._terms.items()
            return LaurentPoly({tuple(x * k for x in e): c ** k}, self.nvars)
        out = LaurentPoly.constant(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, exp: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial x^exp."""
        return LaurentPoly({tuple(a + b for a, b in zip(e, exp)): c
                            for e, c in self._terms.items()}, self.nvars)

    def map_exponents(self, f, nvars: int) -> LaurentPoly:
        """Apply f to every exponent; coefficients of colliding exponents add."""
        out: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            ne = tuple(f(e))
            out[ne] = out.get(ne, Fraction(0)) + c
        return LaurentPoly(out, nvars)

    def linear_change(self, matrix: Sequence[Sequence[int]]) -> LaurentPoly:
        """Exponents e -> matrix @ e (monomial change of variables)."""
        rows = len(matrix)
        return self.map_exponents(
            lambda e: tuple(sum(a * x for a, x in zip(row, e)) for row in matrix), rows)

    def embed(self, positions: Sequence[int], nvars: int) -> LaurentPoly:
        """Re-home variable i at position positions[i] of a larger ring."""
        def f(e):
            out = [0] * nvars
            for i, x in enumerate(e):
                out[positions[i]] += x
            return out
        return self.map_exponents(f, nvars)

    # ---------- evaluation ----------

    def evaluate(self, point: Sequence):
        """Evaluate at a point; exact for rationals, floating for floats/complex."""
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        exact = all(isinstance(x, (int, Fraction)) for x in point)
        pt = [Fraction(x) for x in point] if exact else list(point)
        total = Fraction(0) if exact else 0
        for e, c in self._terms.items():
            term = c if exact else complex(c)
            for x, k in zip(pt, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def substitute(self, values: Sequence[LaurentPoly]) -> LaurentPoly:
        """Replace variable i by values[i] (all in one common ring)."""
        if len(values) != self.nvars:
            raise ValueError("need one value per variable")
        if not values:
            raise ValueError("cannot infer target ring from an empty substitution")
        target = values[0].nvars
        total = LaurentPoly.zero(target)
        for e, c in self._terms.items():
            term = LaurentPoly.constant(c, target)
            for v, k in zip(values, e):
                if k:
                    term = term * (v ** k)
            total = total + term
        return total

    def support_bounds(self) -> Optional[tuple[Exponent, Exponent]]:
        if not self._terms:
            return None
        es = list(self._terms)
        return (tuple(min(e[i] for e in es) for i in range(self.nvars)),
                tuple(max(e[i] for e in es) for i in range(self.nvars)))

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self._terms for x in e)

    # ---------- formatting / serialization ----------

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        pieces = []
        for i, (e, c) in enumerate(self.items()):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if i == 0:
                pieces.append(("-" if sign == "-" else "") + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"LaurentPoly({self.format()!r}, nvars={self.nvars})"

    def __str__(self):
        return self.format()

    def to_json(self) -> list[dict]:
        return [{"coeff": str(c), "exp": list(e)} for e, c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping], nvars: Optional[int] = None) -> LaurentPoly:
        terms: dict[Exponent, Fraction] = {}
        for t in data:
            e = tuple(int(x) for x in t["exp"])
            terms[e] = terms.get(e, Fraction(0)) + Fraction(str(t["coeff"]))
        if not terms and nvars is None:
            raise ValueError("cannot infer variable count of an empty polynomial")
        return cls(terms, nvars)
