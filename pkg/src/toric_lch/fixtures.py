"""Built-in tables, augmentations and chain maps used by the CLI and the tests."""

from __future__ import annotations

from fractions import Fraction

from .augmentation import Augmentation, ChainMap, MCProblem
from .ce_algebra import CEElement, CoefficientRing, DifferentialTable
from .inputs import clifford, hopf
from .laurent import LaurentPoly
from .leading_diff import leading_differential, t2_classical_table
from .lift import Generator

QQ = CoefficientRing(())
HOPF_SIGNS = (1, -1, -1)


def _gens(*pairs):
    return [Generator.abstract(s, d) for s, d in pairs]


def synthetic_closed() -> DifferentialTable:
    """delta a = b c, delta b = delta c = 0."""
    a, b, c = _gens(("a", 1), ("b", 0), ("c", 0))
    z = CEElement.zero(QQ)
    return DifferentialTable(QQ, (a, b, c), {a: CEElement.word(QQ, (b, c)), b: z, c: z})


def synthetic_cancel(flip: bool = False) -> DifferentialTable:
    """delta x = a - a', delta a = delta a' = b c; flipping the sign of
    delta a' leaves delta^2 x = 2 b c."""
    x, a, a2, b, c = _gens(("x", 2), ("a", 1), ("a'", 1), ("b", 0), ("c", 0))
    z = CEElement.zero(QQ)
    bc = CEElement.word(QQ, (b, c))
    return DifferentialTable(QQ, (x, a, a2, b, c), {
        x: CEElement.gen(QQ, a) - CEElement.gen(QQ, a2),
        a: bc, a2: -bc if flip else bc, b: z, c: z})


def synthetic_bad() -> DifferentialTable:
    """delta a = b, delta b = b: delta^2 a = b."""
    a, b = _gens(("a", 1), ("b", 0))
    return DifferentialTable(QQ, (a, b), {a: CEElement.gen(QQ, b), b: CEElement.gen(QQ, b)})


def torus_morse() -> DifferentialTable:
    """Perfect Morse complex of one two-torus component: every entry 0."""
    T = t2_classical_table()
    return DifferentialTable(T.ring, T.generators,
                             {g: CEElement.zero(T.ring) for g in T.generators})


TABLES = {
    "synthetic-closed": synthetic_closed,
    "synthetic-cancel": synthetic_cancel,
    "synthetic-mutated": lambda: synthetic_cancel(flip=True),
    "synthetic-bad": synthetic_bad,
    "torus-morse": torus_morse,
    "t2": t2_classical_table,
    "t2-units": lambda: t2_classical_table(unit_terms=True),
}


# ---------- augmentations ----------

def cp1_table() -> DifferentialTable:
    spec = clifford(2)
    return leading_differential(spec.polytope, spec.lift, vertex=spec.vertex)


def cp1_augmentation(y: Fraction = Fraction(-1)) -> tuple[DifferentialTable, Augmentation]:
    """delta a = 1 + y1, with y1 sent to `y` and every generator to 0."""
    T = cp1_table()
    eps = Augmentation(T.ring, QQ, {g: 0 for g in T.generators}, (LaurentPoly.constant(y, 0),))
    return T, eps


def hopf_table(n: int = 3) -> DifferentialTable:
    spec = hopf(n)
    return leading_differential(spec.polytope, spec.lift, signs=HOPF_SIGNS, vertex=spec.vertex)


def hopf_augmentation() -> tuple[DifferentialTable, Augmentation]:
    """Hopf link, n = 3, in the (+, -, -) convention where
    delta a11 = 1 - y1_1 - y2_1 + a12 a21.  Direction one gets 2 and direction
    two gets 3 on both components, so the cross terms (1 - y_k1/y_k2) vanish
    and eps(a12) eps(a21) = 2 + 3 - 1 = 4."""
    T = hopf_table(3)
    by = T.by_symbol()
    values = {g: 0 for g in T.generators}
    values[by["a12"]] = 1
    values[by["a21"]] = 4
    var = {"y1_1": 2, "y2_1": 3, "y1_2": 2, "y2_2": 3}
    variables = tuple(LaurentPoly.constant(var[v], 0) for v in T.ring.variables)
    return T, Augmentation(T.ring, QQ, values, variables)


AUGMENTATIONS = {
    "cp1": cp1_augmentation,
    "cp1-zero": lambda: cp1_augmentation(Fraction(0)),
    "hopf3": hopf_augmentation,
}


# ---------- chain maps ----------

def scaling_maps() -> tuple[DifferentialTable, ChainMap, ChainMap]:
    """Two automorphisms of synthetic-closed: (a, b, c) -> (2a, 2b, c) and (3a, b, 3c)."""
    T = synthetic_closed()
    a, b, c = T.generators

    def m(sa, sb, sc):
        return ChainMap(QQ, QQ, {a: CEElement.gen(QQ, a, sa), b: CEElement.gen(QQ, b, sb),
                                 c: CEElement.gen(QQ, c, sc)})
    return T, m(2, 2, 1), m(3, 1, 3)


def clifford3_swap() -> tuple[DifferentialTable, ChainMap]:
    """Exchange the two directions of the Clifford lift of CP^2: W is symmetric."""
    spec = clifford(3)
    T = leading_differential(spec.polytope, spec.lift, vertex=spec.vertex)
    by = T.by_symbol()
    swap = {"c_1.1": "c_1.2", "c_1.2": "c_1.1", "c11.1": "c11.2", "c11.2": "c11.1"}
    images = {g: CEElement.gen(T.ring, by[swap.get(g.symbol, g.symbol)]) for g in T.generators}
    y1, y2 = (LaurentPoly.variable(i, 2) for i in range(2))
    return T, ChainMap(T.ring, T.ring, images, (y2, y1))


CHAIN_MAPS = {
    "identity": lambda: (synthetic_closed(), ChainMap.identity(synthetic_closed())),
    "scale": lambda: (lambda t: (t[0], t[1].then(t[2])))(scaling_maps()),
    "clifford3-swap": clifford3_swap,
    "zero": lambda: (cp1_table(), ChainMap.zero(cp1_table(), cp1_table())),
}


# ---------- Maurer-Cartan problems ----------

def mc_problem(kind: str) -> MCProblem:
    """'zero': all m_d = 0; 'linear': m_0 = x0, m_1(g) = -x0, b = g; 'curved': m_0 = x0, b = 0."""
    x0, g = _gens(("x0", 0), ("g", 0))
    one_x0 = CEElement.gen(QQ, x0)
    if kind == "zero":
        return MCProblem({0: {}, 1: {}, 2: {}}, CEElement.gen(QQ, g))
    if kind == "linear":
        return MCProblem({0: {(): one_x0}, 1: {(g,): -one_x0}}, CEElement.gen(QQ, g))
    if kind == "curved":
        return MCProblem({0: {(): one_x0}}, CEElement.zero(QQ))
    raise KeyError(kind)


MC_PROBLEMS = ("zero", "linear", "curved")
