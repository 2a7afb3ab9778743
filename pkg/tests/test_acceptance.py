"""Acceptance criteria, one test each; every test prints a PASS or FAIL line.

Run with `pytest tests/test_acceptance.py -s` to see the lines.
"""

import contextlib
import io
import itertools
import json
import math
import random
import time
from fractions import Fraction

from toric_lch.augmentation import (ChainMap, Matching, check_augmentation, check_chain_map,
                                    compose_matching)
from toric_lch.augpoly import augmentation_polynomial, variety_member
from toric_lch.ce_algebra import (CEElement, CoefficientRing, DifferentialTable, Truncation,
                                  abelianize, check_squares_zero, derive, exp_substitute)
from toric_lch.cli import main
from toric_lch.fixtures import (cp1_augmentation, cp1_table, hopf_augmentation, scaling_maps,
                                synthetic_cancel, synthetic_closed, torus_morse)
from toric_lch.inputs import p1xp1
from toric_lch.laurent import LaurentPoly
from toric_lch.lattice import (IntegerLattice, Sublattice, member_preimage, smith_normal_form,
                               sublattice_index)
from toric_lch.leading_diff import t2_classical_table
from toric_lch.lift import Generator, Kind, angle_solutions

F = Fraction


@contextlib.contextmanager
def criterion(number, description):
    try:
        yield
    except Exception as exc:
        print(f"FAIL criterion {number}: {description} ({type(exc).__name__}: {exc})")
        raise
    print(f"PASS criterion {number}: {description}")


def cli(*argv):
    out = io.StringIO()
    start = time.perf_counter()
    code = main(list(argv), out=out)
    return code, out.getvalue(), time.perf_counter() - start


def test_criterion_01_clifford_augpoly():
    with criterion(1, "augpoly clifford n = 2..5 exact, each under 1 s"):
        for n in range(2, 6):
            code, out, secs = cli("augpoly", "clifford", str(n))
            golden = " + ".join(["1"] + [f"y{k}" for k in range(1, n)])
            assert code == 0 and out.strip() == golden, (n, out)
            assert secs < 1, (n, secs)
        code, out, _ = cli("augpoly", "clifford", "3", "--signs", "1,-1,-1")
        assert out.strip() == "1 - y1 - y2"


def test_criterion_02_anticanonical():
    with criterion(2, "augpoly cliffordanti 3 == 1 + y1^2*y2 + y1*y2^2, under 1 s"):
        code, out, secs = cli("augpoly", "cliffordanti", "3")
        assert code == 0 and out.strip() == "1 + y1^2*y2 + y1*y2^2", out
        assert secs < 1


def test_criterion_03_p1xp1():
    with criterion(3, "augpoly p1xp1 == 1 + y1 + y2 + y1*y2, under 1 s"):
        code, out, secs = cli("augpoly", "p1xp1")
        assert code == 0 and out.strip() == "1 + y1 + y2 + y1*y2", out
        assert secs < 1


def test_criterion_04_hopf_gradings():
    with criterion(4, "hopf n = 2..5: deg a_ii = 1, deg a12 = deg a21 = 0, deg c12.k = 1"):
        for n in range(2, 6):
            code, out, _ = cli("generators", "hopf", str(n), "--json")
            assert code == 0
            deg = {g["symbol"]: F(g["deg_R"]) for g in json.loads(out)["generators"]}
            assert deg["a11"] == deg["a22"] == 1
            assert deg["a12"] == deg["a21"] == 0
            for k in range(1, n):
                assert deg[f"c12.{k}"] == 1, (n, k)
            assert all(d.denominator == 1 for d in deg.values())


def test_criterion_05_hopf_table():
    with criterion(5, "hopf leading table: delta c12.k = (1 - y_k_1*y_k_2^-1)*a12, "
                      "a12*a21 in delta a11 with coefficient 1"):
        for n in range(2, 6):
            signs = ",".join(["1"] + ["-1"] * (n - 1))
            code, out, _ = cli("leading-diff", "hopf", str(n), "--signs", signs)
            assert code == 0
            lines = dict(line.split(" = ", 1) for line in out.strip().splitlines() if " = " in line)
            for k in range(1, n):
                assert lines[f"d(c12.{k})"] == f"(1 - y{k}_1*y{k}_2^-1)*a12", lines
            assert lines["d(a11)"].endswith(" + a12*a21"), lines["d(a11)"]


def test_criterion_06_inverse_factorials():
    with criterion(6, "exp_substitute gives coefficient exactly 1/d! on c^d for d <= 6"):
        T = cp1_table()
        by = T.by_symbol()
        c = by["c_1.1"]
        out = exp_substitute(T.entries[by["a11"]], {0: c}, Truncation(6))
        y = LaurentPoly.monomial((1,))
        for d in range(7):
            expected = y * F(1, math.factorial(d)) + (1 if d == 0 else 0)
            assert out.coefficient((c,) * d) == expected, (d, out.coefficient((c,) * d))


def random_word(rng, pool, max_len):
    return tuple(rng.choice(pool) for _ in range(rng.randint(0, max_len)))


QQ = CoefficientRing(())
R = CoefficientRing(("y1", "y2"), (F(1), F(2)))
POOL = [Generator.abstract(s, d) for s, d in [("p", 0), ("q", 1), ("r", -1), ("s", 2), ("t", 0)]]
CLASSICAL = [Generator.abstract(f"k{i}", d, kind=Kind.CLASSICAL)
             for i, d in enumerate([0, 0, 1, -1, 1])]


def test_criterion_07_abelianization():
    with criterion(7, "abelianize(c1*c2 - c2*c1) == 0 on T^2; 1000 random graded-commutativity pairs"):
        T = t2_classical_table()
        by = T.by_symbol()
        c1, c2 = by["c_1.1"], by["c_1.2"]
        assert abelianize(CEElement.word(QQ, (c1, c2)) - CEElement.word(QQ, (c2, c1))).is_zero()
        rng = random.Random(7)
        for _ in range(1000):
            u, v = random_word(rng, CLASSICAL, 4), random_word(rng, CLASSICAL, 4)
            pu = sum(g.deg_Z2 for g in u) % 2
            pv = sum(g.deg_Z2 for g in v) % 2
            uv = abelianize(CEElement.word(QQ, u + v))
            vu = abelianize(CEElement.word(QQ, v + u))
            assert uv == vu * (-1 if pu and pv else 1), (u, v)


def random_coeff(rng):
    return LaurentPoly({(rng.randint(-1, 2), rng.randint(-1, 2)): rng.randint(-3, 3)
                        for _ in range(rng.randint(0, 2))}, 2)


def random_element(rng, max_len=3):
    return CEElement(R, {random_word(rng, POOL, max_len): random_coeff(rng)
                         for _ in range(rng.randint(0, 3))})


def test_criterion_08_leibniz_and_squares():
    with criterion(8, "1000 random Leibniz pairs exact; closed tables pass d2check; "
                      "mutated table fails with nonzero residual"):
        rng = random.Random(8)
        for _ in range(1000):
            T = DifferentialTable(R, tuple(POOL), {g: random_element(rng, 2) for g in POOL})
            a, b = random_element(rng), random_element(rng)
            for w, c in a.items():
                mono = CEElement(R, {w: c})
                sign = -1 if sum(g.deg_Z2 for g in w) % 2 else 1
                assert derive(T, mono * b) == derive(T, mono) * b + (mono * derive(T, b)) * sign
        for table in (synthetic_closed(), synthetic_cancel(), torus_morse()):
            assert check_squares_zero(table).status == "ok"
        # a leading table omits terms, so it can only be inconclusive
        assert check_squares_zero(t2_classical_table()).status == "inconclusive"
        report = check_squares_zero(synthetic_cancel(flip=True))
        assert report.status == "failed"
        assert any(not residual.is_zero() for _, residual in report.failures)
        code, _, _ = cli("d2check", "--fixture", "synthetic-mutated")
        assert code == 1


def random_sublattice(rng):
    """Hermite basis of index <= 8, scrambled by elementary basis changes."""
    r = rng.randint(1, 3)
    diag = []
    for _ in range(r):
        diag.append(rng.randint(1, 8 // math.prod(diag)))
    basis = [[0] * r for _ in range(r)]
    for i in range(r):
        basis[i][i] = diag[i]
        for j in range(i):
            basis[i][j] = rng.randint(0, diag[j] - 1)
    for _ in range(rng.randint(0, 4)):
        i, j = rng.randrange(r), rng.randrange(r)
        if i != j:
            k = rng.randint(-2, 2)
            basis[i] = [a + k * b for a, b in zip(basis[i], basis[j])]
    return r, [tuple(b) for b in basis]


def coset_members(basis, r, d):
    return {tuple(sum(basis[j][i] * c[j] for j in range(r)) % d for i in range(r))
            for c in itertools.product(range(d), repeat=r)}


def test_criterion_09_lattice_oracle():
    with criterion(9, "200 random sublattices: member_preimage matches coset enumeration, "
                      "index matches Smith invariant factors, under 10 s"):
        rng = random.Random(9)
        start = time.perf_counter()
        for _ in range(200):
            r, basis = random_sublattice(rng)
            S = Sublattice(IntegerLattice(r), basis)
            factors = smith_normal_form([list(b) for b in basis]).invariant_factors
            d = math.prod(abs(f) for f in factors)
            assert sublattice_index(S) == d <= 8
            members = coset_members(basis, r, d)
            for v in itertools.product(range(-3, 4), repeat=r):
                got = member_preimage(S, v)
                assert (got is not None) == (tuple(x % d for x in v) in members), (basis, v)
                if got is not None:
                    assert tuple(sum(basis[j][i] * got[j] for j in range(r))
                                 for i in range(r)) == v
        assert time.perf_counter() - start < 10


def brute_force_angles(area, n_in, n_out, step, theta_max):
    grid = [step * k for k in range(1, int(theta_max / step) + 1)]
    return sorted(s for s in itertools.product(grid, repeat=n_in + n_out)
                  if sum(s[:n_in], F(0)) - sum(s[n_in:], F(0)) == area)


def test_criterion_10_angle_area_balance():
    with criterion(10, "angle_solutions: one incoming chord of 1/tau for area 1/tau, "
                       "hopf split 1/n -> 1/(2n) + 1/(2n), nothing else below 1/tau"):
        for n in range(2, 6):
            tau = n
            assert angle_solutions(F(1, tau), tau, 1, 0, F(1, n)) == [(F(1, tau),)]
            assert brute_force_angles(F(1, tau), 1, 0, F(1, n), F(1, tau)) == [(F(1, tau),)]
            sols = angle_solutions(0, tau, 1, 2, F(1, n), offsets=(0, F(1, 2 * n)),
                                   theta_max=F(1, tau))
            assert sols == [(F(1, n), F(1, 2 * n), F(1, 2 * n))], sols
            assert brute_force_angles(0, 1, 2, F(1, 2 * n), F(1, tau)) == sols


def test_criterion_11_augmentations():
    with criterion(11, "augcheck passes on cp1 and hopf3, residual 1 when variables die, "
                       "(-1, t) on the p1xp1 variety for 20 random t"):
        assert check_augmentation(*cp1_augmentation()).ok
        assert check_augmentation(*hopf_augmentation()).ok
        report = check_augmentation(*cp1_augmentation(F(0)))
        assert not report.ok
        assert [r for _, r in report.residuals] == [LaurentPoly.constant(1, 0)]
        spec = p1xp1()
        W = augmentation_polynomial(spec.polytope, spec.lift, spec.vertex)
        rng = random.Random(11)
        for _ in range(20):
            t = F(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 50))
            assert variety_member(W, [F(-1), t]), t
        assert not variety_member(W, [F(1), F(1)])


def test_criterion_12_composition():
    with criterion(12, "composing verified chain maps passes check_chain_map; "
                       "trivial matching composes to the identity"):
        T, f, g = scaling_maps()
        assert check_chain_map(f, T, T).ok and check_chain_map(g, T, T).ok
        h = compose_matching(Matching.trivial(["1"]), [f, g])
        assert check_chain_map(h, T, T).ok
        assert compose_matching(Matching.trivial(["1"]), [], table=T).same_as(ChainMap.identity(T))
