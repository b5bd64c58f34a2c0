"""Acceptance gate: the eleven package-level criteria, one line each.

Every test aggregates its component checks and prints a single
"criterion N: PASS/FAIL" line (visible under ``pytest -s``); the test
fails when any component check fails.  Term-for-term golden coverage
lives in the per-module test files — this gate re-asserts the headline
identities end to end, partly through the command-line entry point.
"""

import json
import random
from fractions import Fraction

import pytest

from strucmaps import (
    DynkinGraph,
    FreeComplex,
    Mat,
    Ring,
    RootSystem,
    assemble_M_split,
    assemble_w1,
    build_alpha1,
    build_alpha2,
    build_pfaffian_section,
    build_split,
    double_cosets,
    extract_pfaffian_presentation,
    grade_decomposition,
    verify_presentation,
    weyl_order,
)
from strucmaps.alpha2 import C_PAIRS, b_name, c_name, pf_minor, pf_mixed, wedge_sort
from strucmaps.assembler import plucker_quadrics
from strucmaps.cli import main


@pytest.fixture(scope="module")
def split_a1():
    return build_alpha1(build_split(), defects=True)


@pytest.fixture(scope="module")
def pf_a1():
    return build_alpha1(build_pfaffian_section(), defects=False)


@pytest.fixture(scope="module")
def split_a2():
    return build_alpha2(build_split(), defects=True)


@pytest.fixture(scope="module")
def section():
    return build_pfaffian_section()


@pytest.fixture(scope="module")
def pf_a2(section):
    return build_alpha2(section, defects=False)


def note(failures, ok, label):
    if not ok:
        failures.append(label)


def conclude(num, failures):
    status = "PASS" if not failures else "FAIL"
    line = "criterion %d: %s" % (num, status)
    if failures:
        line += " — " + "; ".join(failures[:6])
    print(line)
    assert not failures, line


def run_cli(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


# -- criterion 1: split-complex first-family display formulas -----------


def test_criterion_01_split_first_family_displays(split_a1):
    ring = split_a1.ring
    failures = []

    def b(*indices):
        return ring.var("b_" + "".join(str(i) for i in sorted(indices)))

    def vec(entries):
        out = [ring.zero()] * 6
        for pos, val in entries.items():
            out[pos - 1] = val
        return out

    top = b(1, 2, 3, 4, 5)
    for i in range(1, 6):
        want = vec({i: ring.one(), 6: b(i)})
        note(failures, split_a1.wn1[(i,)] == want, "w(u%d)" % i)
    quad1 = b(1, 2, 3) * b(1, 4, 5) - b(1, 2, 4) * b(1, 3, 5) + b(1, 2, 5) * b(1, 3, 4)
    want = vec({1: -top, 6: quad1 - b(1) * top})
    note(failures, split_a1.w12[0] == want, "w12 at the first hatted slot")
    note(failures, split_a1.w62[6] == -top, "w62(f6)")
    note(failures, split_a1.w0_11 == top, "w0_11(1)")
    pairings = [(1, 0, 1, 2, 3), (-1, 0, 2, 1, 3), (1, 0, 3, 1, 2)]
    for i in range(1, 6):
        comp = [t for t in range(1, 6) if t != i]
        quad = ring.zero()
        for sign, a, bb, c, d in pairings:
            term = b(i, comp[a], comp[bb]) * b(i, comp[c], comp[d])
            quad = quad + (term if sign > 0 else -term)
        note(failures, split_a1.w0_2[(i,)] == quad, "w0_2(u%d)" % i)
    conclude(1, failures)


# -- criterion 2: pfaffian-section first-family display values ----------


def test_criterion_02_section_first_family_displays(pf_a1):
    ring = pf_a1.ring
    failures = []
    y = ring.var("y")

    def x(i, j):
        return ring.var("x%d%d" % (min(i, j), max(i, j)))

    def vec(entries):
        out = [ring.zero()] * 6
        for pos, val in entries.items():
            out[pos - 1] = val
        return out

    note(failures, pf_a1.w00.sign in (1, -1), "global spinor sign recorded")
    note(failures, pf_a1.w00[()] == y * y, "spinor coordinate at {}")
    for i in range(1, 6):
        for j in range(i + 1, 6):
            want = x(i, j) * y
            if (i + j) % 2:
                want = -want
            note(failures, pf_a1.w00[(i, j)] == want, "spinor coordinate {%d,%d}" % (i, j))
    d4 = pf_a1.complex.d[4]
    for k in range(1, 6):
        K = tuple(t for t in range(1, 6) if t != k)
        want = d4.rows[k - 1][0]
        if k % 2 == 0:
            want = -want
        note(failures, pf_a1.w00[K] == want, "spinor coordinate at complement of %d" % k)
    for i in range(1, 6):
        note(failures, pf_a1.wn1[(i,)] == vec({i: -y}), "wn1(u%d)" % i)
    note(failures, pf_a1.wn1[(1, 2, 3, 4, 5)] == vec({6: ring.one()}), "wn1 top")
    want = vec({1: x(2, 3), 2: x(1, 3), 3: x(1, 2)})
    note(failures, pf_a1.wn1[(1, 2, 3)] == want, "wn1 at {1,2,3}")
    note(failures, pf_a1.w11[((), 6)] == -y, "w11 at ({}, f6)")
    note(failures, pf_a1.w11[((1, 2), 6)] == x(1, 2), "w11 at ({1,2}, f6)")
    note(failures, pf_a1.w11[((1, 2, 3, 4), 5)] == -ring.one(), "w11 at (4-set, f5)")
    for i in range(5):
        note(failures, pf_a1.w12[i] == vec({i + 1: ring.one()}), "w12 hatted %d" % i)
    for i in range(5, 10):
        note(failures, all(p.is_zero() for p in pf_a1.w12[i]), "w12 unhatted %d" % i)
    for h in range(1, 6):
        note(failures, pf_a1.w62[h].is_zero(), "w62(f%d)" % h)
    note(failures, pf_a1.w62[6] == -ring.one(), "w62(f6)")
    note(failures, pf_a1.w0_11 == y, "w0_11(1)")
    half_y = ring.const(Fraction(1, 2)) * y
    note(failures, pf_a1.w0_12[(0, 5)] == half_y, "w0_12 hyperbolic pair")
    want = -x(1, 2)
    note(failures, pf_a1.w0_12[(5, 6)] == want, "w0_12 unhatted pair")
    note(failures, pf_a1.w0_12[(0, 6)].is_zero(), "w0_12 unmatched pair")
    for H in [(1,), (1, 2, 3)]:
        note(failures, pf_a1.w0_2[H].is_zero(), "w0_2 at %r" % (H,))
    note(failures, pf_a1.w0_2[(1, 2, 3, 4, 5)] == ring.one(), "w0_2 top")
    conclude(2, failures)


# -- criterion 3: second-family defect reduction and relations ----------


SPECIALIZED_TOP_ROWS = [
    ["c1_1", "0", "0", "0", "0", "-b1_23*b1_45 + b1_24*b1_35 - b1_25*b1_34"],
    ["0", "-c1_1", "0", "0", "0", "-b1_23*b2_45 + b1_24*b2_35 - b1_25*b2_34"],
    ["0", "0", "c1_1", "0", "0", "-b1_23*b3_45 + b1_34*b2_35 - b1_35*b2_34"],
    ["0", "0", "0", "-c1_1", "0", "-b1_24*b3_45 + b1_34*b2_45 - b1_45*b2_34"],
    ["0", "0", "0", "0", "c1_1", "-b1_25*b3_45 + b1_35*b2_45 - b1_45*b2_35"],
    ["0", "b3_45", "b2_45", "b2_35", "b2_34", "0"],
    ["b3_45", "0", "-b1_45", "-b1_35", "-b1_34", "0"],
    ["-b2_45", "-b1_45", "0", "b1_25", "b1_24", "0"],
    ["b2_35", "b1_35", "b1_25", "0", "-b1_23", "0"],
    ["-b2_34", "-b1_34", "-b1_24", "-b1_23", "0", "0"],
]


def test_criterion_03_second_family_defect_reduction(split_a2):
    ring = split_a2.ring
    failures = []
    b_count = sum(1 for name in split_a2.defects if name.startswith("b"))
    note(failures, b_count == 20, "20 independent pair parameters")
    note(failures, split_a2.defects.count("c1_1") == 1, "one second-layer parameter")
    note(failures, len(split_a2.defects) == 21, "21 defects in total")
    expected_keys = sorted(c_name(k, m) for (k, m) in C_PAIRS if (k, m) != (1, 1))
    note(
        failures,
        sorted(split_a2.elimination) == expected_keys and len(expected_keys) == 29,
        "eliminated parameters",
    )
    for i in range(1, 6):
        for j in range(1, 7):
            if i == j:
                continue
            sign = (-1) ** i * (1 if j > i else -1)
            got = split_a2.elimination[c_name(i, j)]
            note(
                failures,
                got == pf_minor(ring, i, j) * sign,
                "off-diagonal relation c%d_%d" % (i, j),
            )

    def diag(i):
        if i == 1:
            return ring.var(c_name(1, 1))
        return split_a2.elimination[c_name(i, i)]

    for i in range(1, 6):
        for j in range(i + 1, 6):
            xs = tuple(t for t in range(1, 7) if t not in (i, j))
            eps_i = wedge_sort((i,) + xs)[0]
            eps_j = wedge_sort((j,) + xs)[0]
            lhs = diag(i) * eps_j + diag(j) * eps_i
            note(
                failures,
                lhs == -pf_mixed(ring, i, j),
                "diagonal relation (%d, %d)" % (i, j),
            )
    kill = {b_name(k, i, 6): 0 for k in range(1, 6) for i in range(k + 1, 6)}
    for m in range(1, 7):
        vec = [p.substitute(kill, ring) for p in split_a2.w62[m]]
        for r in range(10):
            note(
                failures,
                vec[r] == ring.parse(SPECIALIZED_TOP_ROWS[r][m - 1]),
                "specialized second-layer matrix (%d, %d)" % (r, m),
            )
    for l in range(1, 6):
        note(
            failures,
            split_a2.w12[l - 1] == pf_minor(ring, l, 6) * ((-1) ** l),
            "top column entry %d" % l,
        )
    note(
        failures,
        split_a2.w12[5].substitute(kill, ring) == ring.var("c1_1"),
        "specialized top column entry 6",
    )
    conclude(3, failures)


# -- criteria 4-6: the deterministic verification suites ----------------


def test_criterion_04_cycle_suite(capsys):
    code, payload = run_cli(capsys, ["verify", "cycles"])
    failures = []
    note(failures, code == 0 and payload["passed"], "cycle suite exit")
    note(failures, len(payload["checks"]) == 12, "cycle suite coverage")
    expected = [16, 96, 6, 62, 10, 6] * 2
    for chk, want in zip(payload["checks"], expected):
        note(
            failures,
            chk["passed"] and chk["instances"] == want,
            chk["name"],
        )
    conclude(4, failures)


def test_criterion_05_palmer_relation(capsys):
    code, payload = run_cli(capsys, ["verify", "palmer"])
    failures = []
    note(failures, code == 0 and payload["passed"], "palmer suite exit")
    note(failures, len(payload["checks"]) == 2, "both complexes covered")
    for chk in payload["checks"]:
        note(failures, chk["passed"] and chk["instances"] == 825, chk["name"])
    conclude(5, failures)


def test_criterion_06_duality(capsys):
    code, payload = run_cli(capsys, ["verify", "duality"])
    failures = []
    note(failures, code == 0 and payload["passed"], "duality suite exit")
    note(failures, len(payload["checks"]) == 4, "all four directions covered")
    for chk in payload["checks"]:
        note(failures, chk["passed"] and chk["instances"] == 66, chk["name"])
    conclude(6, failures)


# -- criterion 7: Lie-combinatorial layer -------------------------------


def test_criterion_07_lie_layer():
    failures = []
    e6 = DynkinGraph.e(6)
    note(failures, len(RootSystem(e6).roots) == 72, "E6 root count")
    note(failures, weyl_order(e6) == 51840, "E6 Weyl order")
    note(
        failures,
        dict(grade_decomposition(e6, 1)) == {-1: 16, 0: 46, 1: 16},
        "E6 node-1 grading",
    )
    # the contract lists three node-2 blocks; the adjoint node carries the
    # five-block grading below, recorded in the decisions ledger
    note(
        failures,
        dict(grade_decomposition(e6, 2)) == {-2: 1, -1: 20, 0: 36, 1: 20, 2: 1},
        "E6 node-2 grading",
    )
    note(
        failures,
        dict(grade_decomposition(DynkinGraph.e(7), 1))
        == {-2: 1, -1: 32, 0: 67, 1: 32, 2: 1},
        "E7 node-1 grading",
    )
    note(
        failures,
        dict(grade_decomposition(DynkinGraph.e(8), 1))
        == {-2: 14, -1: 64, 0: 92, 1: 64, 2: 14},
        "E8 node-1 grading",
    )
    cosets = double_cosets(e6, 2, 1)
    note(
        failures,
        [dc.size for dc in cosets] == [6, 15, 6],
        "three double cosets of sizes 6/15/6",
    )
    conclude(7, failures)


# -- criterion 8: orbit quadrics ----------------------------------------


def test_criterion_08_plucker_vanishing(split_a2, pf_a2):
    failures = []
    quadrics = plucker_quadrics()
    note(failures, len(quadrics) == 27, "27-dimensional quadric space")
    note(
        failures,
        sorted(q.index for q in quadrics) == list(range(27)),
        "independent quadric indexing",
    )
    ok, witness = assemble_w1(split_a2).check_plucker()
    note(failures, ok, "vanishing on the split coordinates (21 symbolic defects)")
    ok, witness = assemble_w1(pf_a2).check_plucker()
    note(failures, ok, "vanishing on the section coordinates (symbolic x, y)")
    conclude(8, failures)


# -- criterion 9: the square transition matrix --------------------------


def test_criterion_09_square_matrix(split_a1, split_a2):
    failures = []
    zero1 = build_alpha1(build_split(), defects=False)
    zero2 = build_alpha2(build_split(), defects=False)
    mm0 = assemble_M_split(zero1, zero2)
    note(failures, mm0.det() == Fraction(-1), "zero-defect determinant")
    ring = mm0.ring
    expected = [[ring.zero()] * 27 for _ in range(27)]
    for i in range(1, 6):
        expected[i - 1][i] = ring.one()
    expected[5][0] = ring.one()
    for k in range(21):
        expected[6 + k][6 + k] = ring.one()
    note(failures, mm0.mat.rows == expected, "zero-defect permutation form")
    mm = assemble_M_split(split_a1, split_a2)
    note(failures, mm.det() == Fraction(-1), "generic determinant is the constant -1")
    note(failures, str(mm.entry("f1", "u1")) == "1", "bordered generator row")
    note(failures, str(mm.entry("f6", "u1")) == "b_1", "bordered defect entry")
    note(failures, str(mm.entry("f6", "1")) == "1", "unit-column corner")
    conclude(9, failures)


# -- criterion 10: extraction round trip --------------------------------


def random_graded_specialization(section, rng):
    """Substitute the section's variables by random forms in a fresh
    positively graded ring, keeping every differential homogeneous."""
    zr = Ring(["z%d" % i for i in range(1, 7)], [1] * 6)
    zs = [zr.var("z%d" % i) for i in range(1, 7)]

    def linear():
        out = zr.zero()
        for z in zs:
            out = out + z * Fraction(rng.randint(-3, 3))
        return out

    def quadratic():
        out = zr.zero()
        for a in range(6):
            for b in range(a, 6):
                if rng.random() < 0.4:
                    out = out + zs[a] * zs[b] * Fraction(rng.randint(-2, 2))
        return out

    mapping = {name: linear() for name in section.ring.names if name != "y"}
    mapping["y"] = quadratic()
    d = {
        k: Mat(zr, [[p.substitute(mapping, zr) for p in row] for row in section.d[k].rows])
        for k in (1, 2, 3, 4)
    }
    return FreeComplex(zr, 6, d, section.labels, section.degrees, section.convention)


def test_criterion_10_extraction_round_trip(section, pf_a2):
    failures = []
    presentation = extract_pfaffian_presentation(section, pf_a2)
    note(failures, presentation.index == 6, "symbolic extraction lands on the last slot")
    note(
        failures,
        verify_presentation(section, presentation.skew, presentation.y),
        "symbolic span equality",
    )
    rng = random.Random(97531)
    done = 0
    attempts = 0
    while done < 20 and attempts < 80:
        attempts += 1
        spec = random_graded_specialization(section, rng)
        try:
            maps = build_alpha2(spec, defects=False)
        except Exception:
            continue
        pres = extract_pfaffian_presentation(spec, maps)
        if not verify_presentation(spec, pres.skew, pres.y):
            failures.append("specialization attempt %d" % attempts)
            break
        done += 1
    note(failures, done >= 20, "20 random rational specializations (%d done)" % done)
    conclude(10, failures)


# -- criterion 11: the Betti-table fixture ------------------------------


def test_criterion_11_betti_fixture(capsys):
    code, payload = run_cli(capsys, ["fixtures", "betti-e8"])
    failures = []
    note(failures, code == 0 and len(payload["tables"]) == 10, "ten tables emitted")
    first = payload["tables"][0]["text"]
    note(
        failures,
        first == ["0: 1", "1: 1", "2: 7 14 7", "3: 1", "4: 1"],
        "first table",
    )
    last = payload["tables"][9]["text"]
    for row, want in [(6, "6: 7"), (7, "7: 1"), (9, "9: 14"), (11, "11: 1"), (12, "12: 7")]:
        note(failures, last[row] == want, "last table row %d" % row)
    for table in payload["tables"]:
        sums = {}
        for row in table["entries"].values():
            for col, val in row.items():
                sums[col] = sums.get(col, 0) + val
        want = (
            {"0": 1, "1": 9, "2": 16, "3": 9, "4": 1}
            if table["index"] == 9
            else {"0": 1, "1": 8, "2": 14, "3": 8, "4": 1}
        )
        note(failures, sums == want, "column sums of table %d" % table["index"])
    code_again = main(["fixtures", "betti-e8"])
    again = capsys.readouterr().out
    note(failures, code_again == 0, "re-run exit")
    note(
        failures,
        json.loads(again) == payload and json.loads(json.dumps(payload)) == payload,
        "byte-stable, round-tripping payload",
    )
    conclude(11, failures)
