"""Golden and property tests for the 27-coordinate assembly layer.

The slot dictionaries are frozen from the weight-matching derivation;
the assembled vectors of both canonical complexes are pinned as exact
strings and checked against the orbit quadrics.  The split square
matrix is tested at zero defects (permutation form), with fully
symbolic defects (restrictions and constant determinant) and under
random rational specializations.  Extraction is round-tripped on the
pfaffian section, exercised on randomized graded specializations, and
the degreewise verifier is probed with perturbed and recombined
generator sets.
"""

import json
import random
from fractions import Fraction
from itertools import combinations

import pytest

from strucmaps import build_pfaffian_section, build_split
from strucmaps.alpha1 import build_alpha1
from strucmaps.alpha2 import build_alpha2
from strucmaps.assembler import (
    AssemblyError,
    ExtractionFailed,
    SquareMatrixM,
    W1Vector,
    assemble_M_split,
    assemble_w1,
    column_display_slots,
    column_labels,
    e6_rep,
    extract_pfaffian_presentation,
    plucker_quadrics,
    row_display_slots,
    row_labels,
    skew_matrix_from_w11,
    slot_layout,
    submaximal_pfaffians,
    verify_presentation,
)
from strucmaps.complexes import FreeComplex, sub_pfaffian
from strucmaps.linalg import Mat
from strucmaps.ring import Ring


@pytest.fixture(scope="module")
def section():
    return build_pfaffian_section()


@pytest.fixture(scope="module")
def section_maps(section):
    return build_alpha2(section, defects=False)


@pytest.fixture(scope="module")
def split_maps2():
    return build_alpha2(build_split(), defects=True)


@pytest.fixture(scope="module")
def split_maps1():
    return build_alpha1(build_split(), defects=True)


GEN_SLOT = {1: 6, 2: 4, 3: 3, 4: 2, 5: 1, 6: 0}
DUAL_SLOT = {1: 26, 2: 25, 3: 24, 4: 23, 5: 22, 6: 19}
QUAD_SLOT = {
    (1, 2, 3, 4): 21, (1, 2, 3, 5): 20, (1, 2, 3, 6): 17, (1, 2, 4, 5): 18,
    (1, 2, 4, 6): 15, (1, 2, 5, 6): 12, (1, 3, 4, 5): 16, (1, 3, 4, 6): 13,
    (1, 3, 5, 6): 10, (1, 4, 5, 6): 8, (2, 3, 4, 5): 14, (2, 3, 4, 6): 11,
    (2, 3, 5, 6): 9, (2, 4, 5, 6): 7, (3, 4, 5, 6): 5,
}
U_SLOT = {
    (1,): 6, (2,): 4, (3,): 3, (4,): 2, (5,): 1,
    (1, 2, 3): 17, (1, 2, 4): 15, (1, 2, 5): 12, (1, 3, 4): 13,
    (1, 3, 5): 10, (1, 4, 5): 8, (2, 3, 4): 11, (2, 3, 5): 9,
    (2, 4, 5): 7, (3, 4, 5): 5, (1, 2, 3, 4, 5): 19,
}
G_SLOT = {
    "eh1": 26, "eh2": 25, "eh3": 24, "eh4": 23, "eh5": 22,
    "e1": 14, "e2": 16, "e3": 18, "e4": 20, "e5": 21,
}

PFAFFIAN_COORDS = [
    "y",
    "x12*x34 - x13*x24 + x14*x23",
    "x12*x35 - x13*x25 + x15*x23",
    "x12*x45 - x14*x25 + x15*x24",
    "x13*x45 - x14*x35 + x15*x34",
    "-x12",
    "x23*x45 - x24*x35 + x25*x34",
    "-x13", "-x23", "-x14", "-x24", "-x15", "-x34", "-x25",
    "0", "-x35", "0", "-x45", "0",
    "1",
    "0", "0", "0", "0", "0", "0", "0",
]

SPLIT_COORDS = [
    "1", "0", "0", "0", "0",
    "b3_45", "0", "b2_45", "b1_45", "b2_35", "b1_35", "b2_34",
    "b1_25", "b1_34", "0", "b1_24", "0", "b1_23", "0",
    "-b1_26*b3_45 + b1_36*b2_45 - b1_46*b2_35 + b1_56*b2_34 + c1_1",
    "0", "0",
    "-b1_25*b3_45 + b1_35*b2_45 - b1_45*b2_35",
    "-b1_24*b3_45 + b1_34*b2_45 - b1_45*b2_34",
    "-b1_23*b3_45 + b1_34*b2_35 - b1_35*b2_34",
    "-b1_23*b2_45 + b1_24*b2_35 - b1_25*b2_34",
    "-b1_23*b1_45 + b1_24*b1_35 - b1_25*b1_34",
]

SECTION_SKEW = [
    ["0", "-x12", "x13", "-x14", "x15"],
    ["x12", "0", "-x23", "x24", "-x25"],
    ["-x13", "x23", "0", "-x34", "x35"],
    ["x14", "-x24", "x34", "0", "-x45"],
    ["-x15", "x25", "-x35", "x45", "0"],
]

SPLIT_SKEW = [
    ["0", "b3_45", "-b2_45", "b2_35", "-b2_34"],
    ["-b3_45", "0", "b1_45", "-b1_35", "b1_34"],
    ["b2_45", "-b1_45", "0", "b1_25", "-b1_24"],
    ["-b2_35", "b1_35", "-b1_25", "0", "b1_23"],
    ["b2_34", "-b1_34", "b1_24", "-b1_23", "0"],
]


# -- slot layout --------------------------------------------------------


def test_slot_layout_frozen():
    lay = slot_layout()
    assert lay.gen == GEN_SLOT
    assert lay.dual == DUAL_SLOT
    assert lay.quad == QUAD_SLOT
    assert lay.u == U_SLOT
    assert lay.g == G_SLOT
    assert lay.g_sign == {
        "eh1": -1, "eh2": -1, "eh3": -1, "eh4": -1, "eh5": -1,
        "e1": -1, "e2": 1, "e3": -1, "e4": 1, "e5": -1,
    }


def test_display_slot_lists_cover():
    lay = slot_layout()
    assert sorted(row_display_slots(lay)) == list(range(27))
    cslots, csigns = column_display_slots(lay)
    assert sorted(cslots) == list(range(27))
    assert set(csigns) <= {1, -1}
    assert len(row_labels()) == len(column_labels()) == 27


# -- assembled vectors --------------------------------------------------


def test_w1_pfaffian_golden(section, section_maps):
    w1 = assemble_w1(section_maps)
    assert [str(p) for p in w1.coords] == PFAFFIAN_COORDS
    assert list(w1.d1_block) == list(section.d[1].rows[0])
    ok, witness = w1.check_plucker()
    assert ok and witness is None


def test_w1_split_symbolic_golden(split_maps2):
    w1 = assemble_w1(split_maps2)
    assert [str(p) for p in w1.coords] == SPLIT_COORDS
    ok, witness = w1.check_plucker()
    assert ok and witness is None


def test_w1_split_zero_defects():
    maps = build_alpha2(build_split(), defects=False)
    w1 = assemble_w1(maps)
    assert [str(p) for p in w1.coords] == ["1"] + ["0"] * 26
    ok, _ = w1.check_plucker()
    assert ok


def test_w1_blocks(section_maps):
    w1 = assemble_w1(section_maps)
    assert w1.w11_block[(3, 4, 5, 6)] == section_maps.w11[(3, 4, 5, 6)]
    assert list(w1.w12_block) == list(section_maps.w12)
    payload = w1.to_json()
    assert json.loads(json.dumps(payload)) == payload
    assert payload["d1"][5] == "y"


def test_w1_requires_27():
    ring = Ring([])
    with pytest.raises(ValueError):
        W1Vector(ring, [ring.zero()] * 26)


def test_quadric_space_dimension():
    assert len(plucker_quadrics()) == 27


# -- the split square matrix --------------------------------------------


def expected_zero_matrix(ring):
    z, o = ring.zero(), ring.one()
    rows = [[z] * 27 for _ in range(27)]
    for i in range(1, 6):
        rows[i - 1][i] = o
    rows[5][0] = o
    for k in range(21):
        rows[6 + k][6 + k] = o
    return rows


def test_m_split_zero_defects():
    m1 = build_alpha1(build_split(), defects=False)
    m2 = build_alpha2(build_split(), defects=False)
    mm = assemble_M_split(m1, m2)
    assert mm.det() == Fraction(-1)
    assert mm.mat.rows == expected_zero_matrix(mm.ring)
    assert [str(p) for p in mm.f_row(6)] == ["1"] + ["0"] * 26
    assert str(mm.entry("f1", "u1")) == "1"
    assert str(mm.entry("f1", "1")) == "0"


def test_m_split_symbolic(split_maps1, split_maps2):
    mm = assemble_M_split(split_maps1, split_maps2)
    assert mm.det() == Fraction(-1)
    ring = mm.ring
    # generator rows restrict to the first-family maps
    d4 = split_maps1.complex.d[4]
    for h in range(1, 7):
        want = [d4.rows[h - 1][0].transfer(ring)]
        for K in sorted(split_maps1.wn1, key=lambda t: (len(t), t)):
            want.append(split_maps1.wn1[K][h - 1].transfer(ring))
        for gi in range(10):
            want.append(split_maps1.w12[gi][h - 1].transfer(ring))
        assert mm.f_row(h) == want
    # the unit column restricts to the second-family vector
    w1 = assemble_w1(split_maps2)
    slots = row_display_slots(slot_layout())
    want = [w1.coords[s].transfer(ring) for s in slots]
    assert mm.unit_column() == want


def test_m_split_det_specialized(split_maps1, split_maps2):
    mm = assemble_M_split(split_maps1, split_maps2)
    rng = random.Random(416)
    ring = mm.ring
    for _ in range(3):
        subs = {
            name: Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            for name in ring.names
        }
        num = Mat(
            ring,
            [[p.substitute(subs, ring) for p in row] for row in mm.mat.rows],
        )
        det = num.det()
        assert str(det) == "-1"


def test_m_split_json(split_maps1, split_maps2):
    mm = assemble_M_split(split_maps1, split_maps2)
    payload = mm.to_json()
    assert json.loads(json.dumps(payload)) == payload
    assert payload["det"] == "-1"
    assert len(payload["entries"]) == 27
    assert payload["rows"][5] == "f6" and payload["cols"][0] == "1"


def test_m_requires_split(section, section_maps):
    m1 = build_alpha1(build_split(), defects=False)
    with pytest.raises(ValueError):
        assemble_M_split(m1, section_maps)


# -- extraction and verification ----------------------------------------


def test_skew_matrix_section_golden(section_maps):
    s = skew_matrix_from_w11(section_maps, 6)
    assert [[str(p) for p in row] for row in s.rows] == SECTION_SKEW
    ring = section_maps.ring
    for p, pf in enumerate(submaximal_pfaffians(s)):
        want = sub_pfaffian(ring, p + 1)
        if p % 2 == 1:
            want = -want
        assert pf == want


def test_extract_round_trip(section, section_maps):
    pres = extract_pfaffian_presentation(section, section_maps)
    assert pres.index == 6
    assert str(pres.y) == "y"
    assert [[str(p) for p in row] for row in pres.skew.rows] == SECTION_SKEW
    assert verify_presentation(section, pres.skew, pres.y)
    payload = pres.to_json()
    assert json.loads(json.dumps(payload)) == payload
    assert payload["index"] == 6


def test_only_last_index_verifies(section, section_maps):
    ring = section_maps.ring
    for m in range(1, 6):
        s = skew_matrix_from_w11(section_maps, m)
        y = section.d[1].rows[0][m - 1]
        assert verify_presentation(section, s, y) is False


def test_verify_perturbed_entry_fails(section, section_maps):
    s = skew_matrix_from_w11(section_maps, 6)
    ring = section_maps.ring
    x13 = ring.var("x13")
    rows = [list(r) for r in s.rows]
    rows[0][1] = rows[0][1] + x13
    rows[1][0] = rows[1][0] - x13
    perturbed = Mat(ring, rows)
    y = section.d[1].rows[0][5]
    assert verify_presentation(section, perturbed, y) is False


def test_verify_recombination_passes(section, section_maps):
    s = skew_matrix_from_w11(section_maps, 6)
    y = section.d[1].rows[0][5]
    pf = submaximal_pfaffians(s)
    assert verify_presentation(section, s, y + pf[0])
    assert verify_presentation(section, s, (y - pf[3]) * Fraction(3, 7))


def test_verify_needs_positive_weights(split_maps2):
    s = skew_matrix_from_w11(split_maps2, 6)
    y = split_maps2.complex.d[1].rows[0][5]
    with pytest.raises(ValueError):
        verify_presentation(split_maps2.complex, s, y)


def test_extract_split_symbolic_fails(split_maps2):
    with pytest.raises(ExtractionFailed):
        extract_pfaffian_presentation(split_maps2.complex, split_maps2)


def test_split_skew_helper_golden(split_maps2):
    s = skew_matrix_from_w11(split_maps2, 6)
    assert [[str(p) for p in row] for row in s.rows] == SPLIT_SKEW
    ring = split_maps2.ring
    kill6 = {
        name: 0
        for name in ring.names
        if name.startswith("b") and name.endswith("6")
    }
    pf = [p.substitute(kill6, ring) for p in submaximal_pfaffians(s)]
    dual = [p.substitute(kill6, ring) for p in split_maps2.w12]
    for p in range(5):
        want = dual[p] if p % 2 == 1 else -dual[p]
        assert pf[p] == want
    assert str(dual[5]) == "c1_1"


def random_graded_specialization(section, rng):
    """Substitute the section's variables by random forms in a fresh
    positively graded ring, keeping every differential homogeneous."""
    zr = Ring(["z%d" % i for i in range(1, 7)], [1] * 6)
    zs = [zr.var("z%d" % i) for i in range(1, 7)]
    ring = section.ring

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

    mapping = {name: linear() for name in ring.names if name != "y"}
    mapping["y"] = quadratic()
    d = {
        k: Mat(zr, [[p.substitute(mapping, zr) for p in row] for row in section.d[k].rows])
        for k in (1, 2, 3, 4)
    }
    return FreeComplex(zr, 6, d, section.labels, section.degrees, section.convention)


def test_extraction_on_random_specializations(section):
    rng = random.Random(2718)
    done = 0
    attempts = 0
    while done < 3 and attempts < 12:
        attempts += 1
        spec = random_graded_specialization(section, rng)
        try:
            maps = build_alpha2(spec, defects=False)
        except Exception:
            continue
        w1 = assemble_w1(maps)
        ok, _ = w1.check_plucker()
        assert ok
        pres = extract_pfaffian_presentation(spec, maps)
        assert verify_presentation(spec, pres.skew, pres.y)
        done += 1
    assert done == 3
