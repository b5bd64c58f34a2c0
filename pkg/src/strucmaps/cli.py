"""Command-line front end for the structure-map toolkit.

Subcommands cover the canonical resolutions (``build``), the two
families of higher structure maps (``hsm1``, ``hsm2``), deterministic
verification suites (``verify``), the Lie-combinatorial layer (``lie``),
the orbit quadrics (``plucker``), the square transition matrix
(``assemble``), pfaffian-presentation extraction (``extract``), and the
frozen Betti-table catalogue (``fixtures``).

Every subcommand emits a single JSON document on stdout (or to ``--out``)
using sorted keys, so output is byte-stable and survives a parse/emit
round trip unchanged.  Exit codes: 0 on success, 1 when a verification
or extraction fails, 2 on usage errors.
"""

import argparse
import json
import random
import sys
from fractions import Fraction
from itertools import combinations

from .alpha1 import LiftFailure, build_alpha1, defect_name
from .alpha2 import B_TRIPLES, C_PAIRS, b_name, build_alpha2, c_name, palmer_check
from .assembler import (
    AssemblyError,
    ExtractionFailed,
    assemble_M_split,
    assemble_w1,
    e6_rep,
    extract_pfaffian_presentation,
    plucker_quadrics,
)
from .betti import tables_payload
from .complexes import FreeComplex, build_pfaffian_section, build_split
from .liecomb import DynkinGraph, RootSystem, double_cosets, grade_decomposition, weyl_order
from .linalg import mat_vec
from .spinor import (
    SpinorCoordinates,
    all_thetas,
    complement,
    embed_so,
    embed_trivial,
    even_subsets,
    odd_subsets,
    subset_label,
)

__all__ = ["main"]

_GRAPH_RANKS = {"E6": 6, "E7": 7, "E8": 8}
_MAX_RECORDED_FAILURES = 8


class _UsageError(Exception):
    """Bad flag combination or malformed input discovered after parsing."""


# -- plumbing -----------------------------------------------------------


def _emit(payload, out):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as stream:
            stream.write(text)
    else:
        sys.stdout.write(text)


def _build_complex(kind):
    if kind == "split":
        return build_split()
    return build_pfaffian_section()


def _vec_is_zero(vec):
    return all(p.is_zero() for p in vec)


def _check(name, instances, failures):
    recorded = [str(f) for f in failures[:_MAX_RECORDED_FAILURES]]
    if len(failures) > _MAX_RECORDED_FAILURES:
        recorded.append("... %d more" % (len(failures) - _MAX_RECORDED_FAILURES))
    return {
        "name": name,
        "instances": instances,
        "failures": recorded,
        "passed": not failures,
    }


def _suite_payload(suite, checks):
    return {
        "suite": suite,
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }


# -- build --------------------------------------------------------------


def _cmd_build(args):
    if args.n != 6:
        raise _UsageError("only --n 6 is implemented")
    return _build_complex(args.kind).to_json(), 0


# -- structure maps -----------------------------------------------------


def _parse_specialize(text, ring):
    values = {}
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        name, eq, raw = piece.partition("=")
        if not eq:
            raise _UsageError("--specialize expects VAR=VALUE pairs, got %r" % piece)
        try:
            values[name.strip()] = Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            raise _UsageError("cannot parse %r as a rational value" % raw.strip())
    if not values:
        raise _UsageError("--specialize received no VAR=VALUE pairs")
    unknown = sorted(set(values) - set(ring.names))
    if unknown:
        raise _UsageError("unknown variables: %s" % ", ".join(unknown))
    return values


def _specialize_alpha1(maps, values):
    ring = maps.ring

    def s(p):
        return p.substitute(values, ring)

    w00 = maps.w00
    maps.w00 = SpinorCoordinates(
        ring, {K: s(v) for K, v in w00.coeffs.items()}, w00.sign, w00.m
    )
    for H in list(maps.wn1):
        maps.wn1[H] = [s(p) for p in maps.wn1[H]]
    for key in list(maps.w11):
        maps.w11[key] = s(maps.w11[key])
    for g in list(maps.w12):
        maps.w12[g] = [s(p) for p in maps.w12[g]]
    for h in list(maps.w62):
        maps.w62[h] = s(maps.w62[h])
    maps.w0_11 = s(maps.w0_11)
    for key in list(maps.w0_12):
        maps.w0_12[key] = s(maps.w0_12[key])
    for H in list(maps.w0_2):
        maps.w0_2[H] = s(maps.w0_2[H])


def _cmd_hsm1(args):
    kind = args.complex_kind
    c = _build_complex(kind)
    symbolic = kind == "split" and (args.generic or args.specialize is not None)
    maps = build_alpha1(c, defects=symbolic)
    payload = maps.to_json()
    if args.specialize is not None:
        values = _parse_specialize(args.specialize, maps.ring)
        _specialize_alpha1(maps, values)
        payload = maps.to_json()
        payload["specialized"] = {name: str(v) for name, v in sorted(values.items())}
    return payload, 0


def _cmd_hsm2(args):
    kind = args.complex_kind
    c = _build_complex(kind)
    maps = build_alpha2(c, defects=kind == "split" and args.generic)
    return maps.to_json(), 0


# -- verification suites ------------------------------------------------


def _complex_report(args):
    if args.complex_kind is not None:
        c, source = _build_complex(args.complex_kind), args.complex_kind
    else:
        if sys.stdin.isatty():
            raise _UsageError(
                "verify complex reads JSON from stdin; pipe a complex in "
                "or pass --complex split|pfaffian"
            )
        text = sys.stdin.read()
        if not text.strip():
            raise _UsageError("empty stdin; pass --complex split|pfaffian instead")
        try:
            c = FreeComplex.from_json(json.loads(text))
        except (ValueError, KeyError, TypeError) as exc:
            raise _UsageError("cannot parse complex JSON: %s" % exc)
        source = "stdin"
    report = c.verify()
    payload = {"suite": "complex", "source": source}
    payload.update(report)
    return payload, 0 if report["passed"] else 1


def _cycles_checks(kind):
    symbolic = kind == "split"
    a1 = build_alpha1(_build_complex(kind), defects=symbolic)
    a2 = build_alpha2(_build_complex(kind), defects=symbolic)
    ring = a1.ring
    d2, d3 = a1.complex.d[2], a1.complex.d[3]
    d4 = [row[0] for row in a1.complex.d[4].rows]
    checks = []

    failures, count = [], 0
    for H in odd_subsets(5):
        count += 1
        if not _vec_is_zero(mat_vec(d2, a1.q_n_1(H))):
            failures.append("H=%s" % subset_label(H))
    checks.append(_check("%s: odd-layer sources are cycles for d2" % kind, count, failures))

    failures, count = [], 0
    for K in even_subsets(5):
        for h in range(1, 7):
            count += 1
            if not _vec_is_zero(mat_vec(d3, a1.q_1_1(K, h))):
                failures.append("K=%s h=%d" % (subset_label(K), h))
    checks.append(_check("%s: mixed-layer sources are cycles for d3" % kind, count, failures))

    failures, count = [], 0
    for h in range(1, 7):
        count += 1
        if not _vec_is_zero(mat_vec(d3, a1.q_6_2(h))):
            failures.append("h=%d" % h)
    checks.append(
        _check("%s: second-layer sources are cycles for d3" % kind, count, failures)
    )

    failures, count = [], 0
    count += 1
    if not _vec_is_zero(mat_vec(d3, a1.q_0_1(embed_trivial(ring)))):
        failures.append("trivial summand")
    for theta in all_thetas(5):
        count += 1
        if not _vec_is_zero(mat_vec(d3, a1.q_0_1(embed_so(theta, ring)))):
            failures.append("theta=%r" % (theta,))
    for H in odd_subsets(5):
        count += 1
        if not _vec_is_zero(mat_vec(d3, a1.q_0_2(H))):
            failures.append("H=%s" % subset_label(H))
    checks.append(_check("%s: top-layer sources are cycles for d3" % kind, count, failures))

    failures, count = [], 0
    for g in range(10):
        count += 1
        lift = a1.w12[g]
        expanded = {}
        for a in range(6):
            for b in range(6):
                key = (min(a, b), max(a, b))
                term = lift[a] * d4[b]
                expanded[key] = expanded.get(key, ring.zero()) + term
        expected = {k: v for k, v in expanded.items() if not v.is_zero()}
        if expected != a1.q_1_2(g):
            failures.append("g=%d" % g)
    checks.append(
        _check(
            "%s: symmetric-square sources match their lifted boundaries" % kind,
            count,
            failures,
        )
    )

    d1 = a2.complex.d[1]
    failures, count = [], 0
    for m in range(1, 7):
        count += 1
        wedge = tuple(t for t in range(1, 7) if t != m)
        if not _vec_is_zero(mat_vec(d1, a2.q_6_2(wedge))):
            failures.append("missing=%d" % m)
    checks.append(
        _check(
            "%s: pair-family second-layer sources are cycles for d1" % kind,
            count,
            failures,
        )
    )
    return checks


def _cycles_report(args):
    checks = []
    for kind in ("split", "pfaffian"):
        checks.extend(_cycles_checks(kind))
    payload = _suite_payload("cycles", checks)
    return payload, 0 if payload["passed"] else 1


def _palmer_report(args):
    checks = []
    for kind in ("split", "pfaffian"):
        maps = build_alpha2(_build_complex(kind), defects=kind == "split")
        failures, count = [], 0
        for v1 in range(10):
            for v2 in range(v1, 10):
                for xs in combinations(range(1, 7), 4):
                    count += 1
                    if not palmer_check(maps.complex, maps, v1, v2, xs)[2]:
                        failures.append("v1=%d v2=%d xs=%r" % (v1, v2, xs))
        checks.append(
            _check(
                "%s: four-argument multiplication relation" % kind, count, failures
            )
        )
    payload = _suite_payload("palmer", checks)
    return payload, 0 if payload["passed"] else 1


def _alpha1_dictionary(pf_ring):
    """Images of the sixteen first-family defect parameters: singletons
    die, triples become the complementary-pair variable, the top one
    becomes the extra generator."""
    phi = {}
    for H in odd_subsets(5):
        if len(H) == 1:
            phi[defect_name(H)] = pf_ring.zero()
        elif len(H) == 3:
            i, j = complement(H, 5)
            phi[defect_name(H)] = pf_ring.var("x%d%d" % (i, j))
        else:
            phi[defect_name(H)] = pf_ring.var("y")
    return phi


def _alpha2_dictionary(pf_ring):
    """Images of the second-family defect parameters: b^k_{i,j} with all
    indices below six becomes minus the complementary-pair variable,
    parameters touching index six die, and the surviving second-layer
    parameter becomes minus the extra generator."""
    phi = {}
    for (k, i, j) in B_TRIPLES:
        if j == 6:
            phi[b_name(k, i, j)] = pf_ring.zero()
        else:
            a, b = [t for t in range(1, 6) if t not in (k, i, j)]
            phi[b_name(k, i, j)] = -pf_ring.var("x%d%d" % (a, b))
    phi.update({c_name(k, m): pf_ring.zero() for (k, m) in C_PAIRS})
    phi["c1_1"] = -pf_ring.var("y")
    return phi


def _duality_report(args):
    split = build_split()
    pf = build_pfaffian_section()
    checks = []

    s1 = build_alpha1(split, defects=True)
    p1 = build_alpha1(pf, defects=False)
    phi = _alpha1_dictionary(pf.ring)

    failures, count = [], 0
    for g in range(10):
        for h in range(6):
            count += 1
            if s1.w12[g][h].substitute(phi, pf.ring) != pf.d[3].rows[g][h]:
                failures.append("w12 g=%d h=%d" % (g, h))
    d4 = [row[0] for row in pf.d[4].rows]
    two = pf.ring.const(2)
    for h in range(1, 6):
        count += 1
        if s1.w62[h].substitute(phi, pf.ring) != two * d4[h - 1]:
            failures.append("w62 h=%d" % h)
    count += 1
    if s1.w62[6].substitute(phi, pf.ring) != -d4[5]:
        failures.append("w62 h=6")
    checks.append(
        _check(
            "first family: split top maps specialize to the section differentials",
            count,
            failures,
        )
    )

    pr = p1.ring
    failures, count = [], 0
    for g in range(10):
        for h in range(6):
            count += 1
            entry = split.d[3].rows[g][h]
            expected = pr.const(entry.constant_value()) if entry.terms else pr.zero()
            if p1.w12[g][h] != expected:
                failures.append("w12 g=%d h=%d" % (g, h))
    for h in range(1, 7):
        count += 1
        entry = split.d[4].rows[h - 1][0]
        expected = -pr.const(entry.constant_value()) if entry.terms else pr.zero()
        if p1.w62[h] != expected:
            failures.append("w62 h=%d" % h)
    checks.append(
        _check(
            "first family: section top maps carry the split differentials",
            count,
            failures,
        )
    )

    s2 = build_alpha2(split, defects=True)
    p2 = build_alpha2(pf, defects=False)
    sr = s2.ring
    kill = {b_name(k, i, 6): 0 for k in range(1, 6) for i in range(k + 1, 6)}
    phi2 = _alpha2_dictionary(pf.ring)

    failures, count = [], 0
    for m in range(1, 7):
        vec = [p.substitute(kill, sr) for p in s2.w62[m]]
        for r in range(10):
            count += 1
            img = vec[r].substitute(phi2, pf.ring) * ((-1) ** (m + 1))
            if img != pf.d[3].rows[r][m - 1]:
                failures.append("w62 m=%d r=%d" % (m, r))
    for l in range(1, 7):
        count += 1
        img = s2.w12[l - 1].substitute(kill, sr).substitute(phi2, pf.ring)
        if img != -pf.d[4].rows[l - 1][0]:
            failures.append("w12 l=%d" % l)
    checks.append(
        _check(
            "second family: split top maps specialize to the section differentials",
            count,
            failures,
        )
    )

    failures, count = [], 0
    for m in range(1, 7):
        for r in range(10):
            count += 1
            want = split.d[3].rows[r][m - 1].constant_value()
            got = p2.w62[m][r].constant_value() * (-1) ** m
            if got != want:
                failures.append("w62 m=%d r=%d" % (m, r))
    split_d4 = [split.d[4].rows[r][0].constant_value() for r in range(6)]
    for l in range(6):
        count += 1
        if p2.w12[l].constant_value() != split_d4[l]:
            failures.append("w12 l=%d" % (l + 1))
    checks.append(
        _check(
            "second family: section top maps carry the split differentials",
            count,
            failures,
        )
    )
    payload = _suite_payload("duality", checks)
    return payload, 0 if payload["passed"] else 1


def _cmd_verify(args):
    if args.suite == "complex":
        return _complex_report(args)
    if args.suite == "cycles":
        return _cycles_report(args)
    if args.suite == "palmer":
        return _palmer_report(args)
    return _duality_report(args)


# -- Lie layer ----------------------------------------------------------


def _graph_for(type_name):
    return DynkinGraph.e(_GRAPH_RANKS[type_name])


def _cmd_lie(args):
    graph = _graph_for(args.graph_type)
    if args.topic == "cartan":
        rs = RootSystem(graph)
        payload = {
            "type": args.graph_type,
            "rank": graph.n,
            "nodes": list(graph.nodes),
            "edges": [[a, b] for a, b in graph.edges],
            "cartan_matrix": [list(row) for row in graph.cartan_matrix()],
            "root_count": len(rs.roots),
            "positive_root_count": len(rs.positive_roots),
        }
        return payload, 0
    if args.topic == "grading":
        node = args.a
        if node not in graph.nodes:
            raise _UsageError("--a %d is not a node of %s" % (node, args.graph_type))
        grading = grade_decomposition(graph, node)
        payload = {
            "type": args.graph_type,
            "node": node,
            "grading": [[d, dim] for d, dim in grading],
            "dimension": sum(dim for _, dim in grading),
        }
        return payload, 0
    if args.topic == "weyl":
        rs = RootSystem(graph)
        payload = {
            "type": args.graph_type,
            "rank": graph.n,
            "order": weyl_order(graph),
            "longest_length": len(rs.positive_roots),
        }
        return payload, 0
    for node in (args.a, args.b):
        if node not in graph.nodes:
            raise _UsageError("node %d is outside %s" % (node, args.graph_type))
    cosets = double_cosets(graph, args.a, args.b)
    payload = {
        "type": args.graph_type,
        "a": args.a,
        "b": args.b,
        "count": len(cosets),
        "sizes": [dc.size for dc in cosets],
        "representatives": [list(dc.representative.word) for dc in cosets],
        "total": sum(dc.size for dc in cosets),
    }
    return payload, 0


# -- orbit quadrics -----------------------------------------------------


def _cmd_plucker(args):
    if args.topic == "basis":
        quadrics = plucker_quadrics()
        payload = {
            "type": "E6",
            "node": 1,
            "count": len(quadrics),
            "quadrics": [
                {
                    "index": q.index,
                    "weight": list(q.weight),
                    "coefficients": {
                        "%d,%d" % pair: int(v) for pair, v in sorted(q.coeffs.items())
                    },
                }
                for q in quadrics
            ],
        }
        return payload, 0
    kind = args.complex_kind
    symbolic = kind == "split" and args.generic
    maps = build_alpha2(_build_complex(kind), defects=symbolic)
    w1 = assemble_w1(maps)
    ok, witness = w1.check_plucker()
    payload = {
        "complex": kind,
        "symbolic_defects": symbolic,
        "coords": [str(p) for p in w1.coords],
        "passed": ok,
    }
    if not ok:
        payload["violating_index"] = witness.index
    return payload, 0 if ok else 1


# -- square matrix and extraction ---------------------------------------


def _cmd_assemble(args):
    c = build_split()
    a1 = build_alpha1(c, defects=args.generic)
    a2 = build_alpha2(c, defects=args.generic)
    mm = assemble_M_split(a1, a2)
    payload = mm.to_json()
    payload["generic"] = bool(args.generic)
    return payload, 0


def _cmd_extract(args):
    c = build_pfaffian_section()
    maps = build_alpha2(c, defects=False)
    presentation = extract_pfaffian_presentation(c, maps)
    payload = presentation.to_json()
    payload["verified"] = True
    return payload, 0


# -- fixtures -----------------------------------------------------------


def _cmd_fixtures(args):
    return tables_payload(), 0


# -- parser -------------------------------------------------------------


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--out", metavar="PATH", help="write the JSON payload to PATH instead of stdout"
    )
    common.add_argument(
        "--seed",
        type=int,
        default=0,
        metavar="K",
        help="seed for randomized checks (fixed default keeps runs reproducible)",
    )

    parser = argparse.ArgumentParser(
        prog="strucmaps",
        description="exact structure maps on length-four Gorenstein resolutions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "build", parents=[common], help="emit a canonical resolution as JSON"
    )
    p.add_argument("kind", choices=["split", "pfaffian"])
    p.add_argument(
        "--n", type=int, default=6, help="number of generators (only 6 is implemented)"
    )
    p.set_defaults(handler=_cmd_build)

    p = sub.add_parser(
        "hsm1", parents=[common], help="first family of higher structure maps"
    )
    p.add_argument(
        "--complex",
        dest="complex_kind",
        choices=["split", "pfaffian"],
        default="split",
    )
    group = p.add_mutually_exclusive_group()
    group.add_argument(
        "--generic",
        action="store_true",
        help="keep the defect parameters symbolic (split complex)",
    )
    group.add_argument(
        "--specialize",
        metavar="VAR=VALUE,...",
        help="substitute rational values into the generic maps",
    )
    p.set_defaults(handler=_cmd_hsm1)

    p = sub.add_parser(
        "hsm2", parents=[common], help="second family of higher structure maps"
    )
    p.add_argument(
        "--complex",
        dest="complex_kind",
        choices=["split", "pfaffian"],
        default="split",
    )
    p.add_argument(
        "--generic",
        action="store_true",
        help="keep the defect parameters symbolic (split complex)",
    )
    p.set_defaults(handler=_cmd_hsm2)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=["complex", "cycles", "palmer", "duality"])
    p.add_argument(
        "--complex",
        dest="complex_kind",
        choices=["split", "pfaffian"],
        default=None,
        help="for the complex suite: verify this canonical complex instead of stdin JSON",
    )
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("lie", parents=[common], help="Weyl-group and grading data")
    p.add_argument("topic", choices=["cartan", "grading", "weyl", "double-cosets"])
    p.add_argument(
        "--type",
        dest="graph_type",
        choices=sorted(_GRAPH_RANKS),
        default="E6",
    )
    p.add_argument(
        "--a",
        type=int,
        default=1,
        help="grading node, or the acting parabolic for double-cosets",
    )
    p.add_argument(
        "--b", type=int, default=1, help="coset parabolic node for double-cosets"
    )
    p.set_defaults(handler=_cmd_lie)

    p = sub.add_parser(
        "plucker", parents=[common], help="orbit quadrics and their vanishing"
    )
    p.add_argument("topic", choices=["basis", "check"])
    p.add_argument(
        "--complex",
        dest="complex_kind",
        choices=["split", "pfaffian"],
        default="pfaffian",
    )
    p.add_argument(
        "--generic",
        action="store_true",
        help="check with symbolic defect parameters (split complex)",
    )
    p.set_defaults(handler=_cmd_plucker)

    p = sub.add_parser(
        "assemble", parents=[common], help="assemble the square transition matrix"
    )
    p.add_argument("target", choices=["m-split"])
    p.add_argument(
        "--generic",
        action="store_true",
        help="assemble with symbolic defect parameters",
    )
    p.set_defaults(handler=_cmd_assemble)

    p = sub.add_parser(
        "extract",
        parents=[common],
        help="extract and verify the skew presentation of the section complex",
    )
    p.set_defaults(handler=_cmd_extract)

    p = sub.add_parser(
        "fixtures", parents=[common], help="emit a frozen fixture dataset"
    )
    p.add_argument("name", choices=["betti-e8"])
    p.set_defaults(handler=_cmd_fixtures)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    try:
        payload, code = args.handler(args)
    except _UsageError as exc:
        sys.stderr.write("usage error: %s\n" % exc)
        return 2
    except (LiftFailure, AssemblyError, ExtractionFailed) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    _emit(payload, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
