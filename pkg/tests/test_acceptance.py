"""Acceptance checks, one test per criterion.

Every check is exact: counts, signs, and rationals are compared with
``==`` and every tolerance is zero.  Each test prints a single
``criterion N: PASS|FAIL ...`` line (visible with ``pytest -s``) before
asserting.
"""
from __future__ import annotations

import io
import json
import random
from contextlib import redirect_stdout
from fractions import Fraction

from helpers import (
    FIXTURES,
    VERDICTS,
    composite_fixture,
    embedded_arc,
    hopf,
    immersed_arc,
    random_torus_book,
    scene_files,
)

from fibercut import cli
from fibercut.catalog import (
    annulus_book,
    four_class_fixtures,
    random_arc,
    random_book,
    random_loop,
    random_surface,
    spanning_arc,
)
from fibercut.composite_calculus import classify_composite_arc, divide_arc, rho_via_decomposition
from fibercut.documents import validate
from fibercut.dsl import parse_scene, render_scene
from fibercut.errors import BudgetExhaustedWithoutClosure, RightVeeringViolation
from fibercut.fiber_calculus import (
    FIBER,
    NOT_FIBER,
    OpenBook,
    attach_generalized_hopf_band,
    cut_along_arc,
    decide_cut_fiber,
    detect_banding,
    plumb_hopf,
    report,
)
from fibercut.intersect import label_of, minimal_position
from fibercut.mapping_classes import right_veering_witness
from fibercut.oracle import cross_check
from fibercut.paths import Arc
from fibercut.surgery_twists import classify_crossing_change, fiber_preserving_slopes, twist_monodromy_update
from fibercut.torus_families import (
    class_key,
    enumerate_fiber_bands,
    involution,
    sum_boundary_count,
    torus_open_book,
)
from fibercut.twist import make_word, mcg_equal


def verdict_line(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    VERDICTS.append(line)
    print(line)


def test_criterion_01_hopf_calibration():
    got = {}
    for sign in (1, -1):
        B, a = hopf(sign), spanning_arc()
        rep = report(B, a)
        got[sign] = ((rep.rho, rep.i_boundary, rep.i_total), detect_banding(B, a))
    want = {
        1: ((0, Fraction(1), Fraction(1)), "hopf(+1)"),
        -1: ((0, Fraction(-1), Fraction(1)), "hopf(-1)"),
    }
    verdict_line(1, got == want, f"right {got[1]}, left {got[-1]}")
    assert got == want


def _cut_cases():
    for name, (B, a) in four_class_fixtures().items():
        yield name, B, a
    for k in range(-4, 5):
        yield f"annulus t^{k}", annulus_book(k), spanning_arc()
    rng = random.Random(2024)
    made = 0
    while made < 50:
        B = random_book(rng, max_vertices=3, max_edges=4, length=3)
        a = random_arc(B.surface, rng, max_len=4)
        if a is None:
            continue
        made += 1
        yield f"random {made}", B, a


def test_criterion_02_cut_fiber_iff_total_index_one():
    cases = bad = cuts = 0
    problems = []
    for name, B, a in _cut_cases():
        cases += 1
        rep = report(B, a)
        verdict = decide_cut_fiber(B, a)
        ok = (verdict == FIBER) == (rep.i_total == 1)
        if verdict != NOT_FIBER:
            cuts += 1
            out = cut_along_arc(B, a)
            ok = ok and out.surface.euler_characteristic() == B.surface.euler_characteristic() + 1
        if not ok:
            bad += 1
            problems.append(name)
    verdict_line(2, bad == 0 and cases >= 63, f"{cases} cases, {cuts} cuts, {bad} violations {problems[:5]}")
    assert cases >= 63
    assert bad == 0


def _oracle_pairs(rng: random.Random):
    """Small instances: an arc against its image, or against a second arc."""
    while True:
        B = random_book(rng, max_vertices=2, max_edges=3, length=2)
        F = B.surface
        a = random_arc(F, rng, max_len=3, essential=False)
        if a is None:
            continue
        if rng.random() < 0.6:
            yield F, a, B.apply(a)
        else:
            b = random_arc(F, rng, max_len=3, essential=False)
            if b is not None and b != a:
                yield F, a, b


def test_criterion_03_oracle_equivalence():
    rng = random.Random(31)
    closed = agree = unclosed = 0
    mismatches = []
    for F, a, b in _oracle_pairs(rng):
        if closed >= 220 or closed + unclosed >= 2000:
            break
        if max(len(a.path), len(b.path)) > 8:
            continue
        try:
            chk = cross_check(F, a, b, 6)
        except BudgetExhaustedWithoutClosure:
            unclosed += 1
            continue
        closed += 1
        if chk.agree:
            agree += 1
        else:
            mismatches.append((a, b))
    ok = closed >= 200 and agree == closed
    verdict_line(3, ok, f"{agree}/{closed} closed instances agree ({unclosed} unclosed excluded)")
    assert closed >= 200
    assert agree == closed, mismatches[:3]


def test_criterion_04_monodromy_round_trips():
    rng = random.Random(404)
    tally = {"plumb": [0, 0], "ghopf": [0, 0], "twist": [0, 0]}

    def record(op, ok):
        tally[op][0] += 1
        tally[op][1] += 0 if ok else 1

    while tally["plumb"][0] < 30:
        B = random_torus_book(rng, exps=(1, -1))
        a = embedded_arc(B.surface, rng)
        P = plumb_hopf(B, a, rng.choice((1, -1)))
        out = cut_along_arc(P, P.marks["spanning"])
        record("plumb", out.surface == B.surface and mcg_equal(B.surface, out.monodromy, B.monodromy))

    while tally["ghopf"][0] < 30:
        B = hopf(rng.choice((1, -1))) if rng.random() < 0.3 else random_torus_book(rng, exps=(1, -1))
        ell = immersed_arc(B.surface, rng)
        if ell is None:
            continue
        G = attach_generalized_hopf_band(B, ell, rng.choice(("over", "under")))
        out = cut_along_arc(G, G.marks["spanning"])
        record("ghopf", out.surface == B.surface and mcg_equal(B.surface, out.monodromy, B.monodromy))

    while tally["twist"][0] < 30:
        B = random_torus_book(rng)
        a = embedded_arc(B.surface, rng)
        n = rng.choice((1, -1, 2, -2, 3))
        if not classify_crossing_change(B, a, n).preserving:
            continue
        there = twist_monodromy_update(B, a, n)
        back = twist_monodromy_update(there, a, -n)
        record("twist", mcg_equal(B.surface, back.monodromy, B.monodromy))

    ok = all(n >= 30 and bad == 0 for n, bad in tally.values())
    verdict_line(4, ok, ", ".join(f"{op} {n - bad}/{n}" for op, (n, bad) in tally.items()))
    assert ok, tally


def _composite_cases(seed: int, count: int):
    rng = random.Random(seed)
    made = 0
    while made < count:
        B, S = composite_fixture(rng, rng.choice((2, 3)))
        F = B.surface
        a = random_arc(F, rng, max_len=7, essential=True)
        if a is None:
            continue
        d = divide_arc(B, S, a)
        if d.n - 1 > 3:
            continue
        made += 1
        yield B, S, a, d


def test_criterion_05_divided_arc_identity():
    total = bad = 0
    for B, _S, a, d in _composite_cases(505, 60):
        total += 1
        direct = minimal_position(B.surface, a, B.apply(a)).rho
        if rho_via_decomposition(d) != direct:
            bad += 1
    ok = total >= 50 and bad == 0
    verdict_line(5, ok, f"{total - bad}/{total} sums give rho from the pieces")
    assert total >= 50
    assert bad == 0


def test_criterion_06_composite_pattern_agreement():
    total = bad = 0
    for B, _S, a, d in _composite_cases(606, 60):
        total += 1
        label = label_of(minimal_position(B.surface, a, B.apply(a)))
        if not classify_composite_arc(d).agrees_with(label):
            bad += 1
    verdict_line(6, bad == 0, f"{bad} disagreements over {total} sums with uniform-sign pieces")
    assert total >= 50
    assert bad == 0


def test_criterion_07_right_veering():
    rng = random.Random(707)
    sampled = violations = 0

    def check(B, a):
        nonlocal sampled, violations
        sampled += 1
        try:
            right_veering_witness(B.surface, B.monodromy, a)
        except RightVeeringViolation:
            violations += 1

    for p in range(2, 7):
        B = torus_open_book(p)
        n = 0
        while n < 30:
            a = random_arc(B.surface, rng, max_len=6, essential=True)
            if a is not None:
                check(B, a)
                n += 1
    books = 0
    while books < 40:
        F = random_surface(rng, max_vertices=3, max_edges=4)
        genus = (2 - F.euler_characteristic() - len(F.boundary_components)) // 2
        loops = [random_loop(F, rng) for _ in range(rng.randint(1, 5))]
        loops = [L for L in loops if L is not None]
        if genus > 2 or not loops:
            continue
        B = OpenBook(F, make_word(F, [(L, 1) for L in loops]))
        books += 1
        for _ in range(5):
            a = random_arc(F, rng, max_len=5, essential=True)
            if a is not None:
                check(B, a)
    verdict_line(7, violations == 0, f"{sampled} arcs on T(2,p<=6) and {books} positive books, {violations} violations")
    assert violations == 0


def test_criterion_08_torus_enumeration():
    notes = []
    ok = True
    for p in (3, 4, 5):
        e = enumerate_fiber_bands(p, 8)
        B = torus_open_book(p)
        F = B.surface
        same = set(e.classes) == set(e.chord_classes)
        books = all(
            r.components == 1
            and r.chi == F.euler_characteristic() + 1
            and r.boundary == sum_boundary_count(r.split)
            and sum(r.split) == p
            for r in e.records
        )
        counts = e.class_counts()
        swapped = True
        for split, n in counts.items():
            if split[0] == split[1]:
                keys = [k for k, s in e.classes.items() if s == split]
                images = {class_key(B, involution(F, e.chord_classes[k][0])) for k in keys}
                swapped = swapped and n == 2 and all(class_key(B, involution(F, e.chord_classes[k][0])) != k for k in keys)
                swapped = swapped and images == set(keys)
        ok = ok and same and books and swapped and bool(e.records)
        notes.append(f"p={p}: {dict(sorted(counts.items()))}")
    verdict_line(8, ok, "; ".join(notes))
    assert ok


def _expected_case(rep, n: int) -> str:
    """The (rho, i_boundary, n) table, restated independently."""
    rho, ib = rep.rho, rep.i_boundary
    if rep.fixed or (rho == 0 and ib == 0):
        return "fiber-preserved-stallings"
    if rho == 0 and abs(ib) == 1:
        if n == -ib:
            return "chi-increases"
        if n == -2 * ib:
            return "fiber-preserved-hopf-reversal"
        return NOT_FIBER
    if rho == 1 and abs(ib) == 1 and n == -ib:
        return "fiber-preserved-unclean"
    return NOT_FIBER


def _fixture_arcs():
    for path in scene_files():
        scene = parse_scene(path.read_text())
        for name, g in scene.objects.items():
            if type(g) is Arc:
                yield f"{path.stem}:{name}", scene.book, g
    for name, (B, a) in four_class_fixtures().items():
        yield name, B, a
    rng = random.Random(909)
    for k in range(40):
        B = random_torus_book(rng)
        yield f"torus {k}", B, embedded_arc(B.surface, rng)


def test_criterion_09_surgery_slopes():
    arcs = checks = bad = 0
    for _name, B, a in _fixture_arcs():
        arcs += 1
        rep = report(B, a)
        slopes = fiber_preserving_slopes(B, a)
        for n in range(-5, 6):
            if n == 0:
                continue
            checks += 1
            v = classify_crossing_change(B, a, n)
            if v.preserving != (Fraction(-1, n) in slopes) or v.case != _expected_case(rep, n):
                bad += 1
    verdict_line(9, bad == 0, f"{checks} (arc, n) pairs over {arcs} arcs, {bad} mismatches")
    assert bad == 0


def _run(argv) -> tuple[int, dict]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main([*argv, "--format", "doc"])
    return code, json.loads(buf.getvalue())


def test_criterion_10_cli_round_trip_and_schema():
    files = scene_files()
    round_trips = sum(parse_scene(render_scene(parse_scene(f.read_text()))) == parse_scene(f.read_text()) for f in files)
    reports = invalid = 0
    for f in files:
        scene = parse_scene(f.read_text())
        commands = [["render"], ["diagram"]]
        for name, g in scene.objects.items():
            if type(g) is Arc:
                commands += [["classify", name], ["slopes", name], ["twist", name, "-1"], ["cut", name]]
        for system in scene.systems:
            commands += [["decompose", system, n] for n, g in scene.objects.items() if type(g) is Arc]
        for cmd in commands:
            code, doc = _run(["--input", str(f), *cmd])
            reports += 1
            try:
                validate(doc)
            except Exception:
                invalid += 1
            if code != (0 if doc["ok"] else 1):
                invalid += 1
    code, doc = _run(["--oracle", "--input", str(FIXTURES), "--seed", "10", "--samples", "80"])
    validate(doc)
    checks = doc["result"]["checks"]
    passed = {c: sum(x["criterion"] == c and x["status"] == "pass" for x in checks) for c in ("calibration", "cut", "oracle")}
    hopf_ok = {x["source"].rsplit("/", 1)[-1] for x in checks if x["criterion"] == "calibration" and x["status"] == "pass"}
    oracle_ok = (
        code == 0
        and doc["result"]["failed"] == 0
        and {"hopf-right.scene", "hopf-left.scene"} <= hopf_ok
        and passed["cut"] >= 63
        and passed["oracle"] >= 100
    )
    ok = round_trips == len(files) and invalid == 0 and oracle_ok
    verdict_line(
        10,
        ok,
        f"{round_trips}/{len(files)} round trips, {reports - invalid}/{reports} valid reports, oracle mode {passed}",
    )
    assert round_trips == len(files)
    assert invalid == 0
    assert oracle_ok, doc["result"]["failed"]
