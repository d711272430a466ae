"""Command line front end.

Every command reads a scene (``--input``), runs one classifier or
construction, and prints a report as text, as a JSON document in the
``fibercut/1`` schema, or as SVG.  ``--oracle`` instead re-checks the
calibration, cut, and brute-force agreement properties on scene files.

Examples::

    fibercut --input fixtures/hopf-right.scene classify a
    fibercut enumerate-torus 4 8 --format doc
    fibercut --input fixtures/torus2-3.scene oracle a "h(a)" 6
    fibercut --oracle --input fixtures --seed 7 --samples 50
"""
from __future__ import annotations

import argparse
import random
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import documents as R
from .catalog import random_arc, random_book
from .composite_calculus import classify_composite_arc, component_graph, divide_arc, rho_via_decomposition
from .diagram import ascii_art, svg
from .dsl import Scene, parse_scene, render_scene
from .errors import BudgetExhaustedWithoutClosure, FibercutError, MixedPositivity, SceneError, UnknownName
from .fiber_calculus import (
    FIBER,
    OpenBook,
    attach_generalized_hopf_band,
    cut_along_arc,
    decide_cut_fiber,
    detect_banding,
    detect_prefiber_case,
    plumb_hopf,
    report,
)
from .intersect import is_embedded
from .oracle import cross_check
from .paths import Arc, ImmersedArc, Loop
from .surgery_twists import classify_crossing_change, fiber_preserving_slopes, mbc1, twist_monodromy_update
from .torus_families import enumerate_fiber_bands, signature_bookkeeping, torus_surface

COMMANDS = {
    "classify": "classify <arc>",
    "cut": "cut <arc>",
    "plumb": "plumb <arc> <sign>",
    "ghopf": "ghopf <immersed-arc> <over|under>",
    "slopes": "slopes <arc>",
    "twist": "twist <arc> <n>",
    "decompose": "decompose <system> <arc>",
    "enumerate-torus": "enumerate-torus <p> <budget>",
    "oracle": "oracle <arc1> <arc2> [budget]",
    "diagram": "diagram <names...>",
    "render": "render",
}

DEFAULT_BUDGET = 6
MAX_ORACLE_VISITS = 8
_APPLIED = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\((.+)\)$")


class UsageError(FibercutError):
    kind = "UsageError"


# -- scene access ------------------------------------------------------------


def load_scene(path: str | Path) -> Scene:
    return parse_scene(Path(path).read_text(encoding="utf-8"))


def resolve(scene: Scene, token: str):
    """A named path, or ``h(name)`` for its image under the monodromy."""
    m = _APPLIED.match(token)
    if m and m.group(1) == scene.monodromy_name:
        g = resolve(scene, m.group(2))
        if not isinstance(g, Arc):
            raise UnknownName(f"{token!r}: the monodromy is applied to arcs only")
        return scene.book.apply(g)
    return scene.get(token)


def _arc(scene: Scene, token: str) -> Arc:
    g = resolve(scene, token)
    if not isinstance(g, Arc):
        raise UsageError(f"{token!r} is not an arc")
    return g


def _int(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {token!r}") from None


def _need(scene: Scene | None, command: str) -> Scene:
    if scene is None:
        raise UsageError(f"{command} needs a scene; pass --input FILE")
    return scene


def _arity(args: Sequence[str], lo: int, hi: int, command: str) -> None:
    if not lo <= len(args) <= hi:
        raise UsageError(f"usage: {COMMANDS[command]}")


# -- commands ------------------------------------------------------------------


def _book_change(op: str, before: OpenBook, after: OpenBook) -> dict:
    G = after.surface
    marks = {k: R.path_doc(G, v) for k, v in after.marks.items() if isinstance(v, (Arc, Loop, ImmersedArc))}
    return {
        "operation": op,
        "input": R.book_doc(before),
        "output": R.book_doc(after),
        "marks": marks,
        "chi_change": G.euler_characteristic() - before.surface.euler_characteristic(),
    }


def _classify(scene: Scene, args, want_svg: bool):
    _arity(args, 1, 1, "classify")
    B, a = scene.book, _arc(scene, args[0])
    rep = report(B, a)
    doc = R.arc_report_doc(B.surface, rep, decide_cut_fiber(B, a), detect_banding(B, a), detect_prefiber_case(B, a))
    pic = svg(B.surface, {args[0]: a, f"{scene.monodromy_name}({args[0]})": rep.image}) if want_svg else None
    return "arc-report", doc, pic


def _cut(scene: Scene, args, want_svg: bool):
    _arity(args, 1, 1, "cut")
    out = cut_along_arc(scene.book, _arc(scene, args[0]))
    return "open-book", _book_change(f"cut {args[0]}", scene.book, out), svg(out.surface) if want_svg else None


def _plumb(scene: Scene, args, want_svg: bool):
    _arity(args, 2, 2, "plumb")
    sign = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}.get(args[1])
    if sign is None:
        raise UsageError(f"sign must be +1 or -1, got {args[1]!r}")
    out = plumb_hopf(scene.book, _arc(scene, args[0]), sign)
    return "open-book", _book_change(f"plumb {args[0]} {sign:+d}", scene.book, out), _marked_svg(out, want_svg)


def _ghopf(scene: Scene, args, want_svg: bool):
    _arity(args, 2, 2, "ghopf")
    ell = resolve(scene, args[0])
    if not isinstance(ell, (Arc, ImmersedArc)):
        raise UsageError(f"{args[0]!r} is not an arc")
    if args[1] not in ("over", "under"):
        raise UsageError(f"side must be over or under, got {args[1]!r}")
    out = attach_generalized_hopf_band(scene.book, ell, args[1])
    return "open-book", _book_change(f"ghopf {args[0]} {args[1]}", scene.book, out), _marked_svg(out, want_svg)


def _marked_svg(B: OpenBook, want: bool) -> str | None:
    if not want:
        return None
    return svg(B.surface, {k: v for k, v in B.marks.items() if isinstance(v, (Arc, Loop, ImmersedArc))})


def _slopes(scene: Scene, args, want_svg: bool):
    _arity(args, 1, 1, "slopes")
    B, a = scene.book, _arc(scene, args[0])
    doc = {"arc": R.arc_doc(B.surface, a), **R.slopes_doc(fiber_preserving_slopes(B, a)), "mbc1": mbc1(B, a)}
    return "slope-set", doc, None


def _twist(scene: Scene, args, want_svg: bool):
    _arity(args, 2, 2, "twist")
    B, a = scene.book, _arc(scene, args[0])
    n = _int(args[1], "n")
    v = classify_crossing_change(B, a, n)
    slope = Fraction(-1, n)
    book = R.book_doc(twist_monodromy_update(B, a, n)) if v.preserving else None
    doc = {
        "arc": R.arc_doc(B.surface, a),
        "n": n,
        "case": v.case,
        "preserving": v.preserving,
        "slope": R.q(slope),
        "slope_in_set": slope in fiber_preserving_slopes(B, a),
        "book": book,
    }
    return "twist-verdict", doc, None


def _decompose(scene: Scene, args, want_svg: bool):
    _arity(args, 2, 2, "decompose")
    B, a = scene.book, _arc(scene, args[1])
    d = divide_arc(B, scene.system(args[0]), a)
    pieces = []
    for comp, pos in zip(d.surface.components, d.piece_positivity):
        H, _ = component_graph(d.surface, comp)
        pieces.append({"chi": H.euler_characteristic(), "boundary_components": len(H.boundary_components), "positivity": pos})
    parts = [
        {"piece": p.piece, "label": p.report.label, "rho": p.report.rho, "t": p.t, "s": p.s}
        for p in d.parts
    ]
    direct = report(B, a)
    try:
        pattern, note = classify_composite_arc(d).pattern, "pieces have uniform positivity"
    except MixedPositivity as e:
        pattern, note = None, str(e)
    doc = {
        "arc": R.arc_doc(B.surface, a),
        "system": args[0],
        "pieces": pieces,
        "parts": parts,
        "rho_formula": rho_via_decomposition(d),
        "rho_direct": direct.rho,
        "label_direct": direct.label,
        "pattern": pattern,
        "pattern_note": note,
    }
    return "decomposition", doc, None


def _enumerate(scene, args, want_svg: bool):
    _arity(args, 2, 2, "enumerate-torus")
    p, budget = _int(args[0], "p"), _int(args[1], "budget")
    if p < 2 or budget < 0:
        raise UsageError("need p >= 2 and budget >= 0")
    e = enumerate_fiber_bands(p, budget)
    chi, sig = signature_bookkeeping(p)
    F = torus_surface(p)
    doc = {
        "p": p,
        "max_visits": budget,
        "examined": e.examined,
        "chi": chi,
        "signature": sig,
        "rows": e.table(),
        "records": [r.to_doc(F) for r in e.records],
    }
    return "enumeration", doc, None


def _oracle(scene: Scene, args, want_svg: bool, budget: int):
    _arity(args, 2, 3, "oracle")
    F = scene.surface
    a, b = _arc(scene, args[0]), _arc(scene, args[1])
    if len(args) == 3:
        budget = _int(args[2], "budget")
    chk = cross_check(F, a, b, budget)

    def prof(s):
        return {
            "rho": s.rho,
            "boundary_signs": list(s.boundary_signs),
            "interior_signs": list(s.interior_signs),
            "fixed": s.fixed,
        }

    doc = {
        "a": R.arc_doc(F, a),
        "b": R.arc_doc(F, b),
        "budget": budget,
        "closed": chk.brute.closed,
        "states": chk.brute.transcript.get("states", 0),
        "brute": prof(chk.brute),
        "cover": prof(chk.cover),
        "agree": chk.agree,
    }
    return "oracle", doc, svg(F, {args[0]: a, args[1]: b}) if want_svg else None


def _diagram(scene: Scene, args, want_svg: bool):
    names = list(args) or list(scene.objects)
    paths = {n: resolve(scene, n) for n in names}
    doc = {"names": names, "ascii": ascii_art(scene.surface, paths)}
    return "diagram", doc, svg(scene.surface, paths, title=" ".join(names))


def scene_doc(scene: Scene) -> dict:
    F = scene.surface
    return {
        "book": R.book_doc(scene.book),
        "objects": {k: R.path_doc(F, v) for k, v in scene.objects.items()},
        "systems": {k: {"kind": kind, "names": list(names)} for k, (kind, names) in scene.systems.items()},
        "text": render_scene(scene),
    }


def run_command(scene: Scene | None, argv: Sequence[str], budget: int = DEFAULT_BUDGET, want_svg: bool = False) -> dict:
    """Run one command and return its report envelope; errors become error reports."""
    line = " ".join(argv)
    try:
        if not argv:
            raise UsageError("no command given; one of " + ", ".join(COMMANDS))
        name, args = argv[0], list(argv[1:])
        if name not in COMMANDS:
            raise UsageError(f"unknown command {name!r}; one of " + ", ".join(COMMANDS))
        if name == "enumerate-torus":
            kind, doc, pic = _enumerate(scene, args, want_svg)
        elif name == "render":
            s = _need(scene, name)
            kind, doc, pic = "scene", scene_doc(s), svg(s.surface, dict(s.objects)) if want_svg else None
        elif name == "oracle":
            kind, doc, pic = _oracle(_need(scene, name), args, want_svg, budget)
        else:
            handler = {
                "classify": _classify,
                "cut": _cut,
                "plumb": _plumb,
                "ghopf": _ghopf,
                "slopes": _slopes,
                "twist": _twist,
                "decompose": _decompose,
                "diagram": _diagram,
            }[name]
            kind, doc, pic = handler(_need(scene, name), args, want_svg)
    except (FibercutError, ValueError) as err:
        return R.error_doc(line, err)
    return R.envelope(line, kind, doc, pic)


# -- oracle mode -----------------------------------------------------------------


def _scene_files(inputs: Sequence[str]) -> list[Path]:
    out: list[Path] = []
    for item in inputs or ["fixtures"]:
        p = Path(item)
        out.extend(sorted(p.glob("*.scene")) if p.is_dir() else [p])
    return out


def _calibration_sign(B: OpenBook) -> int | None:
    """+1 or -1 when ``B`` is a Hopf annulus book, otherwise None."""
    F = B.surface
    letters = getattr(B.monodromy, "letters", ())
    if len(F.rotations) == 1 and len(F.pairs) == 1 and len(F.boundary_components) == 2 and len(letters) == 1:
        e = letters[0][1]
        return e if e in (1, -1) else None
    return None


def check_scene(source: str, scene: Scene, budget: int) -> list[dict]:
    """Calibration, cut, and oracle checks for every arc of one scene."""
    B, F = scene.book, scene.surface
    checks = []

    def add(obj, criterion, status, detail):
        checks.append({"source": source, "object": obj, "criterion": criterion, "status": status, "detail": detail})

    hopf = _calibration_sign(B)
    for name, g in scene.objects.items():
        if not isinstance(g, Arc):
            continue
        rep = report(B, g)
        got = (rep.rho, rep.i_boundary, rep.i_total)
        if hopf is not None and not rep.boundary_parallel:
            want = (0, Fraction(hopf), Fraction(1))
            banding = detect_banding(B, g)
            ok = got == want and banding == f"hopf({hopf:+d})"
            add(name, "calibration", "pass" if ok else "fail", f"(rho, i_b, i_total) = {_triple(got)}, {banding}")
        verdict = decide_cut_fiber(B, g)
        detail = f"{verdict}, i_total = {R.q(rep.i_total)}"
        ok = (verdict == FIBER) == (rep.i_total == 1)
        if verdict != "not-fiber-by-this-surface":
            try:
                out = cut_along_arc(B, g)
                gain = out.surface.euler_characteristic() - F.euler_characteristic()
                ok = ok and gain == 1
                detail += f", chi change {gain:+d}"
            except FibercutError as err:
                ok, detail = False, f"{detail}, cut failed: {err}"
        add(name, "cut", "pass" if ok else "fail", detail)
        image = rep.image
        if max(len(g.path), len(image.path)) > MAX_ORACLE_VISITS or not is_embedded(F, g):
            add(name, "oracle", "skip", "outside the brute-force size bounds")
            continue
        try:
            chk = cross_check(F, g, image, budget)
        except BudgetExhaustedWithoutClosure:
            add(name, "oracle", "skip", f"search frontier open after {budget} moves")
            continue
        add(name, "oracle", "pass" if chk.agree else "fail", f"rho = {chk.brute.rho} (brute) vs {chk.cover.rho} (cover)")
    return checks


def _triple(t) -> str:
    return "(" + ", ".join(R.q(x) for x in t) + ")"


def random_scenes(seed: int, count: int) -> list[tuple[str, str]]:
    """Seeded small books with one arc each, as scene text."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        B = random_book(rng, max_vertices=2, max_edges=3, length=2)
        a = random_arc(B.surface, rng, max_len=3)
        if a is None:
            continue
        out.append((f"random-{seed}-{len(out)}", render_scene(Scene(B, {"a": a}))))
    return out


def oracle_mode(inputs: Sequence[str], budget: int, seed: int | None, samples: int) -> dict:
    sources: list[tuple[str, str]] = [(str(p), p.read_text(encoding="utf-8")) for p in _scene_files(inputs)]
    if samples:
        sources += random_scenes(0 if seed is None else seed, samples)
    checks: list[dict] = []
    for source, text in sources:
        try:
            scene = parse_scene(text)
        except SceneError as err:
            checks.append({"source": source, "object": "", "criterion": "cut", "status": "fail", "detail": str(err)})
            continue
        checks.extend(check_scene(source, scene, budget))
    count = {s: sum(c["status"] == s for c in checks) for s in ("pass", "fail", "skip")}
    result = {
        "sources": [s for s, _ in sources],
        "checks": checks,
        "passed": count["pass"],
        "failed": count["fail"],
        "skipped": count["skip"],
    }
    return R.envelope("--oracle", "oracle-run", result)


# -- text output -------------------------------------------------------------------


def _arc_text(d: dict) -> str:
    pt = lambda p: f"{p['vertex']}({p['corner']}{'' if p['key'] == '0' else ', ' + p['key']})"  # noqa: E731
    return " ".join([pt(d["start"]), *d["path"], pt(d["end"])])


def _book_text(d: dict) -> str:
    word = " ".join(f"t([{', '.join(x['loop'])}])^{x['exponent']}" for x in d["monodromy"]) or "id"
    s = d["surface"]
    return f"{len(s['vertices'])} disks, {len(s['edges'])} bands, monodromy {word} ({d['positivity']})"


def format_text(doc: dict) -> str:
    r, kind = doc["result"], doc["kind"]
    if kind == "error":
        where = f" at {r['line']}:{r['column']}" if r["line"] else ""
        return f"error: {r['type']}{where}: {r['message']}\n"
    if kind == "arc-report":
        g = r["geometry"]
        return (
            f"arc      {_arc_text(r['arc'])}\n"
            f"image    {_arc_text(r['image'])}\n"
            f"label    {r['label']}\n"
            f"rho = {g['rho']}  i_boundary = {g['i_boundary']}  i_total = {g['i_total']}\n"
            f"verdict  {r['verdict']}\nbanding  {r['banding']}\nprefiber {r['prefiber']}\n"
        )
    if kind == "open-book":
        lines = [f"{r['operation']}: chi change {r['chi_change']:+d}", f"before  {_book_text(r['input'])}", f"after   {_book_text(r['output'])}"]
        lines += [f"mark {k}: {_arc_text(v) if 'start' in v else v['cycle']}" for k, v in r["marks"].items()]
        return "\n".join(lines) + "\n"
    if kind == "slope-set":
        return f"{r['family']} around {r['base']}: {', '.join(r['members']) or '(none)'}\nmbc1 = {r['mbc1']}\n"
    if kind == "twist-verdict":
        tail = f"\nnew book {_book_text(r['book'])}" if r["book"] else ""
        return f"n = {r['n']}: {r['case']} (slope {r['slope']}, in slope set: {r['slope_in_set']}){tail}\n"
    if kind == "decomposition":
        parts = "; ".join(f"piece {p['piece']} {p['label']} rho {p['rho']} t {p['t']} s {p['s']}" for p in r["parts"])
        return (
            f"parts    {parts}\nrho      {r['rho_formula']} from the parts, {r['rho_direct']} directly\n"
            f"pattern  {r['pattern']} ({r['pattern_note']})\ndirect   {r['label_direct']}\n"
        )
    if kind == "enumeration":
        head = f"T(2,{r['p']}), visits <= {r['max_visits']}: {r['examined']} arcs examined, chi {r['chi']}, signature {r['signature']}"
        rows = [f"  {row['link']:<16} {row['sum']:<20} classes {row['classes']}  arcs {row['arcs']}" for row in r["rows"]]
        return "\n".join([head, *rows]) + "\n"
    if kind == "oracle":
        b, c = r["brute"], r["cover"]
        state = "closed" if r["closed"] else "open"
        return (
            f"brute  rho {b['rho']} boundary {b['boundary_signs']} interior {b['interior_signs']} ({state}, {r['states']} states)\n"
            f"cover  rho {c['rho']} boundary {c['boundary_signs']} interior {c['interior_signs']}\n"
            f"agree  {r['agree']}\n"
        )
    if kind == "oracle-run":
        bad = [f"FAIL {c['source']} {c['object']} [{c['criterion']}]: {c['detail']}" for c in r["checks"] if c["status"] == "fail"]
        return "\n".join([*bad, f"{r['passed']} passed, {r['failed']} failed, {r['skipped']} skipped"]) + "\n"
    if kind == "diagram":
        return r["ascii"]
    if kind == "scene":
        return r["text"]
    return R.dumps(r) + "\n"


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fibercut",
        description="Decide which cuts, bandings, and twists of a fiber surface give fibers again.",
        epilog="commands: " + "; ".join(COMMANDS.values()),
    )
    ap.add_argument("command", nargs="*", help="command and its arguments")
    ap.add_argument("--input", action="append", default=[], metavar="FILE", help="scene file (directories allowed with --oracle)")
    ap.add_argument("--format", choices=("text", "doc", "svg"), default="text")
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="oracle move budget")
    ap.add_argument("--seed", type=int, default=None, help="seed for randomized oracle samples")
    ap.add_argument("--samples", type=int, default=0, help="random scenes to add in --oracle mode")
    ap.add_argument("--oracle", action="store_true", help="cross-check mode over scene files")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    if ns.oracle:
        doc = oracle_mode(ns.input, ns.budget, ns.seed, ns.samples)
        ok = doc["result"]["failed"] == 0
    else:
        scene = None
        try:
            if len(ns.input) > 1:
                raise UsageError("give at most one --input outside --oracle mode")
            if ns.input:
                scene = load_scene(ns.input[0])
        except (FibercutError, OSError) as err:
            doc = R.error_doc("load " + ns.input[0], err)
        else:
            doc = run_command(scene, ns.command, ns.budget, want_svg=ns.format == "svg")
        ok = doc["ok"]
    R.validate(doc)
    if ns.format == "doc":
        sys.stdout.write(R.dumps(doc) + "\n")
    elif ns.format == "svg" and "svg" in doc:
        sys.stdout.write(doc["svg"])
    else:
        sys.stdout.write(format_text(doc))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
