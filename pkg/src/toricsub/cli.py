"""Command line interface.

Exit codes: 0 success, 1 singular closure, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from itertools import product
from typing import Any

from .charts import ChartAtlas, build_atlas
from .errors import NotSmooth, SceneSemanticError, ToricError
from .figure import emit_svg, sample_moment_curve, samples_inside
from .lattice import is_primitive, normalize_sign
from .moment import moment_image
from .polytope import DelzantPolytope, DelzantViolation, format_point, format_rational, verify_delzant
from .scene import SceneDocument, equation_to_json, parse_scene, point_to_json
from .smoothness import SINGULAR, classify, format_support
from .subtorus import AffineSubtorus, defining_equations, validate_subspace

EXIT_OK, EXIT_SINGULAR, EXIT_INPUT = 0, 1, 2


def load_scene(path: str) -> SceneDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_scene(fh.read())


def build(doc: SceneDocument) -> tuple[DelzantPolytope, ChartAtlas, AffineSubtorus]:
    poly = verify_delzant(doc.vertices, doc.labels)
    if isinstance(poly, DelzantViolation):
        raise SceneSemanticError(f"not a Delzant polytope: {poly}")
    V = validate_subspace(doc.subspace, doc.offset_exp)
    return poly, build_atlas(poly), V


def _vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


# -- commands -----------------------------------------------------------------

def cmd_verify(doc: SceneDocument, args) -> tuple[dict, list[str], int]:
    result = verify_delzant(doc.vertices, doc.labels)
    if isinstance(result, DelzantViolation):
        report = {"delzant": False, "violations": [
            {"vertex": v.label, "condition": v.condition, "detail": v.detail} for v in result.violations]}
        lines = ["NOT DELZANT"] + [f"  {v.condition} fails at {v.label}: {v.detail}" for v in result.violations]
        return report, lines, EXIT_INPUT
    verts = []
    lines = [f"DELZANT  dimension {result.dimension}, {len(result.vertices)} vertices"]
    for lab, v, dirs, normals in zip(result.labels, result.vertices, result.edge_directions, result.facet_normals):
        verts.append({"label": lab, "point": [format_rational(x) for x in v],
                      "edges": [list(d) for d in dirs], "normals": [list(u) for u in normals]})
        lines.append(f"  {lab} = {format_point(v)}  edges {' '.join(map(_vec, dirs))}"
                     f"  normals {' '.join(map(_vec, normals))}")
    return {"delzant": True, "dimension": result.dimension, "vertices": verts}, lines, EXIT_OK


def cmd_equations(doc: SceneDocument, args) -> tuple[dict, list[str], int]:
    poly, atlas, V = build(doc)
    charts = {}
    lines = [f"q = {' '.join(map(_vec, V.q))}"]
    for lam in atlas.labels:
        eqs = defining_equations(atlas, poly, V, lam)
        charts[lam] = [dict(equation_to_json(f), text=str(f)) for f in eqs]
        lines.append(f"chart {lam}: " + ("; ".join(str(f) for f in eqs) or "(no equations)"))
    return {"q": [list(q) for q in V.q], "charts": charts}, lines, EXIT_OK


def cmd_smoothness(doc: SceneDocument, args) -> tuple[dict, list[str], int]:
    poly, atlas, V = build(doc)
    rep = classify(atlas, poly, V)
    witnesses = [{"chart": w.chart, "support": sorted(i + 1 for i in w.support),
                  "point": point_to_json(w.point), "rank": w.rank, "exact": w.exact} for w in rep.witnesses]
    audit = {lam: [{"support": sorted(i + 1 for i in a.stratum.support), "status": a.status,
                    "min_rank": a.min_rank, "in_closure": a.in_closure} for a in rows]
             for lam, rows in rep.audit.items()}
    report = {"verdict": rep.verdict, "expected_rank": rep.expected_rank, "witnesses": witnesses,
              "flags": list(rep.flags), "audit": audit}
    lines = [f"{rep.verdict}  (required Jacobian rank {rep.expected_rank})"]
    for w in rep.witnesses:
        pt = "(" + ",".join(str(x) for x in point_to_json(w.point)) + ")"
        lines.append(f"  witness: chart {w.chart}, point {pt}, support {format_support(w.support)}, "
                     f"rank {w.rank}" + ("" if w.exact else " (floating point)"))
    lines += [f"  note: {f}" for f in rep.flags]
    if getattr(args, "audit", False):
        for lam, rows in rep.audit.items():
            for a in rows:
                extra = "" if a.min_rank is None else f" min rank {a.min_rank}"
                lines.append(f"  audit {lam} {format_support(a.stratum.support)}: {a.status}{extra}")
    return report, lines, EXIT_SINGULAR if rep.verdict == SINGULAR else EXIT_OK


def cmd_moment(doc: SceneDocument, args) -> tuple[dict, list[str], int]:
    poly, atlas, V = build(doc)
    unchecked = getattr(args, "unchecked", False)
    try:
        img = moment_image(atlas, poly, V, checked=not unchecked)
    except NotSmooth as exc:
        return {"error": str(exc)}, [f"SINGULAR: {exc}"], EXIT_SINGULAR
    hull = [[format_rational(x) for x in v] for v in img.polytope.hull_vertices]
    report: dict[str, Any] = {
        "checked": img.checked,
        "dimension": img.polytope.dimension,
        "hull_vertices": hull,
        "vertices": [],
        "theorem_check": img.theorem_holds,
    }
    lines = ["projected polytope vertices: " + " ".join(format_point(v) for v in img.polytope.hull_vertices)]
    if not img.checked:
        lines.append("  (unchecked mode: outside the smooth hypothesis)")
    for lam in atlas.labels:
        image = img.polytope.point_images[lam]
        entry = {"label": lam, "image": [format_rational(x) for x in image], "status": img.status[lam]}
        line = f"  {lam} -> {format_point(image)}  {img.status[lam]}"
        cert = img.certificates.get(lam)
        if cert is not None:
            entry["fixed_point"] = point_to_json(cert.point)
            entry["certified"] = cert.verified
            line += f"  fixed point {format_point(cert.point)}" + (" verified" if cert.verified else " FAILED")
        report["vertices"].append(entry)
        lines.append(line)
    lines.append("theorem check: " + ("PASS" if img.theorem_holds else "FAIL"))
    return report, lines, EXIT_OK


def cmd_figure(doc: SceneDocument, args) -> tuple[dict, list[str], int]:
    poly, atlas, V = build(doc)
    count = args.samples or int(doc.options.get("samples", 200))
    radius = doc.options.get("radius")
    samples = sample_moment_curve(poly, V, count, radius=float(radius) if radius else None)
    tol = float(doc.options.get("tolerance", 1e-9))
    inside = samples_inside(poly, samples, tol)
    emit_svg(poly, samples, args.output, polyline=V.k == 1)
    report = {"output": args.output, "samples": len(samples), "inside": inside}
    lines = [f"wrote {args.output}: {len(samples)} samples, "
             + ("all inside the polytope" if inside else "SOME OUTSIDE the polytope")]
    return report, lines, EXIT_OK


def primitive_directions(n: int, box: int) -> list[tuple[int, ...]]:
    """Primitive vectors in [-box, box]^n, one per +/- pair."""
    out = set()
    for v in product(range(-box, box + 1), repeat=n):
        if any(v) and is_primitive(v):
            out.add(normalize_sign(v))
    return sorted(out)


def cmd_classify_directions(doc: SceneDocument, args) -> tuple[dict, list[str], int]:
    poly, atlas, _ = build(doc)
    box = args.box if args.box is not None else int(doc.options.get("box", 5))
    results = []
    for p in primitive_directions(doc.dimension, box):
        V = validate_subspace([p], doc.offset_exp)
        results.append((p, classify(atlas, poly, V).verdict))
    smooth = [list(p) for p, v in results if v != SINGULAR]
    report = {"box": box, "results": [{"p": list(p), "verdict": v} for p, v in results], "smooth": smooth}
    lines = [f"p = {_vec(p)}: {v}" for p, v in results]
    lines.append(f"{len(smooth)} smooth directions: " + " ".join(_vec(p) for p in smooth))
    return report, lines, EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "equations": cmd_equations,
    "smoothness": cmd_smoothness,
    "moment": cmd_moment,
    "figure": cmd_figure,
    "classify-directions": cmd_classify_directions,
}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricsub", description="Subtorus closures in toric manifolds.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("scene", help="scene file (JSON)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--timing", action="store_true", help="report elapsed time")
        if name == "smoothness":
            sp.add_argument("--audit", action="store_true", help="list every stratum")
        if name == "moment":
            sp.add_argument("--unchecked", action="store_true", help="allow singular closures")
        if name == "figure":
            sp.add_argument("-o", "--output", required=True, help="SVG output path")
            sp.add_argument("--samples", type=int, default=None)
        if name == "classify-directions":
            sp.add_argument("--box", type=int, default=None, help="entry bound for p")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        doc = load_scene(args.scene)
        report, lines, code = COMMANDS[args.command](doc, args)
    except (ToricError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    elapsed = time.perf_counter() - start
    if args.json:
        if args.timing:
            report["elapsed_seconds"] = round(elapsed, 6)
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        if args.timing:
            lines.append(f"elapsed {elapsed:.3f} s")
        print("\n".join(lines))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
