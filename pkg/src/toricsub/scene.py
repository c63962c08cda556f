"""Scene files (JSON) and machine-readable report pieces.

A scene looks like::

    {
      "dimension": 2,
      "polytope": [[0, 0], [2, 0], [0, 2]],
      "labels": ["lambda", "mu", "sigma"],
      "subspace": [[1, 1]],
      "offset_exp": [1, "2"],
      "options": {"samples": 200}
    }

Rationals are integers or strings ``"p/q"``. ``labels``, ``offset_exp`` and
``options`` are optional.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import SceneSemanticError, SceneSyntaxError
from .polytope import format_rational
from .subtorus import BinomialEquation

_KEYS = {"dimension", "polytope", "labels", "subspace", "offset_exp", "options"}
_OPTIONS = {"samples", "tolerance", "box", "radius"}


@dataclass(frozen=True)
class SceneDocument:
    dimension: int
    vertices: tuple[tuple[Fraction, ...], ...]
    subspace: tuple[tuple[int, ...], ...]
    offset_exp: tuple[Fraction, ...]
    labels: tuple[str, ...] | None = None
    options: dict[str, Any] = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.subspace)


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise SceneSemanticError(f"{where}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise SceneSemanticError(f"{where}: cannot read {value!r} as a rational") from None
    raise SceneSemanticError(f"{where}: expected an integer or a \"p/q\" string, got {value!r}")


def _integer(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SceneSemanticError(f"{where}: expected an integer, got {value!r}")
    return value


def _rows(value, where: str, width: int, conv) -> tuple:
    if not isinstance(value, list) or any(not isinstance(r, list) for r in value):
        raise SceneSemanticError(f"{where}: expected a list of rows")
    out = []
    for i, row in enumerate(value):
        if len(row) != width:
            raise SceneSemanticError(f"{where}[{i}]: expected {width} entries, got {len(row)}")
        out.append(tuple(conv(x, f"{where}[{i}]") for x in row))
    return tuple(out)


def parse_scene(text: str) -> SceneDocument:
    """Parse and validate a scene; syntax errors carry line and column."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise SceneSemanticError("top level must be an object")
    unknown = set(data) - _KEYS
    if unknown:
        raise SceneSemanticError(f"unknown keys: {', '.join(sorted(unknown))}")
    for key in ("dimension", "polytope", "subspace"):
        if key not in data:
            raise SceneSemanticError(f"missing key {key!r}")
    n = _integer(data["dimension"], "dimension")
    if n < 1:
        raise SceneSemanticError("dimension must be positive")
    verts = _rows(data["polytope"], "polytope", n, _rational)
    if not verts:
        raise SceneSemanticError("polytope needs at least one vertex")
    sub = _rows(data["subspace"], "subspace", n, _integer)
    if "offset_exp" in data:
        raw = data["offset_exp"]
        if not isinstance(raw, list) or len(raw) != n:
            raise SceneSemanticError(f"offset_exp: expected a list of {n} positive rationals")
        E = tuple(_rational(x, f"offset_exp[{i}]") for i, x in enumerate(raw))
        for i, x in enumerate(E):
            if x <= 0:
                raise SceneSemanticError(f"offset_exp[{i}] must be positive, got {format_rational(x)}")
    else:
        E = (Fraction(1),) * n
    labels = None
    if "labels" in data:
        labels = data["labels"]
        if (not isinstance(labels, list) or len(labels) != len(verts)
                or any(not isinstance(x, str) for x in labels)):
            raise SceneSemanticError("labels: expected one string per polytope row")
        if len(set(labels)) != len(labels):
            raise SceneSemanticError("labels must be distinct")
        labels = tuple(labels)
    options = data.get("options", {})
    if not isinstance(options, dict) or set(options) - _OPTIONS:
        raise SceneSemanticError(f"options: allowed keys are {', '.join(sorted(_OPTIONS))}")
    return SceneDocument(n, verts, sub, E, labels, dict(options))


def dump_scene(doc: SceneDocument) -> str:
    data: dict[str, Any] = {
        "dimension": doc.dimension,
        "polytope": [[format_rational(x) for x in v] for v in doc.vertices],
    }
    if doc.labels is not None:
        data["labels"] = list(doc.labels)
    data["subspace"] = [list(p) for p in doc.subspace]
    data["offset_exp"] = [format_rational(x) for x in doc.offset_exp]
    if doc.options:
        data["options"] = doc.options
    return json.dumps(data, indent=2) + "\n"


def equation_to_json(f: BinomialEquation) -> dict:
    return {"chart": f.chart, "j": f.j, "exponents": list(f.s), "coefficient": format_rational(f.c)}


def equation_from_json(data: dict) -> BinomialEquation:
    try:
        return BinomialEquation(str(data["chart"]), int(data["j"]),
                                tuple(int(x) for x in data["exponents"]), Fraction(data["coefficient"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SceneSemanticError(f"malformed equation record: {exc}") from None


def point_to_json(z) -> list:
    out = []
    for x in z:
        if isinstance(x, (int, Fraction)):
            out.append(format_rational(Fraction(x)))
        else:
            c = complex(x)
            out.append([round(c.real, 12), round(c.imag, 12)])
    return out
