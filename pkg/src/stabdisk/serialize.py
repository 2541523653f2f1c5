"""JSON formats. Rationals travel as "num/den" strings so round trips are
bit-exact."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .construction import Realization, TaggedDisk
from .hypergraph import Hypergraph
from .kernel import Circle, GeometryError, Point2

REALIZATION_FORMAT = "stabdisk-realization"


class MalformedInput(ValueError):
    pass


def q_to_json(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def q_from_json(s: Any) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise MalformedInput(f"not a rational: {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"not a rational: {s!r}") from exc


def point_to_json(p: Point2) -> list[str]:
    return [q_to_json(p.x), q_to_json(p.y)]


def point_from_json(v: Any) -> Point2:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise MalformedInput(f"not a point: {v!r}")
    return Point2(q_from_json(v[0]), q_from_json(v[1]))


def circle_to_json(c: Circle) -> dict:
    return {"center": point_to_json(c.center), "radius_sq": q_to_json(c.radius_sq),
            "base_point": point_to_json(c.base_point)}


def circle_from_json(doc: Any) -> Circle:
    try:
        return Circle(point_from_json(doc["center"]), q_from_json(doc["radius_sq"]),
                      point_from_json(doc["base_point"]))
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad circle: {exc}") from exc
    except GeometryError as exc:
        raise MalformedInput(str(exc)) from exc


def realization_to_json(r: Realization) -> dict:
    return {
        "format": REALIZATION_FORMAT,
        "version": 1,
        "kind": r.kind,
        "gamma": q_to_json(r.gamma),
        "anchor_circle": circle_to_json(r.anchor_circle),
        "points": [point_to_json(p) for p in r.points],
        "prescribed": None if r.prescribed is None else [point_to_json(p) for p in r.prescribed],
        "disks": [{
            "circle": circle_to_json(d.circle),
            "edge": sorted(d.edge),
            "role": d.role,
            "witness": None if d.witness is None else point_to_json(d.witness),
        } for d in r.disks],
        "target": r.target.to_json(),
    }


def realization_from_json(doc: Any) -> Realization:
    if not isinstance(doc, dict) or doc.get("format") != REALIZATION_FORMAT:
        raise MalformedInput("not a realization file")
    try:
        disks = tuple(TaggedDisk(circle_from_json(d["circle"]), frozenset(int(v) for v in d["edge"]),
                                 str(d["role"]),
                                 None if d.get("witness") is None else point_from_json(d["witness"]))
                      for d in doc["disks"])
        pre = doc.get("prescribed")
        return Realization(
            points=tuple(point_from_json(p) for p in doc["points"]),
            disks=disks,
            anchor_circle=circle_from_json(doc["anchor_circle"]),
            gamma=q_from_json(doc["gamma"]),
            target=Hypergraph.from_json(doc["target"]),
            prescribed=None if pre is None else tuple(point_from_json(p) for p in pre),
            kind=str(doc.get("kind", "tree")),
        )
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad realization: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(str(exc)) from exc


def coloring_to_json(k: int, colors, **extra) -> dict:
    return {"k": int(k), "colors": [int(c) for c in colors], **extra}


def coloring_from_json(doc: Any) -> tuple[int, list[int]]:
    try:
        k = int(doc["k"])
        colors = [int(c) for c in doc["colors"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad coloring: {exc}") from exc
    if k < 1 or any(not 0 <= c < k for c in colors):
        raise MalformedInput("colors must lie in 0..k-1")
    return k, colors


def points_to_json(points, origin: Point2 | None = None) -> dict:
    doc: dict = {"points": [point_to_json(p) for p in points]}
    if origin is not None:
        doc["origin"] = point_to_json(origin)
    return doc


def points_from_json(doc: Any) -> tuple[list[Point2], Point2 | None]:
    if not isinstance(doc, dict) or not isinstance(doc.get("points"), list):
        raise MalformedInput("points file needs a 'points' list")
    pts = [point_from_json(p) for p in doc["points"]]
    o = doc.get("origin")
    return pts, None if o is None else point_from_json(o)


def load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: {exc}") from exc


def dump_json(doc: Any, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
