"""Command line front end.

Exit codes: 0 success (output verified), 1 verification failure or a
construction that could not finish, 2 malformed input.
"""

from __future__ import annotations

import argparse
import itertools
import logging
import math
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .construction import (
    ConstructionError, ConstructionStats, DEFAULT_BUDGET_BITS, PrecisionBudgetExceeded,
    Realization, certify_tree_realization, exposed, realize_h3, realize_tree,
)
from .hypergraph import RootedTree, build_h2, complete_mary_tree
from .kernel import (
    Circle, GeometryError, Point2, PointOnBoundary, perturbation_radius,
    rational_point_on_circle_near,
)
from .polychromatic import (
    OriginInPointSet, color_stabbed_unit_disks, verify_polychromatic,
)
from .ranges import (
    DegenerateInput, DegeneratePosition, delaunay_graph, disk_ranges, grid_oracle_ranges,
    monochromatic_disk_witness, stabbed_unit_disk_ranges, verify_realization,
)
from .render import render_coloring, render_realization
from .serialize import (
    MalformedInput, coloring_from_json, coloring_to_json, dump_json, load_json,
    point_to_json, points_from_json, points_to_json, q_to_json, realization_from_json,
    realization_to_json,
)

log = logging.getLogger("stabdisk")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from None


def _pair(s: str) -> Point2:
    parts = s.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected x,y but got {s!r}")
    return Point2(_rational(parts[0]), _rational(parts[1]))


def _is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


class Report:
    """Delimited ``key: value`` report on stdout."""

    def __init__(self, title: str):
        self.title = title
        self.rows: list[tuple[str, str]] = []

    def add(self, key: str, value) -> None:
        self.rows.append((key, str(value)))

    def emit(self) -> None:
        print(f"=== {self.title} ===")
        for k, v in self.rows:
            print(f"{k}: {v}")
        print("=== end ===")


def unit_circle_points(n: int) -> list[Point2]:
    """n rational points of the unit circle, counterclockwise, evenly spread."""
    c = Circle.unit(Point2.of(0, 0))
    eps = Fraction(1, 8 * n * n)
    out = []
    for j in range(n):
        th = 2 * math.pi * (j + 0.5) / n
        target = Point2(Fraction(math.cos(th)).limit_denominator(1 << 20),
                        Fraction(math.sin(th)).limit_denominator(1 << 20))
        out.append(rational_point_on_circle_near(c, target, eps))
    return out


def generate_tree(t: RootedTree, gamma: Fraction, budget_bits: int,
                  stats: ConstructionStats | None = None) -> Realization:
    c = Circle.unit(Point2.of(0, 0))
    return realize_tree(t, c, unit_circle_points(t.n), gamma, budget_bits, stats=stats)


def random_points(n: int, seed: int, box: int = 3, denom: int = 64) -> list[Point2]:
    rng = random.Random(seed)
    half = box * denom // 2
    seen: set = set()
    out = []
    while len(out) < n:
        p = Point2(Fraction(rng.randint(-half, half), denom), Fraction(rng.randint(-half, half), denom))
        if p not in seen and p != Point2.of(0, 0):
            seen.add(p)
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_generate(args) -> int:
    rep = Report(f"generate {args.kind}")
    t0 = time.perf_counter()
    if args.kind == "points":
        if args.n is None or args.n < 0:
            raise InputError("--n is required for points")
        pts = random_points(args.n, args.seed)
        doc = points_to_json(pts, args.origin or Point2.of(0, 0))
        rep.add("points", len(pts))
        rep.add("seed", args.seed)
        _write(doc, args.out, rep)
        rep.emit()
        return EXIT_OK
    m = args.m
    if m is None or m < 1:
        raise InputError("--m must be a positive integer")
    if args.gamma <= 0 or not _is_dyadic(args.gamma):
        raise InputError("--gamma must be a positive dyadic rational")
    if args.kind in ("tree", "h2"):
        stats = ConstructionStats()
        r = generate_tree(complete_mary_tree(m), args.gamma, args.budget_bits, stats)
        expected = build_h2(m)
        rep.add("steps", stats.steps)
        rep.add("lemma_calls", stats.lemma_calls)
        rep.add("final_delta", q_to_json(stats.final_delta))
    else:
        h3 = realize_h3(m, args.gamma, args.budget_bits)
        rep.add("extensions", f"{h3.completed_extensions}/{h3.planned_extensions}")
        rep.add("budget_status", h3.budget_status)
        if h3.realization is None:
            rep.add("max_coordinate_bits", h3.max_bits)
            rep.emit()
            print(f"error: precision budget of {args.budget_bits} bits exceeded", file=sys.stderr)
            return EXIT_FAIL
        r = h3.realization
        expected = h3.target
    ok = _verify_all(r, rep)
    rep.add("target_matches", r.target.same_edges(expected))
    ok = ok and r.target.same_edges(expected)
    rep.add("points", len(r.points))
    rep.add("disks", len(r.disks))
    rep.add("max_coordinate_bits", r.max_bits())
    rep.add("seconds", f"{time.perf_counter() - t0:.2f}")
    _write(realization_to_json(r), args.out, rep)
    if args.figure:
        from .figures import save_figure
        save_figure(args.figure, r.points, [d.circle for d in r.disks], r.anchor_circle,
                    r.anchor_circle.center, title=f"{args.kind} m={m}")
        rep.add("figure", args.figure)
    rep.emit()
    return EXIT_OK if ok else EXIT_FAIL


def _verify_all(r: Realization, rep: Report) -> bool:
    try:
        v = verify_realization(r)
    except PointOnBoundary as exc:
        rep.add("verify_realization", f"FAIL ({exc})")
        return False
    if not v.ok:
        mm = v.mismatch
        rep.add("verify_realization",
                f"FAIL disk {mm.disk_index}: {mm.reason}; symmetric difference {sorted(mm.symmetric_difference)}")
        return False
    rep.add("verify_realization", "Ok")
    ok = True
    if r.kind == "tree":
        problems = certify_tree_realization(r)
        rep.add("gamma_closeness_and_stabbed", "Ok" if not problems else "FAIL " + "; ".join(problems))
        ok = not problems
    else:
        lost = [k for k, d in enumerate(r.disks) if d.witness is not None and not exposed(r, k)]
        rep.add("exposed_witnesses", "Ok" if not lost else f"FAIL disks {lost}")
        ok = not lost
    return ok


def cmd_verify(args) -> int:
    r = realization_from_json(load_json(args.input))
    rep = Report(f"verify {args.input}")
    rep.add("kind", r.kind)
    rep.add("points", len(r.points))
    rep.add("disks", len(r.disks))
    ok = _verify_all(r, rep)
    rep.add("result", "Ok" if ok else "FAIL")
    rep.emit()
    return EXIT_OK if ok else EXIT_FAIL


def _load_points(path: str, origin: Point2 | None):
    pts, o = points_from_json(load_json(path))
    o = origin or o or Point2.of(0, 0)
    return pts, o


def cmd_color(args) -> int:
    pts, o = _load_points(args.input, args.origin)
    k = args.k
    if k is None or k < 1:
        raise InputError("--k must be a positive integer")
    rep = Report(f"color k={k}")
    t0 = time.perf_counter()
    fam = stabbed_unit_disk_ranges(pts, o)
    colors = color_stabbed_unit_disks(pts, o, k, axis=args.axis, family=fam)
    threshold = 8 * k - 7
    viol = verify_polychromatic(pts, o, k, colors, threshold, family=fam, axis=args.axis)
    rep.add("points", len(pts))
    rep.add("ranges", len(fam.ranges))
    rep.add("threshold", threshold)
    rep.add("violations", len(viol))
    ok = not viol
    if args.grid_resolution is not None:
        grid = grid_oracle_ranges(pts, o, args.grid_resolution)
        gv = verify_polychromatic(pts, o, k, colors, threshold, family=grid, axis=args.axis)
        agree = (not gv) == (not viol) and grid.ranges <= fam.ranges
        rep.add("grid_oracle_ranges", len(grid.ranges))
        rep.add("grid_oracle_verdict", "Ok" if not gv else f"{len(gv)} violations")
        rep.add("grid_oracle_agrees", agree)
        ok = ok and agree
    rep.add("seconds", f"{time.perf_counter() - t0:.2f}")
    doc = coloring_to_json(k, colors, points=[point_to_json(p) for p in pts],
                           origin=point_to_json(o), axis=point_to_json(args.axis),
                           certificate={"threshold": threshold, "ranges_checked": len(fam.ranges),
                                        "violations": [sorted(v.members) for v in viol]})
    _write(doc, args.out, rep)
    if args.figure:
        from .figures import save_figure
        save_figure(args.figure, pts, origin=o, colors=colors, title=f"k={k}")
        rep.add("figure", args.figure)
    rep.emit()
    return EXIT_OK if ok else EXIT_FAIL


def cmd_ranges(args) -> int:
    pts, o = _load_points(args.input, args.origin)
    rep = Report(f"ranges {args.family}")
    fam = stabbed_unit_disk_ranges(pts, o) if args.family == "stabbed" else disk_ranges(pts)
    rep.add("points", len(pts))
    rep.add("ranges", len(fam.ranges))
    ok = fam.recheck()
    rep.add("witness_recheck", "Ok" if ok else "FAIL")
    if args.grid_resolution is not None:
        if args.family != "stabbed":
            raise InputError("the grid oracle covers stabbed unit disks only")
        grid = grid_oracle_ranges(pts, o, args.grid_resolution)
        rep.add("grid_oracle_ranges", len(grid.ranges))
        rep.add("grid_subset", grid.ranges <= fam.ranges)
        rep.add("grid_equal", grid.ranges == fam.ranges)
        ok = ok and grid.ranges <= fam.ranges
    _write(fam.to_json(), args.out, rep)
    rep.emit()
    return EXIT_OK if ok else EXIT_FAIL


@dataclass
class ClusterDemoResult:
    points: list
    edges: list
    colorings: int
    witnessed: int
    planar_bound_ok: bool
    perturbation: Fraction


def perturb_to_general_position(points, circles, seed: int, tries: int = 32):
    """Move every point by less than the realization's perturbation radius
    until no four points are cocircular and no three collinear."""
    rng = random.Random(seed)
    eps = perturbation_radius(points, circles)
    for _ in range(tries):
        step = eps / 2
        moved = [Point2(p.x + step * Fraction(rng.randint(-1 << 16, 1 << 16), 1 << 17),
                        p.y + step * Fraction(rng.randint(-1 << 16, 1 << 16), 1 << 17)) for p in points]
        try:
            edges = delaunay_graph(moved)
        except DegeneratePosition:
            continue
        if any(_collinear(*t) for t in itertools.combinations(moved, 3)):
            continue
        return moved, edges, eps
    raise DegeneratePosition("could not reach general position")


def _collinear(a, b, c) -> bool:
    return (b.x - a.x) * (c.y - a.y) == (b.y - a.y) * (c.x - a.x)


def cluster_demo(m: int, seed: int = 0) -> ClusterDemoResult:
    h3 = realize_h3(m)
    r = h3.realization
    if r is None:
        raise ConstructionError("realization did not finish")
    n = len(r.points)
    if 3 ** n > 10 ** 6:
        raise InputError(f"{3 ** n} colorings are too many to enumerate")
    pts, edges, eps = perturb_to_general_position(list(r.points), [d.circle for d in r.disks], seed)
    # perturbation must not change the hypergraph
    moved = Realization(tuple(pts), r.disks, r.anchor_circle, r.gamma, r.target, None, r.kind)
    if not verify_realization(moved).ok:
        raise ConstructionError("perturbation changed the hypergraph")
    adj = {v: set() for v in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    fam = disk_ranges(pts)
    witnessed = 0
    total = 0
    for col in itertools.product(range(3), repeat=n):
        total += 1
        comp = _mono_component(adj, col, m)
        w = monochromatic_disk_witness(pts, col, m, fam)
        if comp is not None and w is not None:
            members = w[0]
            if not _connected(adj, members):
                raise ConstructionError("monochromatic disk points are not Delaunay-connected")
            witnessed += 1
    return ClusterDemoResult(pts, sorted(edges), total, witnessed,
                             n < 3 or len(edges) <= 3 * n - 6, eps)


def _mono_component(adj, col, m):
    seen: set = set()
    for v in adj:
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen and col[w] == col[v]:
                    seen.add(w)
                    stack.append(w)
        if len(comp) >= m:
            return comp
    return None


def _connected(adj, members) -> bool:
    members = set(members)
    if not members:
        return True
    start = next(iter(members))
    seen, stack = {start}, [start]
    while stack:
        u = stack.pop()
        for w in adj[u] & members:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == members


def cmd_cluster_demo(args) -> int:
    m = args.m if args.m is not None else 2
    if m < 1:
        raise InputError("--m must be positive")
    res = cluster_demo(m, args.seed)
    rep = Report(f"cluster-demo m={m}")
    rep.add("points", len(res.points))
    rep.add("delaunay_edges", " ".join(f"{a}-{b}" for a, b in res.edges))
    rep.add("euler_bound_e<=3v-6", res.planar_bound_ok)
    rep.add("perturbation_radius", q_to_json(res.perturbation))
    rep.add("colorings", res.colorings)
    rep.add("with_monochromatic_cluster", res.witnessed)
    ok = res.witnessed == res.colorings and res.planar_bound_ok
    rep.add("result", "Ok" if ok else "FAIL")
    if args.out:
        _write({"points": [point_to_json(p) for p in res.points],
                "edges": [list(e) for e in res.edges], "colorings": res.colorings,
                "witnessed": res.witnessed}, args.out, rep)
    rep.emit()
    return EXIT_OK if ok else EXIT_FAIL


def cmd_render(args) -> int:
    doc = load_json(args.input)
    if isinstance(doc, dict) and "disks" in doc:
        svg = render_realization(realization_from_json(doc))
    else:
        k, colors = coloring_from_json(doc)
        src = doc if "points" in doc else (load_json(args.points) if args.points else None)
        if src is None:
            raise InputError("coloring file has no points; pass --points")
        pts, o = points_from_json(src)
        if len(pts) != len(colors):
            raise InputError("coloring and points differ in length")
        svg = render_coloring(pts, colors, k, origin=o)
    with open(args.output, "w") as fh:
        fh.write(svg)
    print(f"wrote {args.output}")
    return EXIT_OK


def _write(doc, path: str | None, rep: Report) -> None:
    if path:
        dump_json(doc, path)
        rep.add("output", path)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stabdisk", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build and verify a realization")
    g.add_argument("kind", choices=["tree", "h2", "h3", "points"])
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int, help="number of random points (kind=points)")
    g.add_argument("--gamma", type=_rational, default=Fraction(1, 16))
    g.add_argument("--budget-bits", type=int, default=DEFAULT_BUDGET_BITS)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--origin", type=_pair)
    g.add_argument("--out")
    g.add_argument("--figure", help="also save a PNG figure here")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="re-verify a realization file")
    v.add_argument("input")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("color", help="polychromatic coloring for stabbed unit disks")
    c.add_argument("input", help="points JSON")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--origin", type=_pair)
    c.add_argument("--axis", type=_pair, default=Point2.of(1, 0))
    c.add_argument("--grid-resolution", type=_rational)
    c.add_argument("--out")
    c.add_argument("--figure")
    c.set_defaults(func=cmd_color)

    r = sub.add_parser("ranges", help="enumerate disk ranges of a point set")
    r.add_argument("input", help="points JSON")
    r.add_argument("--family", choices=["stabbed", "disks"], default="stabbed")
    r.add_argument("--origin", type=_pair)
    r.add_argument("--grid-resolution", type=_rational)
    r.add_argument("--out")
    r.set_defaults(func=cmd_ranges)

    d = sub.add_parser("cluster-demo", help="every 3-coloring has a monochromatic Delaunay cluster")
    d.add_argument("--m", type=int, default=2)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--out")
    d.set_defaults(func=cmd_cluster_demo)

    s = sub.add_parser("render", help="draw a realization or coloring as SVG")
    s.add_argument("input")
    s.add_argument("output")
    s.add_argument("--points", help="points JSON for a coloring without points")
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, MalformedInput, OriginInPointSet, DegenerateInput, FileNotFoundError,
            IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PrecisionBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ConstructionError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
