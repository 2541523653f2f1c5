"""Exact realizations of tree hypergraphs near a circle, and of their
extensions.

``realize_tree`` places the vertices of a rooted tree close to prescribed
points of a circle and builds one disk per sibling set and one per
root-to-leaf path, every disk close to that circle. ``realize_extension``
replaces a disk by rotated, slightly enlarged copies and hangs a new tree
realization off a small tangent circle. ``realize_h3`` chains extensions.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .hypergraph import (
    Hypergraph, RootedTree, complete_mary_tree, extend, single_edge_hypergraph,
    siblings_first_order, tree_hypergraph,
)
from .kernel import (
    Circle, GeometryError, NoRationalPointFound, Point2, Q, Side, _ccw_cmp,
    arc_midpoint, bit_size, circles_close, dist_sq, dyadic_below_sqrt,
    floor_pow2, lemma_step, perturbation_radius, points_close, side_of_circle,
    sqrt_bounds, strictly_ccw,
)
from .ranges import verify_realization

log = logging.getLogger(__name__)

DEFAULT_BUDGET_BITS = 1 << 20


class ConstructionError(GeometryError):
    pass


class PrecisionBudgetExceeded(ConstructionError):
    pass


class InvalidOrder(ConstructionError):
    pass


class NoFreeArc(ConstructionError):
    pass


class NoExposedPoint(ConstructionError):
    pass


class InvariantViolation(ConstructionError):
    pass


@dataclass(frozen=True)
class TaggedDisk:
    circle: Circle
    edge: frozenset
    role: str
    witness: Point2 | None = None


@dataclass(frozen=True)
class Realization:
    points: tuple
    disks: tuple
    anchor_circle: Circle
    gamma: Fraction
    target: Hypergraph
    prescribed: tuple | None = None
    kind: str = "tree"

    @property
    def sibling_disks(self) -> list[TaggedDisk]:
        return [d for d in self.disks if d.role == "sibling"]

    @property
    def descendent_disks(self) -> list[TaggedDisk]:
        return [d for d in self.disks if d.role != "sibling"]

    @property
    def circles(self) -> list[Circle]:
        return [d.circle for d in self.disks]

    def max_bits(self) -> int:
        return max([_point_bits(p) for p in self.points]
                   + [_circle_bits(d.circle) for d in self.disks] + [0])


def _point_bits(p: Point2) -> int:
    return max(bit_size(p.x), bit_size(p.y))


def _circle_bits(c: Circle) -> int:
    return max(_point_bits(c.center), bit_size(c.radius_sq), _point_bits(c.base_point))


@dataclass
class AuditEntry:
    kind: str  # "a" move, "b" disk, "c" delta
    detail: str


@dataclass
class ConstructionStats:
    steps: int = 0
    lemma_calls: int = 0
    retries: int = 0
    max_bits: int = 0
    final_delta: Fraction | None = None
    bits_per_step: list = field(default_factory=list)


class ConstructionState:
    """Mutable state of the descendent-disk construction.

    Every mutation goes through :meth:`move`, :meth:`add_disk` or
    :meth:`decrease`, which check the closeness each kind promises.
    """

    def __init__(self, tree: RootedTree, order: list[int], positions: dict,
                 delta: Fraction, budget_bits: int):
        self.tree = tree
        self.order = order
        self.pos = dict(positions)
        self.fixed: set[int] = set()
        self.disk: dict[int, Circle] = {}
        self.delta = delta
        self.budget_bits = budget_bits
        self.audit: list[AuditEntry] = []
        self.processed: set[int] = set()
        self.stats = ConstructionStats()

    # -- the three kinds of operations

    def move(self, v: int, new: Point2) -> None:
        if not points_close(self.pos[v], new, self.delta):
            raise InvariantViolation(f"move of vertex {v} is not shorter than delta")
        self._budget(_point_bits(new))
        self.pos[v] = new
        self.audit.append(AuditEntry("a", f"move {v}"))

    def add_disk(self, v: int, c: Circle, source: Circle | None) -> None:
        if source is not None and not circles_close(c, source, self.delta):
            raise InvariantViolation(f"disk of vertex {v} is not delta-close to its source")
        self._budget(_circle_bits(c))
        self.disk[v] = c
        self.audit.append(AuditEntry("b", f"disk {v}"))

    def decrease(self, value: Fraction) -> None:
        if value < self.delta:
            self.delta = value
            self.audit.append(AuditEntry("c", f"delta 2^{value.denominator.bit_length() - 1}"))

    def _budget(self, bits: int) -> None:
        self.stats.max_bits = max(self.stats.max_bits, bits)
        if bits > self.budget_bits:
            raise PrecisionBudgetExceeded(f"coordinate needs {bits} bits (budget {self.budget_bits})")

    # -- helpers

    def refresh(self, points: Sequence[int] | None = None, skip: Circle | None = None) -> None:
        """Shrink delta so that delta-moves keep the given points (default:
        the fixed ones) on their side of every disk other than ``skip``."""
        pts = [self.pos[v] for v in (self.fixed if points is None else points)]
        circles = [c for c in self.disk.values() if c is not skip]
        self.decrease(perturbation_radius(pts, circles, cap=self.delta))

    def lowest_defined_ancestor(self, v: int) -> int | None:
        u = self.tree.parent[v]
        while u is not None and u not in self.disk:
            u = self.tree.parent[u]
        return u

    def check(self, label: str) -> None:
        """Assert the three step invariants; raise naming ``label`` otherwise."""
        t = self.tree
        for v in range(t.n):
            if v in self.fixed:
                continue
            w = self.lowest_defined_ancestor(v)
            if w is None or side_of_circle(self.pos[v], self.disk[w]) is not Side.ON:
                raise InvariantViolation(f"{label}: unfixed vertex {v} is not on the boundary of B({w})")
            for u, c in self.disk.items():
                if u != w and side_of_circle(self.pos[v], c) is not Side.OUTSIDE:
                    raise InvariantViolation(f"{label}: unfixed vertex {v} touches B({u})")
        for v in range(t.n):
            for r in t.children[v]:
                done = r in self.fixed and r in self.disk
                if (v in self.processed) != done:
                    raise InvariantViolation(f"{label}: child {r} of {v} is in the wrong phase")
        for w, c in self.disk.items():
            inside = {v for v in range(t.n) if side_of_circle(self.pos[v], c) is Side.INSIDE}
            if inside != set(t.path_from_root(w)):
                raise InvariantViolation(f"{label}: B({w}) holds {sorted(inside)}")
            for v in self.fixed:
                if side_of_circle(self.pos[v], c) is Side.ON:
                    raise InvariantViolation(f"{label}: fixed vertex {v} on B({w})")


def _step_inside(p: Point2, c: Circle, delta: Fraction) -> Point2:
    """Move p (on or near the boundary of c) towards the center by < delta."""
    _, hr = sqrt_bounds(c.radius_sq)
    t = min(Fraction(1, 2), floor_pow2(delta / (2 * hr)))
    return Point2(p.x + t * (c.center.x - p.x), p.y + t * (c.center.y - p.y))


def choose_arc_anchors(state: ConstructionState, parent_disk: Circle, group: Sequence[int]):
    """Rational points a, c on ``parent_disk`` flanking ``group`` (listed
    counterclockwise), outside every other disk, with no other boundary
    point between them and the group."""
    on = [v for v in range(state.tree.n)
          if side_of_circle(state.pos[v], parent_disk) is Side.ON]
    center = parent_disk.center
    g0 = state.pos[group[0]]
    ref = g0 - center
    ring = sorted(on, key=functools.cmp_to_key(
        lambda u, v: _ccw_cmp(ref, state.pos[u] - center, state.pos[v] - center)))
    if ring[:len(group)] != list(group):
        raise NoFreeArc("group is not a consecutive counterclockwise run on the disk")
    nxt = state.pos[ring[len(group)]] if len(ring) > len(group) else g0
    prv = state.pos[ring[-1]]
    last = state.pos[group[-1]]
    others = [c for c in state.disk.values() if c is not parent_disk]

    def free(x: Point2) -> bool:
        return all(side_of_circle(x, c) is Side.OUTSIDE for c in others)

    def approach(lo: Point2, hi: Point2, towards_hi: bool) -> Point2:
        x = arc_midpoint(parent_disk, lo, hi)
        for _ in range(64):
            if free(x):
                return x
            x = arc_midpoint(parent_disk, x, hi) if towards_hi else arc_midpoint(parent_disk, lo, x)
        raise NoFreeArc("no uncovered anchor next to the group")

    a = approach(prv, g0, towards_hi=True)
    c = approach(last, nxt, towards_hi=False)
    return a, c


def _sibling_disks(c: Circle, qs: list[Point2], order: list[int], t: RootedTree,
                   gamma: Fraction) -> list[tuple[int, Circle]]:
    n = t.n
    at = {v: i for i, v in enumerate(order)}
    out = []
    for v in range(n):
        kids = t.children[v]
        if not kids:
            continue
        idx = sorted(at[r] for r in kids)
        i0, k = idx[0], len(idx)
        a = qs[(i0 - 1) % n]
        cc = qs[(i0 + k) % n]
        group = qs[i0:i0 + k]
        eps = gamma
        for _ in range(32):
            disk, _ = lemma_step(c, a, group, cc, eps)
            inside = {i for i, q in enumerate(qs) if side_of_circle(q, disk) is Side.INSIDE}
            on = any(side_of_circle(q, disk) is Side.ON for q in qs)
            if inside == set(range(i0, i0 + k)) and not on:
                break
            eps /= 2
        else:
            raise ConstructionError(f"sibling disk of vertex {v} did not certify")
        out.append((v, disk))
    return out


def realize_tree(t: RootedTree, c: Circle, qs: Sequence[Point2], gamma,
                 budget_bits: int = DEFAULT_BUDGET_BITS, check_steps: bool = True,
                 stats: ConstructionStats | None = None) -> Realization:
    """Realize the tree hypergraph of ``t`` with disks close to ``c``.

    ``qs`` are distinct points on ``c`` in counterclockwise order; ``qs[j]``
    is the prescribed place of the j-th vertex of the siblings-first order.
    Every returned point is gamma-close to its prescribed place, every disk is
    gamma-close to ``c`` and contains the center of ``c``.
    """
    gamma = Q(gamma)
    n = t.n
    qs = [Point2.of(*q) for q in qs]
    if len(qs) != n:
        raise InvalidOrder("need one prescribed point per vertex")
    if gamma <= 0 or 16 * gamma * gamma >= c.radius_sq:
        raise ValueError("gamma must lie in (0, radius/4)")
    if any(side_of_circle(q, c) is not Side.ON for q in qs) or not strictly_ccw(c, qs):
        raise InvalidOrder("prescribed points must be distinct, on the circle, counterclockwise")
    order = siblings_first_order(t)
    vertex_q = {v: qs[j] for j, v in enumerate(order)}

    sib = _sibling_disks(c, qs, order, t, gamma)
    eps_sib = perturbation_radius(qs, [d for _, d in sib], cap=gamma)
    gamma_des = min(gamma, eps_sib)
    delta = floor_pow2(gamma_des / (n * n))
    state = ConstructionState(t, order, vertex_q, delta, budget_bits)
    if stats is not None:
        state.stats = stats
    root = t.root
    state.add_disk(root, c, None)
    state.move(root, _step_inside(state.pos[root], c, state.delta))
    state.fixed.add(root)
    state.refresh()
    if check_steps:
        state.check("initial adjustment")

    for k, v in enumerate(order):
        kids = list(t.children[v])
        if kids:
            _run_step(state, v, kids)
        state.processed.add(v)
        state.stats.steps += 1
        state.stats.bits_per_step.append(state.stats.max_bits)
        log.debug("step %d (vertex %d): delta=2^-%d max bits=%d", k + 1, v,
                  state.delta.denominator.bit_length() - 1, state.stats.max_bits)
        if check_steps:
            state.check(f"step {k + 1}")
    state.stats.final_delta = state.delta
    log.info("tree of %d vertices realized; max coordinate bits %d", n, state.stats.max_bits)

    points = tuple(state.pos[v] for v in range(n))
    disks = [TaggedDisk(d, frozenset(t.children[v]), "sibling") for v, d in sib]
    for v in range(n):
        if t.is_leaf(v):
            disks.append(TaggedDisk(state.disk[v], frozenset(t.path_from_root(v)), "descendent"))
    r = Realization(points, tuple(disks), c, gamma, tree_hypergraph(t),
                    tuple(vertex_q[v] for v in range(n)), "tree")
    problems = certify_tree_realization(r)
    if problems:
        raise InvariantViolation("; ".join(problems))
    return r


def _run_step(state: ConstructionState, v: int, kids: list[int]) -> None:
    t = state.tree
    order = state.order
    at = {u: i for i, u in enumerate(order)}
    start = at[kids[0]]
    # r1..rl, Des(rl), ..., Des(r1) sit consecutively in the order
    block = order[start:start + len(t.descendants(v))]
    parent = state.disk[v]
    path = set(t.path_from_root(v))
    for i, r in enumerate(kids):
        front = kids[:i]
        drop = set(front)
        for u in front:
            drop.update(t.descendants(u))
        group = [u for u in block if u not in drop]
        state.refresh(group, skip=parent)
        a, cc = choose_arc_anchors(state, parent, group)
        others = [u for u in range(t.n) if u not in group]
        for _ in range(48):
            state.stats.lemma_calls += 1
            try:
                disk, moved = lemma_step(parent, a, [state.pos[u] for u in group], cc, state.delta)
            except NoRationalPointFound:
                disk = None
            if disk is not None and _new_disk_ok(state, disk, others, path):
                break
            state.stats.retries += 1
            state.decrease(state.delta / 2)
        else:
            raise ConstructionError(f"disk B({r}) did not certify")
        state.add_disk(r, disk, parent)
        for u, p in zip(group, moved):
            state.move(u, p)
        parent = disk
        state.refresh()
    for r in kids:
        state.refresh([r], skip=state.disk[r])
        state.move(r, _step_inside(state.pos[r], state.disk[r], state.delta))
        state.fixed.add(r)
        state.refresh()


def _new_disk_ok(state: ConstructionState, disk: Circle, others: list[int], path: set) -> bool:
    for u in others:
        s = side_of_circle(state.pos[u], disk)
        if s is Side.ON or (s is Side.INSIDE) != (u in path):
            return False
    return True


def certify_tree_realization(r: Realization) -> list[str]:
    """Membership, gamma-closeness and stabbedness, all decided exactly."""
    problems = []
    rep = verify_realization(r)
    if not rep.ok:
        problems.append(f"membership mismatch: {rep.mismatch}")
    if r.prescribed is not None:
        for v, (p, q) in enumerate(zip(r.points, r.prescribed)):
            if not points_close(p, q, r.gamma):
                problems.append(f"point {v} is not gamma-close to its prescribed place")
    for k, d in enumerate(r.disks):
        if not circles_close(d.circle, r.anchor_circle, r.gamma):
            problems.append(f"disk {k} is not gamma-close to the anchor circle")
        if side_of_circle(r.anchor_circle.center, d.circle) is not Side.INSIDE:
            problems.append(f"disk {k} misses the anchor center")
    return problems


# ---------------------------------------------------------------------------
# extensions


def _rotate(p: Point2, about: Point2, t: Fraction) -> Point2:
    """Rotation with cos = (1-t^2)/(1+t^2), sin = 2t/(1+t^2)."""
    den = 1 + t * t
    cs, sn = (1 - t * t) / den, 2 * t / den
    dx, dy = p.x - about.x, p.y - about.y
    return Point2(about.x + cs * dx - sn * dy, about.y + sn * dx + cs * dy)


def _separated(center: Point2, rho_sq: Fraction, c: Circle) -> bool:
    """Closed disks of radius sqrt(rho_sq) at center and c are disjoint."""
    x = dist_sq(center, c.center) - rho_sq - c.radius_sq
    return x > 0 and x * x > 4 * rho_sq * c.radius_sq


def exposed(r: Realization, k: int, point: Point2 | None = None) -> bool:
    """``point`` (default: the stored witness) lies on disk k and outside the
    closure of every other disk."""
    w = r.disks[k].witness if point is None else point
    if w is None or side_of_circle(w, r.disks[k].circle) is not Side.ON:
        return False
    return all(side_of_circle(w, d.circle) is Side.OUTSIDE
               for j, d in enumerate(r.disks) if j != k)


def realize_extension(r: Realization, f_disk, t: RootedTree, gamma=Fraction(1, 16),
                      budget_bits: int = DEFAULT_BUDGET_BITS) -> Realization:
    """Realize ``r.target`` extended by the tree hypergraph of ``t`` through
    the edge of ``f_disk`` (a Circle of ``r`` or its index in ``r.disks``).

    The disk is replaced by t.n rotated and slightly enlarged copies, each
    with a fresh exposed witness; the new vertices are realized near a small
    circle tangent to the disk at its witness.
    """
    gamma = Q(gamma)
    disk_index = _disk_index(r, f_disk)
    DF = r.disks[disk_index]
    if not exposed(r, disk_index):
        raise NoExposedPoint(f"disk {disk_index} has no exposed witness")
    F = DF.edge
    p = DF.witness
    cF, R2 = DF.circle.center, DF.circle.radius_sq
    old = [d for j, d in enumerate(r.disks) if j != disk_index]
    old_pts = list(r.points)
    old_wit = [d.witness for d in old if d.witness is not None]
    n = t.n

    # tangent circle: outside DF, touching it only at p, clear of everything else
    out = p - cF
    lam = Fraction(1, 4)
    for _ in range(200):
        Z = p + out.scale(lam)
        rho2 = lam * lam * R2
        if all(_separated(Z, rho2, d.circle) for d in old) and \
                all(dist_sq(q, Z) > rho2 for q in old_pts + old_wit):
            break
        lam /= 2
    else:
        raise ConstructionError("no tangent circle clear of the other disks")
    C = Circle(Z, rho2, p)

    tau = Fraction(1, 8)
    for _ in range(200):
        built = _copies(DF.circle, C, lam, tau, n, old, old_pts, old_wit, F)
        if built is not None:
            break
        tau /= 2
    else:
        raise ConstructionError("rotated copies did not certify")
    copies, tangent_pts, witnesses = built

    order = siblings_first_order(t)
    # the j-th tangent point (ccw on C) hosts the j-th vertex of the order
    qs = tangent_pts
    copy_circles = [c for c in copies]
    g = min(gamma,
            perturbation_radius(qs, [d.circle for d in old] + copy_circles, cap=gamma),
            perturbation_radius(old_pts + old_wit + witnesses, [C], cap=gamma))
    g = min(g, dyadic_below_sqrt(rho2 / 16) / 2)
    sub = realize_tree(t, C, qs, g, budget_bits=budget_bits)

    base_n = len(r.points)
    slot = {v: j for j, v in enumerate(order)}
    new_disks = list(r.disks[:disk_index])
    for v in range(n):
        j = slot[v]
        new_disks.append(TaggedDisk(copies[j], F | {base_n + v}, "copy", witnesses[j]))
    new_disks.extend(r.disks[disk_index + 1:])
    for d in sub.disks:
        new_disks.append(TaggedDisk(d.circle, frozenset(base_n + u for u in d.edge), d.role))
    points = tuple(old_pts) + tuple(sub.points)
    target = extend(r.target, tree_hypergraph(t), F)
    out_r = Realization(points, tuple(new_disks), r.anchor_circle, r.gamma, target, None, "extension")
    rep = verify_realization(out_r)
    if not rep.ok:
        raise InvariantViolation(f"extension failed to verify: {rep.mismatch}")
    for k, d in enumerate(out_r.disks):
        if d.witness is not None and not exposed(out_r, k):
            raise InvariantViolation(f"disk {k} lost its exposed witness")
    return out_r


def _disk_index(r: Realization, f_disk) -> int:
    if isinstance(f_disk, int):
        if not 0 <= f_disk < len(r.disks):
            raise IndexError(f"no disk {f_disk}")
        return f_disk
    for k, d in enumerate(r.disks):
        if d.circle == f_disk:
            return k
    raise KeyError("circle is not a disk of the realization")


def _copies(D: Circle, C: Circle, lam: Fraction, tau: Fraction, n: int, old, old_pts,
            old_wit, F: frozenset):
    """n rotated copies of D about C's center, enlarged to cut into C.

    Returns (circles, tangent points, witnesses) or None when ``tau`` is too
    coarse for the surrounding configuration.
    """
    Z = C.center
    p = C.base_point
    rot = [_rotate(D.center, Z, j * tau) for j in range(n)]
    tang = [_rotate(p, Z, j * tau) for j in range(n)]
    plain = [Circle.through(c, q) for c, q in zip(rot, tang)]
    for c in plain:
        if not circles_close(c, D, 1) or not all(
                (side_of_circle(q, c) is Side.INSIDE) == (i in F)
                and side_of_circle(q, c) is not Side.ON for i, q in enumerate(old_pts)):
            return None
        if any(side_of_circle(w, c) is not Side.OUTSIDE for w in old_wit):
            return None
    eta = lam * tau * tau / 32
    for _ in range(24):
        grown = []
        for c, q in zip(rot, tang):
            b = Point2(c.x + (1 + eta) * (q.x - c.x), c.y + (1 + eta) * (q.y - c.y))
            grown.append(Circle.through(c, b))
        ok = True
        for c in grown:
            for i, q in enumerate(old_pts):
                s = side_of_circle(q, c)
                if s is Side.ON or (s is Side.INSIDE) != (i in F):
                    ok = False
            if any(side_of_circle(w, c) is not Side.OUTSIDE for w in old_wit):
                ok = False
        for j, q in enumerate(tang):
            if side_of_circle(q, grown[j]) is not Side.INSIDE:
                ok = False
            if any(side_of_circle(q, grown[k]) is not Side.OUTSIDE for k in range(n) if k != j):
                ok = False
            if any(side_of_circle(q, d.circle) is not Side.OUTSIDE for d in old):
                ok = False
        if ok:
            wit = [_copy_witness(j, grown, C, lam * tau, old) for j in range(n)]
            if all(w is not None for w in wit):
                return grown, tang, wit
        eta /= 4
    return None


def _copy_witness(j: int, grown: list[Circle], C: Circle, scale: Fraction, old) -> Point2 | None:
    """A point of copy j just outside C and outside every other disk."""
    c = grown[j]
    for i in (8, 6, 10, 5, 12, 4, 14, 3, 16, 2, 20, 1):
        for sign in (1, -1):
            w = _rotate(c.base_point, c.center, sign * scale * i / 32)
            if side_of_circle(w, C) is not Side.OUTSIDE:
                continue
            if any(side_of_circle(w, g) is not Side.OUTSIDE for k, g in enumerate(grown) if k != j):
                continue
            if any(side_of_circle(w, d.circle) is not Side.OUTSIDE for d in old):
                continue
            return w
    return None


def trivial_realization() -> Realization:
    """One point inside one disk, the disk exposing its base point."""
    c = Circle.unit(Point2.of(0, 0))
    d = TaggedDisk(c, frozenset([0]), "base", c.base_point)
    return Realization((Point2.of(0, 0),), (d,), c, Fraction(1, 16),
                       single_edge_hypergraph(1), None, "extension")


@dataclass
class H3Report:
    realization: Realization | None
    target: Hypergraph
    completed_extensions: int
    planned_extensions: int
    budget_status: str
    max_bits: int
    last: Realization | None = None  # latest verified stage, also when partial


def realize_h3(m: int, gamma=Fraction(1, 16), budget_bits: int = DEFAULT_BUDGET_BITS,
               max_extensions: int | None = None) -> H3Report:
    """Chain extensions F_1 -> F_2 -> ... -> F_m by the m-ary tree of depth m.

    Stops early (status ``"partial"``) after ``max_extensions`` extensions or
    when the precision budget is hit; the combinatorial target is returned in
    every case.
    """
    from .hypergraph import build_h3
    if m < 1:
        raise ValueError("m must be positive")
    target = build_h3(m)
    t = complete_mary_tree(m)
    r = trivial_realization()
    planned = sum(t.n ** (i - 2) for i in range(2, m + 1))
    done = 0
    status = "complete"
    try:
        for _ in range(2, m + 1):
            star = r.target.star
            todo = [d.circle for d in r.disks if star in d.edge and d.witness is not None]
            for circ in todo:
                if max_extensions is not None and done >= max_extensions:
                    raise _Stop
                idx = next(k for k, d in enumerate(r.disks) if d.circle is circ)
                r = realize_extension(r, idx, t, gamma, budget_bits)
                done += 1
                log.info("extension %d/%d done, %d points, max bits %d",
                         done, planned, len(r.points), r.max_bits())
    except _Stop:
        status = "partial"
    except PrecisionBudgetExceeded as exc:
        log.warning("precision budget hit: %s", exc)
        status = "budget-exceeded"
    real = r if status == "complete" else None
    if real is not None and not real.target.same_edges(target):
        raise InvariantViolation("realized target differs from the combinatorial one")
    return H3Report(real, target, done, planned, status, r.max_bits(), r)


class _Stop(Exception):
    pass
