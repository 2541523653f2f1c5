"""Rooted trees, the tree hypergraphs built on them, extensions, and a
complete backtracking colorer."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

Edge = frozenset


class EdgeNotFound(KeyError):
    pass


@dataclass(frozen=True)
class RootedTree:
    """Vertices 0..n-1; ``parent[root] is None``. Children keep insertion order."""

    parent: tuple
    children: tuple = field(init=False, repr=False, compare=False)
    root: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.parent)
        roots = [v for v, p in enumerate(self.parent) if p is None]
        if len(roots) != 1:
            raise ValueError("a rooted tree needs exactly one root")
        kids: list[list[int]] = [[] for _ in range(n)]
        for v, p in enumerate(self.parent):
            if p is not None:
                if not 0 <= p < n:
                    raise ValueError(f"parent {p} out of range")
                kids[p].append(v)
        object.__setattr__(self, "children", tuple(tuple(k) for k in kids))
        object.__setattr__(self, "root", roots[0])
        # every vertex must reach the root
        for v in range(n):
            seen = 0
            u = v
            while self.parent[u] is not None:
                u = self.parent[u]
                seen += 1
                if seen > n:
                    raise ValueError("parent map has a cycle")

    @classmethod
    def from_children(cls, children: Sequence[Sequence[int]]) -> "RootedTree":
        parent: list = [None] * len(children)
        for v, ks in enumerate(children):
            for k in ks:
                parent[k] = v
        tree = cls(tuple(parent))
        if tree.children != tuple(tuple(k) for k in children):
            raise ValueError("children lists must be listed in increasing vertex order")
        return tree

    @property
    def n(self) -> int:
        return len(self.parent)

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    def path_from_root(self, v: int) -> list[int]:
        path = [v]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path[::-1]

    def descendants(self, v: int) -> list[int]:
        out, stack = [], list(reversed(self.children[v]))
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.children[u]))
        return out


def complete_mary_tree(m: int) -> RootedTree:
    """Complete m-ary tree whose root-to-leaf paths hold exactly m vertices."""
    if m < 1:
        raise ValueError("m must be positive")
    parent: list = [None]
    level = [0]
    for _ in range(m - 1):
        nxt = []
        for v in level:
            for _ in range(m):
                parent.append(v)
                nxt.append(len(parent) - 1)
        level = nxt
    return RootedTree(tuple(parent))


def siblings_first_order(t: RootedTree) -> list[int]:
    """Each sibling group r1..rk is followed by Des(rk), ..., Des(r1); every
    Des(ri) block is ordered by the same rule recursively."""
    def block(v: int) -> list[int]:
        kids = t.children[v]
        out = list(kids)
        for r in reversed(kids):
            out.extend(block(r))
        return out

    return [t.root] + block(t.root)


def is_siblings_first_order(t: RootedTree, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(t.n)):
        return False
    pos = {v: i for i, v in enumerate(order)}
    for v in range(t.n):
        kids = t.children[v]
        if not kids:
            continue
        idx = sorted(pos[r] for r in kids)
        if idx != list(range(idx[0], idx[0] + len(kids))) or idx[0] <= pos[v]:
            return False
        rs = sorted(kids, key=pos.__getitem__)
        expected = list(rs)
        for r in reversed(rs):
            expected.append(set(t.descendants(r)))
        cur = idx[0] + len(rs)
        for blk in expected[len(rs):]:
            if cur + len(blk) > len(order):
                return False
            seg = {order[i] for i in range(cur, cur + len(blk))}
            if seg != blk:
                return False
            cur += len(blk)
    return True


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple
    star: int | None = None
    allow_empty: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        edges = tuple(frozenset(e) for e in self.edges)
        for e in edges:
            if not e:
                if self.allow_empty:
                    continue
                raise ValueError("empty edge")
            if min(e) < 0 or max(e) >= self.n:
                raise ValueError(f"edge {sorted(e)} leaves the vertex set")
        object.__setattr__(self, "edges", edges)

    def is_uniform(self, m: int) -> bool:
        return all(len(e) == m for e in self.edges)

    def edge_multiset(self) -> dict:
        out: dict = {}
        for e in self.edges:
            out[e] = out.get(e, 0) + 1
        return out

    def same_edges(self, other: "Hypergraph") -> bool:
        return self.n == other.n and self.edge_multiset() == other.edge_multiset()

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [sorted(e) for e in self.edges], "star": self.star}

    @classmethod
    def from_json(cls, doc: dict) -> "Hypergraph":
        return cls(int(doc["n"]), tuple(frozenset(int(v) for v in e) for e in doc["edges"]),
                   doc.get("star"))


def tree_hypergraph(t: RootedTree, extended: bool = False) -> Hypergraph:
    edges = [frozenset(t.children[v]) for v in range(t.n) if t.children[v]]
    for v in range(t.n):
        if extended or t.is_leaf(v):
            edges.append(frozenset(t.path_from_root(v)))
    return Hypergraph(t.n, tuple(edges))


def single_edge_hypergraph(i: int) -> Hypergraph:
    if i < 1:
        raise ValueError("i must be positive")
    return Hypergraph(i, (frozenset(range(i)),), star=0 if i == 1 else None)


def extend(a: Hypergraph, b: Hypergraph, f: Iterable[int]) -> Hypergraph:
    """``a`` extended by ``b`` through ``f``.

    New vertices are a.n .. a.n + b.n - 1 (b's vertex j becomes a.n + j). The
    first occurrence of f is replaced, in place, by the copies f + {new j};
    b's edges are appended.
    """
    f = frozenset(f)
    try:
        at = a.edges.index(f)
    except ValueError:
        raise EdgeNotFound(sorted(f)) from None
    copies = [f | {a.n + j} for j in range(b.n)]
    shifted = [frozenset(v + a.n for v in e) for e in b.edges]
    edges = list(a.edges[:at]) + copies + list(a.edges[at + 1:]) + shifted
    return Hypergraph(a.n + b.n, tuple(edges), a.star)


def build_h2(m: int) -> Hypergraph:
    return tree_hypergraph(complete_mary_tree(m))


def build_f(i: int, m: int) -> Hypergraph:
    """F_1 is a single vertex v* with edge {v*}; F_i extends every edge of
    F_{i-1} containing v* by H2(m)."""
    if not 1 <= i:
        raise ValueError("i must be positive")
    h = single_edge_hypergraph(1)
    h2 = build_h2(m)
    for _ in range(i - 1):
        through = [e for e in h.edges if h.star in e]
        for e in through:
            h = extend(h, h2, e)
    return h


def build_h3(m: int) -> Hypergraph:
    return build_f(m, m)


@dataclass
class ColoringResult:
    colorable: bool
    coloring: list | None
    nodes: int

    def __bool__(self) -> bool:
        return self.colorable


def find_coloring(h: Hypergraph, c: int) -> ColoringResult:
    """Complete search for a proper c-coloring (no monochromatic edge).

    Vertices are picked by smallest remaining domain, ties broken by degree.
    An edge whose colored vertices all share color x removes x from the
    domain of its last uncolored vertex. Colors are introduced in order to
    break the symmetry between them, so an exhausted search is a proof.
    """
    if c < 1:
        raise ValueError("c must be positive")
    n = h.n
    edges = [tuple(e) for e in h.edges]
    if any(len(e) == 1 for e in edges):
        return ColoringResult(False, None, 0)
    inc: list[list[int]] = [[] for _ in range(n)]
    for k, e in enumerate(edges):
        for v in e:
            inc[v].append(k)
    degree = [len(x) for x in inc]
    color = [-1] * n
    domain = [set(range(c)) for _ in range(n)]
    nodes = 0

    def propagate(v: int, trail: list) -> bool:
        # check edges through v; prune last free vertex of nearly-mono edges
        stack = [v]
        while stack:
            u = stack.pop()
            for k in inc[u]:
                e = edges[k]
                free = [w for w in e if color[w] < 0]
                cols = {color[w] for w in e if color[w] >= 0}
                if len(cols) > 1:
                    continue
                if not free:
                    return False
                if len(free) == 1:
                    w = free[0]
                    x = next(iter(cols))
                    if x in domain[w]:
                        domain[w].discard(x)
                        trail.append((w, x))
                        if not domain[w]:
                            return False
        return True

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if color[v] < 0:
                k = (len(domain[v]), -degree[v])
                if key is None or k < key:
                    best, key = v, k
        return best

    def solve(used: int) -> bool:
        nonlocal nodes
        v = pick()
        if v < 0:
            return True
        for x in sorted(domain[v]):
            if x > used:
                break
            nodes += 1
            color[v] = x
            trail: list = []
            if propagate(v, trail) and solve(max(used, x + 1)):
                return True
            color[v] = -1
            for w, y in trail:
                domain[w].add(y)
        return False

    import sys
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10 * n + 1000))
    try:
        ok = solve(0)
    finally:
        sys.setrecursionlimit(limit)
    return ColoringResult(ok, list(color) if ok else None, nodes)


def find_monochromatic_edge(h: Hypergraph, col: Sequence[int]):
    if len(col) != h.n:
        raise ValueError("coloring must be total")
    for e in h.edges:
        if len({col[v] for v in e}) == 1:
            return e
    return None


def rooted_trees(n: int):
    """All rooted unlabeled trees on n vertices (canonical level sequences)."""
    if n < 1:
        return
    if n == 1:
        yield RootedTree((None,))
        return
    # Beyer-Hedetniemi successor on level sequences
    L = list(range(n))
    while True:
        yield _tree_from_levels(L)
        p = max((i for i in range(n) if L[i] > 1), default=-1)
        if p <= 0:
            return
        q = max(i for i in range(p) if L[i] == L[p] - 1)
        for i in range(p, n):
            L[i] = L[i - (p - q)]


def _tree_from_levels(levels: list[int]) -> RootedTree:
    parent: list = [None] * len(levels)
    last_at: dict[int, int] = {}
    for v, lv in enumerate(levels):
        if lv > 0:
            parent[v] = last_at[lv - 1]
        last_at[lv] = v
    return RootedTree(tuple(parent))
