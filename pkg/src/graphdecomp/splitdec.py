"""Split decomposition: components, marker pairs, and the decomposition tree.

A split (A, B) is a bipartition with both sides of size >= 2 whose crossing
edges form a complete join.  Decomposing along pairwise non-crossing splits
yields a tree of components, each either degenerate (complete graph or star)
or prime (splitless).  Components are linked by marker-vertex pairs; undoing
every simple decomposition (joining the two marker neighborhoods) restores
the original graph, which is how the tree is certified here.

The split search is a closure sweep: seed one side with an edge, anchor one
outside witness, and repeatedly pull in every vertex whose view of the side
disagrees with the anchor's.  Cheap twin / pendant / cut-vertex rules run
first so the sweep only pays off on graphs that are close to prime.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph import Graph, GraphError, build_graph

COMPLETE = "complete"
STAR = "star"
PRIME = "prime"


def marker_label(edge_id: int, side: int) -> int:
    return -(2 * edge_id + side + 1)


def is_marker(label: int) -> bool:
    return label < 0


def marker_edge(label: int) -> int:
    return (-label - 1) // 2


@dataclass
class SplitComponent:
    labels: list[int]            # global labels; >= 0 real vertex, < 0 marker
    adj: list[set[int]]          # local indices
    kind: str = ""
    center: int = -1             # star center (local index), else -1

    def classify(self) -> None:
        n = len(self.labels)
        degs = [len(a) for a in self.adj]
        if all(d == n - 1 for d in degs):
            self.kind, self.center = COMPLETE, -1
            return
        centers = [i for i, d in enumerate(degs) if d == n - 1]
        if len(centers) == 1 and all(d == 1 for i, d in enumerate(degs)
                                     if i != centers[0]):
            self.kind, self.center = STAR, centers[0]
            return
        self.kind, self.center = PRIME, -1

    def local_graph(self) -> Graph:
        rows = [tuple(sorted(a)) for a in self.adj]
        m = sum(len(r) for r in rows) // 2
        return Graph(len(self.labels), rows, m)

    def index_of(self, label: int) -> int:
        return self.labels.index(label)


@dataclass
class SplitTree:
    n: int
    components: list[SplitComponent]
    # one entry per marker pair: (comp_a, local_a, comp_b, local_b)
    tree_edges: list[tuple[int, int, int, int]] = field(default_factory=list)

    def component_graph_neighbors(self, c: int) -> list[tuple[int, int, int]]:
        """(edge_id, other_comp, local marker index in c) for each tree edge at c."""
        out = []
        for e, (ca, la, cb, lb) in enumerate(self.tree_edges):
            if ca == c:
                out.append((e, cb, la))
            elif cb == c:
                out.append((e, ca, lb))
        return out

    def prime_orders(self) -> list[int]:
        return [len(c.labels) for c in self.components if c.kind == PRIME]

    def validate(self) -> None:
        seen_real = set()
        for comp in self.components:
            if comp.kind not in (COMPLETE, STAR, PRIME):
                raise GraphError("unclassified split component")
            for lab in comp.labels:
                if lab >= 0:
                    if lab in seen_real:
                        raise GraphError(f"real vertex {lab} in two components")
                    seen_real.add(lab)
        if seen_real != set(range(self.n)):
            raise GraphError("components do not cover the vertex set")
        for ca, la, cb, lb in self.tree_edges:
            if not is_marker(self.components[ca].labels[la]):
                raise GraphError("tree edge endpoint is not a marker")
            if not is_marker(self.components[cb].labels[lb]):
                raise GraphError("tree edge endpoint is not a marker")

    def recompose(self) -> Graph:
        """Undo every simple decomposition; certifies the tree."""
        adj: dict[int, set[int]] = {}

        def link(a: int, b: int) -> None:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)

        for comp in self.components:
            for i, row in enumerate(comp.adj):
                for j in row:
                    if i < j:
                        link(comp.labels[i], comp.labels[j])
            for lab in comp.labels:
                adj.setdefault(lab, set())
        for e, (ca, la, cb, lb) in enumerate(self.tree_edges):
            ma = self.components[ca].labels[la]
            mb = self.components[cb].labels[lb]
            na = adj.pop(ma, set())
            nb = adj.pop(mb, set())
            na.discard(mb)
            nb.discard(ma)
            for x in na:
                adj[x].discard(ma)
            for x in nb:
                adj[x].discard(mb)
            for x in na:
                for y in nb:
                    link(x, y)
        edges = []
        for u, row in adj.items():
            if u < 0:
                raise GraphError("marker survived recomposition")
            for v in row:
                if u < v:
                    edges.append((u, v))
        return build_graph(self.n, edges)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "components": [
                {
                    "kind": comp.kind,
                    "center": comp.center,
                    "labels": list(comp.labels),
                    "edges": sorted((min(comp.labels[i], comp.labels[j]),
                                     max(comp.labels[i], comp.labels[j]))
                                    for i in range(len(comp.labels))
                                    for j in comp.adj[i] if i < j),
                }
                for comp in self.components
            ],
            "marker_pairs": [
                {"components": [ca, cb],
                 "markers": [self.components[ca].labels[la],
                             self.components[cb].labels[lb]]}
                for ca, la, cb, lb in self.tree_edges
            ],
        }


def split_width(st: SplitTree) -> int:
    """Max prime component order, floored at 2."""
    return max([2] + st.prime_orders())


class SplitTreeIndex:
    """Rooted view of a split tree: orders, marker slots, local adjacency.

    Supports the two-pass (leafward then rootward) dynamic programs of the
    distance algorithms.  Requires the component tree to be connected.
    """

    def __init__(self, st: SplitTree, root: int = 0):
        self.st = st
        self.root = root
        ncomp = len(st.components)
        nbrs: list[list[tuple[int, int, int]]] = [[] for _ in range(ncomp)]
        for e, (ca, la, cb, lb) in enumerate(st.tree_edges):
            nbrs[ca].append((e, cb, la))
            nbrs[cb].append((e, ca, lb))
        self.parent: list[int | None] = [None] * ncomp
        self.parent_edge: list[int | None] = [None] * ncomp
        self.up_local: list[int | None] = [None] * ncomp
        self.children: list[list[tuple[int, int, int]]] = [[] for _ in range(ncomp)]
        #   children[c] = (edge_id, child comp, local marker slot in c)
        self.order: list[int] = []
        seen = [False] * ncomp
        stack = [root]
        seen[root] = True
        while stack:
            c = stack.pop()
            self.order.append(c)
            for e, other, loc in nbrs[c]:
                if seen[other]:
                    continue
                seen[other] = True
                self.parent[other] = c
                self.parent_edge[other] = e
                ca, la, cb, lb = st.tree_edges[e]
                self.up_local[other] = la if cb == c else lb
                self.children[c].append((e, other, la if ca == c else lb))
                stack.append(other)
        if not all(seen):
            raise GraphError("split tree is a forest; root one tree at a time")
        self.local_adj: list[list[list[int]]] = [
            [sorted(a) for a in comp.adj] for comp in st.components]

    def component_local_distances(self, c: int) -> list[list[int]]:
        """All-pairs hop distances inside one component (BFS per vertex)."""
        adj = self.local_adj[c]
        size = len(adj)
        out = []
        for s in range(size):
            dist = [-1] * size
            dist[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if dist[w] == -1:
                        dist[w] = dist[u] + 1
                        queue.append(w)
            out.append(dist)
        return out


# -------------------------------------------------------------------------
# split search


def _find_split(masks: list[int], n: int) -> int | None:
    """One side of a split of a connected graph as a bitmask, or None.

    Completeness: a splittable graph has a minimal split side that is
    either a twin pair or connected; connected minimal sides are reached
    by the anchored closure from some internal seed edge.  Before paying
    for that sweep, a grow-by-one certificate usually settles primality:
    adding a vertex to a connected split-prime graph can only create
    splits with a twin-pair or pendant side, so a chain of twin-free and
    pendant-free connected prefixes up from an induced P4 is a proof.
    """
    if n < 4:
        return None
    full = (1 << n) - 1

    by_open: dict[int, int] = {}
    by_closed: dict[int, int] = {}
    for v in range(n):
        o = masks[v]
        c = masks[v] | (1 << v)
        if o in by_open:
            return (1 << by_open[o]) | (1 << v)
        if c in by_closed:
            return (1 << by_closed[c]) | (1 << v)
        by_open[o] = v
        by_closed[c] = v

    for v in range(n):
        if masks[v].bit_count() == 1:
            return (1 << v) | masks[v]

    cut = _articulation_split(masks, n)
    if cut is not None:
        return cut

    # a single cycle of length >= 5 is prime; its path prefixes all carry
    # pendants, so the growth certificate below cannot see it
    if n >= 5 and all(m.bit_count() == 2 for m in masks):
        return None

    if _certify_prime(masks, n, full):
        return None

    for x in range(n):
        nx = masks[x]
        ys = nx
        while ys:
            yb = ys & -ys
            ys ^= yb
            anchors = nx & ~yb
            ds = anchors
            while ds:
                db = ds & -ds
                ds ^= db
                a = _anchored_closure(masks, n, full, (1 << x) | yb, db)
                if a is not None:
                    return a
    return None


def _certify_prime(masks: list[int], n: int, full: int) -> bool:
    """True only if the graph is provably prime for split decomposition.

    Grows a connected induced prefix from an induced P4; a prefix without
    twin pairs or degree-one vertices is split-prime whenever its
    predecessor was.  False means "unknown" and the caller falls back to
    the exhaustive sweep.
    """
    seeds = _induced_p4s(masks, n, limit=2)
    ascending = list(range(n))
    by_degree = sorted(range(n), key=lambda v: (-masks[v].bit_count(), v))
    for seed in seeds:
        for order in (ascending, by_degree):
            if _grow_prime_chain(masks, full, seed, order, budget=10 * n):
                return True
    return False


def _grow_prime_chain(masks, full: int, seed, order, budget: int) -> bool:
    # the P4 seed is prime by shape; 2-freeness applies from size 5 on
    prefix = 0
    for v in seed:
        prefix |= 1 << v
    remaining = full & ~prefix
    while remaining:
        frontier = remaining & _nbhd(masks, prefix)
        advanced = False
        for v in order:
            if not (frontier >> v) & 1:
                continue
            budget -= 1
            if budget < 0:
                return False
            cand = prefix | (1 << v)
            if _prefix_two_free(masks, cand):
                prefix = cand
                remaining &= ~(1 << v)
                advanced = True
                break
        if not advanced:
            return False
    return True


def _nbhd(masks: list[int], vertex_set: int) -> int:
    out = 0
    s = vertex_set
    while s:
        b = s & -s
        s ^= b
        out |= masks[b.bit_length() - 1]
    return out & ~vertex_set


def _prefix_two_free(masks: list[int], prefix: int) -> bool:
    seen_open: set[int] = set()
    seen_closed: set[int] = set()
    s = prefix
    while s:
        b = s & -s
        s ^= b
        row = masks[b.bit_length() - 1] & prefix
        if row.bit_count() <= 1:
            return False
        if row in seen_open or (row | b) in seen_closed:
            return False
        seen_open.add(row)
        seen_closed.add(row | b)
    return True


def _induced_p4s(masks: list[int], n: int, limit: int) -> list[tuple[int, ...]]:
    out = []
    for b in range(n):
        nb = masks[b]
        cs = nb
        while cs:
            cb = cs & -cs
            cs ^= cb
            c = cb.bit_length() - 1
            a_pool = nb & ~masks[c] & ~cb
            d_pool = masks[c] & ~nb & ~(1 << b)
            ab = a_pool
            while ab:
                abit = ab & -ab
                ab ^= abit
                a = abit.bit_length() - 1
                dd = d_pool & ~masks[a]
                if dd:
                    d = (dd & -dd).bit_length() - 1
                    out.append((a, b, c, d))
                    if len(out) >= limit:
                        return out
                    break
            if len(out) >= limit:
                return out
    return out


def _anchored_closure(masks: list[int], n: int, full: int,
                      seed: int, anchor_bit: int) -> int | None:
    side = seed
    d0 = anchor_bit.bit_length() - 1
    while True:
        view0 = masks[d0] & side
        outside = full & ~side & ~anchor_bit
        moved = 0
        w = outside
        while w:
            b = w & -w
            w ^= b
            view = masks[b.bit_length() - 1] & side
            if view and view != view0:
                moved |= b
        if not moved:
            break
        side |= moved
    if side.bit_count() < 2 or (full & ~side).bit_count() < 2:
        return None
    return side


def _articulation_split(masks: list[int], n: int) -> int | None:
    adj = [[b.bit_length() - 1 for b in _bits(masks[v])] for v in range(n)]
    disc = [-1] * n
    low = [0] * n
    cut_vertex = -1
    timer = 0
    stack = [(0, -1, iter(adj[0]))]
    disc[0] = low[0] = timer
    timer += 1
    root_children = 0
    while stack and cut_vertex < 0:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                if v == 0:
                    root_children += 1
                stack.append((w, v, iter(adj[w])))
                advanced = True
                break
            elif w != parent:
                low[v] = min(low[v], disc[w])
        if not advanced:
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if pv != 0 and low[v] >= disc[pv]:
                    cut_vertex = pv
    if cut_vertex < 0 and root_children >= 2:
        cut_vertex = 0
    if cut_vertex < 0:
        return None
    c = cut_vertex
    seen = {c}
    comps = []
    for s in range(n):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in _bit_indices(masks[u]):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    comps.sort(key=len)
    side = 1 << c
    for v in comps[0]:
        side |= 1 << v
    if side.bit_count() >= 2 and n - side.bit_count() >= 2:
        return side
    return None


def _bits(mask: int):
    while mask:
        b = mask & -mask
        mask ^= b
        yield b


def _bit_indices(mask: int):
    while mask:
        b = mask & -mask
        mask ^= b
        yield b.bit_length() - 1


# -------------------------------------------------------------------------
# decomposition driver


def split_decomposition(g: Graph) -> SplitTree:
    """Maximal split decomposition, normalized by degenerate merges.

    Works per connected component (a forest of split trees on disconnected
    input).  Every returned component is complete, a star, or prime; prime
    orders are those of the canonical decomposition.
    """
    components: list[SplitComponent] = []
    next_edge = 0

    # fragments: (labels, masks) with local bitset adjacency
    work: list[tuple[list[int], list[int]]] = []
    for comp in g.connected_components():
        labels = list(comp)
        index = {v: i for i, v in enumerate(labels)}
        masks = [0] * len(labels)
        for v in comp:
            for w in g.adj[v]:
                masks[index[v]] |= 1 << index[w]
        work.append((labels, masks))

    while work:
        labels, masks = work.pop()
        n = len(labels)
        kind = _kind_from_masks(masks, n)
        if kind is not None or n < 4:
            components.append(_materialize(labels, masks, kind))
            continue
        side = _find_split(masks, n)
        if side is None:
            components.append(_materialize(labels, masks, PRIME))
            continue
        eid = next_edge
        next_edge += 1
        for piece, marker in ((side, marker_label(eid, 0)),
                              (((1 << n) - 1) & ~side, marker_label(eid, 1))):
            keep = list(_bit_indices(piece))
            boundary = 0
            other = ((1 << n) - 1) & ~piece
            for i in keep:
                if masks[i] & other:
                    boundary |= 1 << i
            sub_labels = [labels[i] for i in keep] + [marker]
            remap = [0] * n
            for new, old in enumerate(keep):
                remap[old] = new
            k = len(keep)
            sub_masks = [0] * (k + 1)
            for new, old in enumerate(keep):
                inner = masks[old] & piece
                acc = 0
                while inner:
                    b = inner & -inner
                    inner ^= b
                    acc |= 1 << remap[b.bit_length() - 1]
                if (1 << old) & boundary:
                    acc |= 1 << k
                    sub_masks[k] |= 1 << new
                sub_masks[new] = acc
            work.append((sub_labels, sub_masks))

    _merge_degenerates(components)

    st = SplitTree(n=g.n, components=components)
    locator: dict[int, tuple[int, int]] = {}
    for ci, comp in enumerate(components):
        for li, lab in enumerate(comp.labels):
            if is_marker(lab):
                locator[lab] = (ci, li)
    for eid in range(next_edge):
        ma, mb = marker_label(eid, 0), marker_label(eid, 1)
        if ma in locator and mb in locator:
            (ca, la), (cb, lb) = locator[ma], locator[mb]
            st.tree_edges.append((ca, la, cb, lb))
    st.validate()
    return st


def _kind_from_masks(masks: list[int], n: int) -> str | None:
    """COMPLETE/STAR when the masks say so, None for possibly-prime."""
    if n <= 2:
        return COMPLETE
    full_deg = n - 1
    center = -1
    leaves = 0
    for v, m in enumerate(masks):
        c = m.bit_count()
        if c == full_deg:
            if center >= 0:
                center = -2
            elif center == -1:
                center = v
        elif c == 1:
            leaves += 1
    if center == -2 and leaves == 0:
        return COMPLETE if all(m.bit_count() == full_deg for m in masks) else None
    if center >= 0 and leaves == n - 1:
        return STAR
    if all(m.bit_count() == full_deg for m in masks):
        return COMPLETE
    return None


def _materialize(labels, masks, kind: str | None) -> SplitComponent:
    comp = SplitComponent(labels=labels,
                          adj=[set(_bit_indices(m)) for m in masks])
    comp.classify()
    if kind is not None and comp.kind != kind:
        raise GraphError("component classification mismatch")
    return comp


def _merge_degenerates(components: list[SplitComponent]) -> None:
    """Merge clique-clique and star(leaf)-star(center) marker pairs."""
    changed = True
    while changed:
        changed = False
        locator: dict[int, tuple[int, int]] = {}
        for ci, comp in enumerate(components):
            for li, lab in enumerate(comp.labels):
                if is_marker(lab):
                    locator[lab] = (ci, li)
        for lab, (ci, li) in list(locator.items()):
            partner = marker_label(marker_edge(lab), 1 - ((-lab - 1) % 2))
            if partner not in locator:
                continue
            cj, lj = locator[partner]
            if ci == cj or ci > cj:
                continue
            a, b = components[ci], components[cj]
            mergeable = False
            if a.kind == COMPLETE and b.kind == COMPLETE:
                mergeable = True
            elif a.kind == STAR and b.kind == STAR:
                # exactly one marker of the pair must sit at a center
                mergeable = (li == a.center) != (lj == b.center)
            if not mergeable:
                continue
            merged = _contract_pair(a, li, b, lj)
            merged.classify()
            components[ci] = merged
            del components[cj]
            changed = True
            break


def _contract_pair(a: SplitComponent, la: int,
                   b: SplitComponent, lb: int) -> SplitComponent:
    na = a.adj[la]
    nb = b.adj[lb]
    keep_a = [i for i in range(len(a.labels)) if i != la]
    keep_b = [i for i in range(len(b.labels)) if i != lb]
    labels = [a.labels[i] for i in keep_a] + [b.labels[i] for i in keep_b]
    pos: dict[tuple[int, int], int] = {}
    for new, i in enumerate(keep_a):
        pos[(0, i)] = new
    off = len(keep_a)
    for new, i in enumerate(keep_b):
        pos[(1, i)] = off + new
    adj: list[set[int]] = [set() for _ in labels]
    for i in keep_a:
        for j in a.adj[i]:
            if j != la:
                adj[pos[(0, i)]].add(pos[(0, j)])
    for i in keep_b:
        for j in b.adj[i]:
            if j != lb:
                adj[pos[(1, i)]].add(pos[(1, j)])
    for i in na:
        for j in nb:
            adj[pos[(0, i)]].add(pos[(1, j)])
            adj[pos[(1, j)]].add(pos[(0, i)])
    return SplitComponent(labels=labels, adj=adj)
