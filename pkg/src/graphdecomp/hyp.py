"""Four-point hyperbolicity via split decomposition and its kernelizations.

The split scheme: the hyperbolicity of the whole graph is the maximum of
every component's own value and, per tree edge, a gap term that depends
only on whether each side's boundary is a clique and on the boundary
sizes.  Clique-ness of a boundary is exactly simpliciality of the marker
in its side graph, which two tree traversals propagate; boundary sizes
travel the same way.
"""

from __future__ import annotations

from .classify import (DISC_COCYCLE, DISC_CYCLE, SPIKED_PK, SPIKED_PK_BAR,
                       SPIKED_QK, SPIKED_QK_BAR, THICK_SPIDER, THIN_SPIDER,
                       classify_prime_graph)
from .distances import Half
from .graph import DisconnectedGraphError, Graph, GraphError, bfs_distances, build_graph
from .modular import MDNode, NDPartition, PARALLEL, PRIME, SERIES, TRUE_TWINS
from .oracles import oracle_hyperbolicity
from .splitdec import (COMPLETE, PRIME as SPLIT_PRIME, STAR, SplitComponent,
                       SplitTree, SplitTreeIndex)

_BRUTE_CAP = 44


def _require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError("hyperbolicity needs a connected graph")


# -- per-component suppliers -------------------------------------------------


def _component_graph(comp: SplitComponent) -> Graph:
    return comp.local_graph()


def _delta_brute(g: Graph) -> Half:
    return oracle_hyperbolicity(g, cap=max(g.n, 1))


def _is_block_graph(g: Graph) -> bool:
    """Every biconnected component is a clique."""
    n = g.n
    if n <= 2:
        return True
    disc = [-1] * n
    low = [0] * n
    stack_edges: list[tuple[int, int]] = []
    comps: list[list[tuple[int, int]]] = []
    timer = [0]

    def dfs(root: int) -> None:
        stack = [(root, -1, iter(g.adj[root]))]
        disc[root] = low[root] = timer[0]
        timer[0] += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    stack_edges.append((v, w))
                    disc[w] = low[w] = timer[0]
                    timer[0] += 1
                    stack.append((w, v, iter(g.adj[w])))
                    advanced = True
                    break
                elif w != parent and disc[w] < disc[v]:
                    stack_edges.append((v, w))
                    low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if low[v] >= disc[pv]:
                        comp = []
                        while stack_edges:
                            e = stack_edges.pop()
                            comp.append(e)
                            if e == (pv, v):
                                break
                        comps.append(comp)

    for v in range(n):
        if disc[v] == -1:
            dfs(v)
    for comp in comps:
        verts = sorted({x for e in comp for x in e})
        need = len(verts) * (len(verts) - 1) // 2
        if len(comp) != need:
            return False
        if len({(min(e), max(e)) for e in comp}) != need:
            return False
    return True


def _has_induced_c4(g: Graph) -> bool:
    masks = g.masks()
    n = g.n
    for u in range(n):
        for v in range(u + 1, n):
            if g.has_edge(u, v):
                continue
            common = masks[u] & masks[v]
            # two nonadjacent common neighbors close an induced C4
            w = common
            while w:
                b = w & -w
                w ^= b
                x = b.bit_length() - 1
                if common & ~masks[x] & ~b:
                    return True
    return False


def _diameter_at_most_2(g: Graph) -> bool:
    masks = g.masks()
    n = g.n
    for u in range(n):
        closed = masks[u] | (1 << u)
        for v in range(u + 1, n):
            if not (closed >> v) & 1 and not (masks[u] & masks[v]):
                return False
    return True


def component_delta(g: Graph) -> Half:
    """Hyperbolicity of one split component, sized for quotient graphs."""
    if g.n <= _BRUTE_CAP:
        return _delta_brute(g)
    if _is_block_graph(g):
        return Half(0)
    if _diameter_at_most_2(g):
        return Half(2) if _has_induced_c4(g) else Half(1)
    return _delta_brute(g)


def simplicial_vertices(g: Graph) -> set[int]:
    masks = g.masks()
    out = set()
    for v in range(g.n):
        ok = True
        for w in g.adj[v]:
            if masks[v] & ~masks[w] & ~(1 << w) & ~(1 << v):
                ok = False
                break
        if ok:
            out.add(v)
    return out


# -- the split scheme --------------------------------------------------------


def hyperbolicity_over_tree(st: SplitTree,
                            delta_of=component_delta) -> Half:
    """Max of component values and per-edge gap terms (two-pass DP)."""
    if len(st.components) == 1:
        comp = st.components[0]
        if comp.kind in (COMPLETE, STAR):
            return Half(0)
        return delta_of(_component_graph(comp))
    idx = SplitTreeIndex(st)
    comps = st.components

    local_simpl: list[set[int]] = []
    local_graphs: list[Graph] = []
    best = Half(0)
    for comp in comps:
        cg = _component_graph(comp)
        local_graphs.append(cg)
        if comp.kind == COMPLETE:
            local_simpl.append(set(range(len(comp.labels))))
            continue
        if comp.kind == STAR:
            simp = {v for v in range(len(comp.labels)) if v != comp.center}
            if len(comp.labels) == 2:
                simp = {0, 1}
            elif len(comp.labels) - 1 == 1:
                simp.add(comp.center)
            local_simpl.append(simp)
            continue
        local_simpl.append(simplicial_vertices(cg))
        d = delta_of(cg)
        if best < d:
            best = d

    # sizes of the real boundary behind each marker, both directions
    size_down = [0] * len(st.tree_edges)
    simp_down = [False] * len(st.tree_edges)
    for c in reversed(idx.order):
        e = idx.parent_edge[c]
        if e is None:
            continue
        up = idx.up_local[c]
        size_down[e] = _expanded_size(idx, c, up, size_down, None)
        simp_down[e] = _expanded_simplicial(idx, c, up, local_simpl,
                                            simp_down, None)
    size_up = [0] * len(st.tree_edges)
    simp_up = [False] * len(st.tree_edges)
    for c in idx.order:
        for e, child, loc in idx.children[c]:
            size_up[e] = _expanded_size(idx, c, loc, size_down, (e, size_up))
            simp_up[e] = _expanded_simplicial(idx, c, loc, local_simpl,
                                              simp_down, (e, simp_up))

    for e in range(len(st.tree_edges)):
        c_clique, d_clique = simp_down[e], simp_up[e]
        c_size, d_size = size_down[e], size_up[e]
        if not c_clique and not d_clique:
            gap = Half(2)
        elif min(c_size, d_size) >= 2 and (c_clique != d_clique):
            gap = Half(1)
        else:
            gap = Half(0)
        if best < gap:
            best = gap
    return best


def _expanded_size(idx: SplitTreeIndex, c: int, marker_loc: int,
                   size_down, up_entry) -> int:
    comp = idx.st.components[c]
    child_slot = {loc: e for e, _, loc in idx.children[c]}
    total = 0
    for v in idx.local_adj[c][marker_loc]:
        lab = comp.labels[v]
        if lab >= 0:
            total += 1
        elif v == idx.up_local[c]:
            e, table = up_entry
            total += table[idx.parent_edge[c]]
        else:
            total += size_down[child_slot[v]]
    return total


def _expanded_simplicial(idx: SplitTreeIndex, c: int, marker_loc: int,
                         local_simpl, simp_down, up_entry) -> bool:
    if marker_loc not in local_simpl[c]:
        return False
    comp = idx.st.components[c]
    child_slot = {loc: e for e, _, loc in idx.children[c]}
    for v in idx.local_adj[c][marker_loc]:
        lab = comp.labels[v]
        if lab >= 0:
            continue
        if v == idx.up_local[c]:
            e, table = up_entry
            if not table[idx.parent_edge[c]]:
                return False
        elif not simp_down[child_slot[v]]:
            return False
    return True


def hyperbolicity_split(g: Graph, st: SplitTree) -> Half:
    _require_connected(g)
    if g.n < 4:
        return Half(0)
    return hyperbolicity_over_tree(st, delta_of=_delta_brute)


# -- kernelizations ----------------------------------------------------------


def split_tree_from_nd(g: Graph, ndp: NDPartition) -> SplitTree:
    """Stars / completes per twin class of size >= 2 around the quotient."""
    from .splitdec import marker_label

    components: list[SplitComponent] = []
    tree_edges: list[tuple[int, int, int, int]] = []
    k = ndp.quotient.n
    center_labels: list[int] = []
    next_edge = 0
    for i, cls in enumerate(ndp.classes):
        if len(cls) == 1:
            center_labels.append(cls[0])
            continue
        center_labels.append(marker_label(next_edge, 0))
        size = len(cls) + 1
        adj: list[set[int]] = [set() for _ in range(size)]
        if ndp.tags[i] == TRUE_TWINS:
            for a in range(size):
                for b in range(a + 1, size):
                    adj[a].add(b)
                    adj[b].add(a)
            kind, center = COMPLETE, -1
        else:
            for b in range(1, size):
                adj[0].add(b)
                adj[b].add(0)
            kind, center = STAR, 0
        comp = SplitComponent(labels=[marker_label(next_edge, 1)] + list(cls),
                              adj=adj, kind=kind, center=center)
        components.append(comp)
        next_edge += 1
    central = SplitComponent(
        labels=center_labels,
        adj=[set(ndp.quotient.adj[i]) for i in range(k)])
    central.classify()
    central_idx = len(components)
    components.append(central)
    eid = 0
    for i, cls in enumerate(ndp.classes):
        if len(cls) == 1:
            continue
        tree_edges.append((central_idx, i, eid, 0))
        eid += 1
    st = SplitTree(n=g.n, components=components, tree_edges=tree_edges)
    st.validate()
    return st


def hyperbolicity_nd(g: Graph, ndp: NDPartition) -> Half:
    _require_connected(g)
    if g.n < 4:
        return Half(0)
    st = split_tree_from_nd(g, ndp)
    return hyperbolicity_over_tree(st, delta_of=_delta_brute)


def hyperbolicity_mw_gate(g: Graph, md: MDNode) -> tuple[bool, Half | None]:
    """Decide delta > 1 from the quotient alone; report the value if so."""
    _require_connected(g)
    if md.is_leaf() or md.kind == SERIES:
        quotient = build_graph(len(md.children) if md.children else 1, [])
        return False, None
    quotient = md.quotient
    dq = component_delta(quotient)
    if dq > Half(2):
        return True, dq
    return False, None


def split_tree_from_modular(g: Graph, md: MDNode) -> SplitTree:
    """The partial split decomposition mirrored off the modular tree.

    One component per internal node: its quotient plus, below the root, a
    universal marker standing for the outside.  Child slots hold markers
    to the child components of internal children, or the child vertex
    itself for leaves.
    """
    from .splitdec import marker_label

    components: list[SplitComponent] = []
    tree_edges: list[tuple[int, int, int, int]] = []
    next_edge = [0]

    def build(node: MDNode, parent_slot: tuple[int, int] | None) -> None:
        k = len(node.children)
        if node.kind == PARALLEL and parent_slot is None:
            raise DisconnectedGraphError("disconnected input")
        size = k + (0 if parent_slot is None else 1)
        adj: list[set[int]] = [set() for _ in range(size)]
        if node.kind == SERIES:
            for a in range(k):
                for b in range(a + 1, k):
                    adj[a].add(b)
                    adj[b].add(a)
        elif node.kind == PRIME:
            for a, b in node.quotient.edges():
                adj[a].add(b)
                adj[b].add(a)
        if parent_slot is not None:
            up = size - 1
            for a in range(k):
                adj[a].add(up)
                adj[up].add(a)
        labels = [0] * size
        ci = len(components)
        comp = SplitComponent(labels=labels, adj=adj)
        components.append(comp)
        if parent_slot is not None:
            eid = next_edge[0]
            next_edge[0] += 1
            labels[size - 1] = marker_label(eid, 0)
            pj, lj = parent_slot
            components[pj].labels[lj] = marker_label(eid, 1)
            tree_edges.append((ci, size - 1, pj, lj))
        for slot, child in enumerate(node.children):
            if child.is_leaf():
                labels[slot] = child.vertex
            else:
                build(child, (ci, slot))
        comp.classify()

    if md.is_leaf():
        comp = SplitComponent(labels=[md.vertex], adj=[set()], kind=COMPLETE)
        return SplitTree(n=g.n, components=[comp])
    build(md, None)
    st = SplitTree(n=g.n, components=components, tree_edges=tree_edges)
    st.validate()
    return st


def hyperbolicity_qq3(g: Graph, md: MDNode) -> Half:
    _require_connected(g)
    if g.n < 4:
        return Half(0)
    st = split_tree_from_modular(g, md)
    return hyperbolicity_over_tree(st, delta_of=component_delta)
