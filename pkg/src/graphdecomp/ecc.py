"""Eccentricities through split trees, modular quotients, and class dispatch.

The split-tree algorithm runs two traversals.  Leafward, each component
learns the eccentricity of every vertex in its subtree graph through
weights e(marker) = subtree eccentricity - 1; rootward, the complementary
values flow back down.  Complete components need only the top two weights,
stars the top two leaf weights plus the center, prime components all-pairs
BFS.  The modular variants solve only the quotient: inner graphs carry a
universal marker vertex, so their diameter is at most two and a per-vertex
universality test settles them.
"""

from __future__ import annotations

from .classify import (DISC_COCYCLE, DISC_CYCLE, SMALL_PRIME, SPIKED_PK,
                       SPIKED_PK_BAR, SPIKED_QK, SPIKED_QK_BAR, THICK_SPIDER,
                       THIN_SPIDER, classify_prime_graph)
from .distances import Distance
from .graph import DisconnectedGraphError, Graph, bfs_distances
from .modular import MDNode, PARALLEL, PRIME, SERIES
from .splitdec import COMPLETE, STAR, SplitTree, SplitTreeIndex


def _require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError("eccentricities need a connected graph")


def eccentricities_split(g: Graph, st: SplitTree) -> list[Distance]:
    _require_connected(g)
    if g.n == 1:
        return [0]
    idx = SplitTreeIndex(st)
    comps = st.components

    # leafward: ecc within the subtree graph of each component
    ecc_in: list[list[int]] = [[] for _ in comps]
    dist_to_up: list[list[int] | None] = [None] * len(comps)
    for c in reversed(idx.order):
        comp = comps[c]
        size = len(comp.labels)
        e = [0] * size
        for _, child, loc in idx.children[c]:
            e[loc] = ecc_in[child][idx.up_local[child]] - 1
        ecc_in[c] = _component_ecc(idx, c, e, exclude=-1)
        if idx.up_local[c] is not None:
            dist_to_up[c] = _component_dist_from(idx, c, idx.up_local[c])

    # rootward: eccentricity of the complement side per tree edge
    ecc_out: list[int] = [0] * len(comps)
    for c in idx.order:
        comp = comps[c]
        size = len(comp.labels)
        if not idx.children[c]:
            continue
        e = [0] * size
        for _, child, loc in idx.children[c]:
            e[loc] = ecc_in[child][idx.up_local[child]] - 1
        if idx.up_local[c] is not None:
            e[idx.up_local[c]] = ecc_out[c] - 1
        for _, child, loc in idx.children[c]:
            own = e[loc]
            e[loc] = None       # exclude the child's own slot
            ecc_out[child] = _component_ecc_at(idx, c, e, loc)
            e[loc] = own

    out: list[Distance] = [0] * g.n
    for c in idx.order:
        comp = comps[c]
        up = idx.up_local[c]
        for li, lab in enumerate(comp.labels):
            if lab < 0:
                continue
            val = ecc_in[c][li]
            if up is not None:
                val = max(val, dist_to_up[c][li] + ecc_out[c] - 1)
            out[lab] = val
    return out


def _component_ecc(idx: SplitTreeIndex, c: int, e: list[int],
                   exclude: int) -> list[int]:
    """max over v of dist(u, v) + e(v) for every u in the component."""
    comp = idx.st.components[c]
    size = len(comp.labels)
    if size == 1:
        return [e[0]]
    if comp.kind == COMPLETE:
        x, y = _top2(range(size), e)
        out = []
        for u in range(size):
            best = e[x] if u != x else (e[y] if y >= 0 else None)
            val = e[u] if best is None else max(e[u], 1 + best)
            out.append(val)
        return out
    if comp.kind == STAR:
        r = comp.center
        leaves = [v for v in range(size) if v != r]
        x, y = _top2(leaves, e)
        out = [0] * size
        out[r] = max(e[r], 1 + e[x])
        for u in leaves:
            best_leaf = e[x] if u != x else (e[y] if y >= 0 else None)
            val = max(e[u], 1 + e[r])
            if best_leaf is not None:
                val = max(val, 2 + best_leaf)
            out[u] = val
        return out
    dists = idx.component_local_distances(c)
    return [max(dists[u][v] + e[v] for v in range(size)) for u in range(size)]


def _component_ecc_at(idx: SplitTreeIndex, c: int, e: list[int | None],
                      target: int) -> int:
    """max over v != target of dist(target, v) + e(v); e[target] is None."""
    comp = idx.st.components[c]
    size = len(comp.labels)
    if comp.kind == COMPLETE:
        return 1 + max(e[v] for v in range(size) if v != target)
    if comp.kind == STAR:
        r = comp.center
        if target == r:
            return 1 + max(e[v] for v in range(size) if v != r)
        leaf_best = None
        for v in range(size):
            if v in (target, r):
                continue
            leaf_best = e[v] if leaf_best is None else max(leaf_best, e[v])
        val = 1 + e[r]
        if leaf_best is not None:
            val = max(val, 2 + leaf_best)
        return val
    dists = idx.component_local_distances(c)
    return max(dists[target][v] + e[v] for v in range(size) if v != target)


def _component_dist_from(idx: SplitTreeIndex, c: int, src: int) -> list[int]:
    comp = idx.st.components[c]
    size = len(comp.labels)
    if comp.kind == COMPLETE:
        return [0 if v == src else 1 for v in range(size)]
    if comp.kind == STAR:
        r = comp.center
        if src == r:
            return [0 if v == r else 1 for v in range(size)]
        return [0 if v == src else (1 if v == r else 2) for v in range(size)]
    dist = [-1] * size
    dist[src] = 0
    from collections import deque
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in idx.local_adj[c][u]:
            if dist[w] == -1:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _top2(indices, e) -> tuple[int, int]:
    """Indices of the largest and second largest values (-1 if absent)."""
    x = y = -1
    for v in indices:
        if x == -1 or e[v] > e[x]:
            x, y = v, x
        elif y == -1 or e[v] > e[y]:
            y = v
    return x, y


# -------------------------------------------------------------------------
# modular kernelization


def _modular_scaffold(g: Graph, md: MDNode):
    """(modules, quotient, per-vertex module index) for the root partition."""
    modules = [list(c.vertices) for c in md.children]
    if md.kind == SERIES:
        from .graph import build_graph
        k = len(modules)
        quotient = build_graph(k, [(i, j) for i in range(k)
                                   for j in range(i + 1, k)])
    elif md.kind == PRIME:
        quotient = md.quotient
    else:
        raise DisconnectedGraphError("parallel root means a disconnected graph")
    owner = [0] * g.n
    for i, mod in enumerate(modules):
        for v in mod:
            owner[v] = i
    return modules, quotient, owner


def _combine_modular(g: Graph, md: MDNode, quotient_ecc) -> list[Distance]:
    modules, quotient, owner = _modular_scaffold(g, md)
    ecc_q = quotient_ecc(quotient)
    out: list[Distance] = [0] * g.n
    masks = g.masks()
    for i, mod in enumerate(modules):
        mod_mask = 0
        for v in mod:
            mod_mask |= 1 << v
        for v in mod:
            if len(mod) == 1:
                inner = 1
            else:
                inner = 1 if (mod_mask & ~masks[v] & ~(1 << v)) == 0 else 2
            out[v] = max(ecc_q[i], inner)
    return out


def eccentricities_modular(g: Graph, md: MDNode) -> list[Distance]:
    _require_connected(g)
    if md.is_leaf():
        return [0]

    def quotient_ecc(quotient: Graph):
        return [max(bfs_distances(quotient, v)) for v in range(quotient.n)]

    return _combine_modular(g, md, quotient_ecc)


def eccentricities_qq3(g: Graph, md: MDNode) -> list[Distance]:
    _require_connected(g)
    if md.is_leaf():
        return [0]
    return _combine_modular(g, md, _quotient_ecc_by_class)


def _quotient_ecc_by_class(quotient: Graph) -> list[int]:
    k = quotient.n
    if all(quotient.degree(v) == k - 1 for v in range(k)):
        return [1] * k
    cls = classify_prime_graph(quotient, check_prime=False)
    ecc = [2] * k
    if cls.tag == THIN_SPIDER:
        for v in cls.witness["S"]:
            ecc[v] = 3
        return ecc
    if cls.tag == THICK_SPIDER or cls.tag == DISC_COCYCLE:
        return ecc
    if cls.tag == DISC_CYCLE:
        return [len(cls.witness["cycle_order"]) // 2] * k
    if cls.tag == SPIKED_PK:
        roles = cls.witness["roles"]
        kk = cls.witness["k"]
        for i in range(1, kk + 1):
            ecc[roles[f"v{i}"]] = max(i - 1, kk - i)
        for extra in ("x", "y"):
            if extra in roles:
                ecc[roles[extra]] = kk - 2
        return ecc
    if cls.tag == SPIKED_PK_BAR:
        return [1 if quotient.degree(v) == k - 1 else 2 for v in range(k)]
    if cls.tag == SPIKED_QK:
        roles = cls.witness["roles"]
        for name in ("v1", "v3", "v5"):
            ecc[roles[name]] = 3
        return ecc
    if cls.tag == SPIKED_QK_BAR:
        roles = cls.witness["roles"]
        for name in ("v2", "v4"):
            ecc[roles[name]] = 3
        return ecc
    return [max(bfs_distances(quotient, v)) for v in range(quotient.n)]
