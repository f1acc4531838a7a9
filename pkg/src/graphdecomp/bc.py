"""Betweenness centrality through split trees, with exact rationals.

Components carry two vertex weights: a path-cost multiplicity (the size of
the boundary a marker stands for) and an endpoint mass (how many real
vertices it stands for).  Each component is solved locally under those
weights; marker corrective terms flow leafward then rootward, and the two
contributions add up to plain Brandes values on the original graph.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from .graph import DisconnectedGraphError, Graph
from .modular import NDPartition
from .splitdec import COMPLETE, STAR, SplitTree, SplitTreeIndex


def _require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError("betweenness needs a connected graph")


def weighted_component_bc(adj: list[list[int]], alpha: list[int],
                          beta: list[int]) -> list[Fraction]:
    """Exact weighted betweenness inside one small graph.

    Path costs multiply the alpha of every vertex on the path (endpoints
    included); pair (s, t) contributes beta(s)beta(t) times the cost share
    of paths through v, scaled by 1/alpha(v).  All-ones weights give the
    classic unordered-pair Brandes values.
    """
    size = len(adj)
    dist = [[-1] * size for _ in range(size)]
    sigma = [[0] * size for _ in range(size)]
    for v in range(size):
        dv = dist[v]
        dv[v] = 0
        order = [v]
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if dv[w] == -1:
                    dv[w] = dv[u] + 1
                    queue.append(w)
                    order.append(w)
        sv = sigma[v]
        sv[v] = alpha[v]
        for u in order[1:]:
            total = 0
            du = dv[u]
            for w in adj[u]:
                if dv[w] == du - 1:
                    total += sv[w]
            sv[u] = alpha[u] * total
    out = [Fraction(0)] * size
    for v in range(size):
        acc = Fraction(0)
        for s in range(size):
            if s == v:
                continue
            dsv = dist[s][v]
            for t in range(s + 1, size):
                if t == v:
                    continue
                if dsv + dist[v][t] != dist[s][t]:
                    continue
                acc += Fraction(beta[s] * beta[t] * sigma[s][v] * sigma[v][t],
                                sigma[s][t])
        # sigma(s,v)sigma(v,t) carries alpha(v) twice: once converting to a
        # through-v path cost, once more for the definitional prefactor
        out[v] = acc / (alpha[v] * alpha[v])
    return out


def _component_bc_vector(idx: SplitTreeIndex, c: int, alpha, beta) -> list[Fraction]:
    comp = idx.st.components[c]
    size = len(comp.labels)
    if size == 1:
        return [Fraction(0)]
    if comp.kind == COMPLETE:
        return [Fraction(0)] * size
    if comp.kind == STAR:
        r = comp.center
        total = sum(beta[v] for v in range(size) if v != r)
        acc = sum(beta[v] * (total - beta[v]) for v in range(size) if v != r)
        out = [Fraction(0)] * size
        out[r] = Fraction(acc, 2 * alpha[r])
        return out
    return weighted_component_bc(idx.local_adj[c], alpha, beta)


def betweenness_over_tree(g: Graph, st: SplitTree) -> list[Fraction]:
    if g.n == 1:
        return [Fraction(0)]
    idx = SplitTreeIndex(st)
    comps = st.components
    nedges = len(st.tree_edges)

    # boundary sizes and subtree masses per tree edge, both directions
    size_down = [0] * nedges
    mass_down = [0] * nedges
    for c in reversed(idx.order):
        e = idx.parent_edge[c]
        if e is None:
            continue
        size_down[e] = _boundary_size(idx, c, idx.up_local[c], size_down, None)
        mass_down[e] = sum(1 for lab in comps[c].labels if lab >= 0) + \
            sum(mass_down[ce] for ce, _, _ in idx.children[c])
    size_up = [0] * nedges
    for c in idx.order:
        for e, child, loc in idx.children[c]:
            size_up[e] = _boundary_size(idx, c, loc, size_down, size_up)

    # per-component weights
    alphas: list[list[int]] = []
    betas: list[list[int]] = []
    for c, comp in enumerate(comps):
        alpha = [1] * len(comp.labels)
        beta = [1] * len(comp.labels)
        for e, child, loc in idx.children[c]:
            alpha[loc] = size_down[e]
            beta[loc] = mass_down[e]
        if idx.up_local[c] is not None:
            e = idx.parent_edge[c]
            alpha[idx.up_local[c]] = size_up[e]
            beta[idx.up_local[c]] = g.n - mass_down[e]
        alphas.append(alpha)
        betas.append(beta)

    bch = [_component_bc_vector(idx, c, alphas[c], betas[c])
           for c in range(len(comps))]

    bc_in: list[list[Fraction]] = [None] * len(comps)   # type: ignore
    for c in reversed(idx.order):
        comp = comps[c]
        ell = {loc: bc_in[child][idx.up_local[child]]
               for _, child, loc in idx.children[c]}
        vec = []
        for u in range(len(comp.labels)):
            val = bch[c][u]
            for w in idx.local_adj[c][u]:
                if w in ell:
                    val += ell[w]
            vec.append(val)
        bc_in[c] = vec

    bc_out: list[Fraction] = [Fraction(0)] * nedges
    for c in idx.order:
        comp = comps[c]
        if not idx.children[c]:
            continue
        ell = {loc: bc_in[child][idx.up_local[child]]
               for _, child, loc in idx.children[c]}
        up = idx.up_local[c]
        if up is not None:
            ell[up] = bc_out[idx.parent_edge[c]]
        for e, child, loc in idx.children[c]:
            val = bch[c][loc]
            for w in idx.local_adj[c][loc]:
                if w in ell and w != loc:
                    val += ell[w]
            bc_out[e] = val

    out: list[Fraction] = [Fraction(0)] * g.n
    for c in idx.order:
        comp = comps[c]
        up = idx.up_local[c]
        up_nbrs = set(idx.local_adj[c][up]) if up is not None else set()
        for li, lab in enumerate(comp.labels):
            if lab < 0:
                continue
            val = bc_in[c][li]
            if up is not None and li in up_nbrs:
                val += bc_out[idx.parent_edge[c]]
            out[lab] = val
    return out


def _boundary_size(idx: SplitTreeIndex, c: int, marker_loc: int,
                   size_down, size_up) -> int:
    comp = idx.st.components[c]
    child_slot = {loc: e for e, _, loc in idx.children[c]}
    total = 0
    for v in idx.local_adj[c][marker_loc]:
        lab = comp.labels[v]
        if lab >= 0:
            total += 1
        elif v == idx.up_local[c]:
            total += size_up[idx.parent_edge[c]]
        else:
            total += size_down[child_slot[v]]
    return total


def betweenness_split(g: Graph, st: SplitTree) -> list[Fraction]:
    _require_connected(g)
    return betweenness_over_tree(g, st)


def betweenness_nd(g: Graph, ndp: NDPartition) -> list[Fraction]:
    from .hyp import split_tree_from_nd

    _require_connected(g)
    if g.n == 1:
        return [Fraction(0)]
    st = split_tree_from_nd(g, ndp)
    return betweenness_over_tree(g, st)
