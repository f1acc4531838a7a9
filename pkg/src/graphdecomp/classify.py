"""Recognition of the special prime quotient classes.

A prime graph is classified as a disc (cycle or co-cycle), a prime spider,
one of the four spiked p-chain families, or a leftover small prime.  Every
positive answer carries a witness labeling that is re-verified against the
defining edge set, so recognition can never misclassify; at worst an exotic
member falls back to the small-prime tag, which downstream algorithms treat
with their generic (slower but exact) machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .families import spiked_pk_edges, spiked_qk_edges
from .graph import Graph, GraphError, build_graph
from .modular import modular_decomposition

DISC_CYCLE = "disc-cycle"
DISC_COCYCLE = "disc-cocycle"
THIN_SPIDER = "thin-spider"
THICK_SPIDER = "thick-spider"
SPIKED_PK = "spiked-pk"
SPIKED_PK_BAR = "spiked-pk-bar"
SPIKED_QK = "spiked-qk"
SPIKED_QK_BAR = "spiked-qk-bar"
SMALL_PRIME = "small-prime"

_DFS_BRANCH_CAP = 512


@dataclass
class QuotientClass:
    tag: str
    order: int
    witness: dict = field(default_factory=dict)


def is_prime(g: Graph) -> bool:
    if g.n < 4:
        return False
    md = modular_decomposition(g)
    return md.kind == "prime" and all(c.is_leaf() for c in md.children)


def classify_prime_graph(g: Graph, check_prime: bool = True) -> QuotientClass:
    if check_prime and not is_prime(g):
        raise GraphError("classification requires a graph that is prime "
                         "for modular decomposition")
    res = _recognize_cycle(g)
    if res:
        return res
    res = _recognize_cycle(g.complement())
    if res and g.n >= 5:
        return QuotientClass(DISC_COCYCLE, g.n, res.witness)
    res = _recognize_prime_spider(g)
    if res:
        return res
    res = _recognize_spiked_pk(g)
    if res:
        return res
    res = _recognize_spiked_pk(g.complement())
    if res:
        return QuotientClass(SPIKED_PK_BAR, g.n, res.witness)
    res = _recognize_spiked_qk(g)
    if res:
        return res
    res = _recognize_spiked_qk(g.complement())
    if res:
        return QuotientClass(SPIKED_QK_BAR, g.n, res.witness)
    return QuotientClass(SMALL_PRIME, g.n, {})


# -- discs ------------------------------------------------------------------


def _recognize_cycle(g: Graph):
    n = g.n
    if n < 5 or g.m != n or any(g.degree(v) != 2 for v in range(n)):
        return None
    order = [0, g.adj[0][0]]
    while len(order) < n:
        prev, cur = order[-2], order[-1]
        nxt = [w for w in g.adj[cur] if w != prev]
        if len(nxt) != 1:
            return None
        order.append(nxt[0])
    if not g.has_edge(order[-1], order[0]) or len(set(order)) != n:
        return None
    return QuotientClass(DISC_CYCLE, n, {"cycle_order": order})


# -- prime spiders ----------------------------------------------------------


def _recognize_prime_spider(g: Graph):
    n = g.n
    for r_count in (0, 1):
        if (n - r_count) % 2 or (n - r_count) < 4:
            continue
        k = (n - r_count) // 2
        for thick in (False, True):
            if thick and k < 3:
                continue
            s_deg = (k - 1) if thick else 1
            s_set = [v for v in range(n) if g.degree(v) == s_deg]
            if len(s_set) != k:
                continue
            wit = _check_spider(g, s_set, thick, r_count)
            if wit is not None:
                tag = THICK_SPIDER if thick else THIN_SPIDER
                return QuotientClass(tag, n, wit)
    return None


def _check_spider(g: Graph, s_set: list[int], thick: bool, r_count: int):
    n = g.n
    k = len(s_set)
    in_s = set(s_set)
    rest = [v for v in range(n) if v not in in_s]
    if thick:
        k_set = set()
        for s in s_set:
            k_set.update(g.adj[s])
        k_set = sorted(k_set)
    else:
        k_set = sorted(g.adj[s][0] for s in s_set)
    if len(k_set) != k or set(k_set) & in_s:
        return None
    r_set = [v for v in rest if v not in set(k_set)]
    if len(r_set) != r_count:
        return None
    matching = {}
    for s in s_set:
        if thick:
            non = [u for u in k_set if not g.has_edge(s, u)]
            if len(non) != 1:
                return None
            matching[s] = non[0]
        else:
            matching[s] = g.adj[s][0]
    if len(set(matching.values())) != k:
        return None
    for i, u in enumerate(k_set):
        for v in k_set[i + 1:]:
            if not g.has_edge(u, v):
                return None
    for i, u in enumerate(s_set):
        for v in s_set[i + 1:]:
            if g.has_edge(u, v):
                return None
    for r in r_set:
        if sorted(set(g.adj[r]) & set(k_set)) != k_set:
            return None
        if set(g.adj[r]) & in_s:
            return None
    return {"S": sorted(s_set), "K": list(k_set), "R": sorted(r_set),
            "thick": thick, "matching": matching}


# -- spiked p-chains P_k ----------------------------------------------------


def _recognize_spiked_pk(g: Graph):
    n = g.n
    if n < 6 or not g.is_connected():
        return None
    tips = []
    for v in range(n):
        if g.degree(v) == 2:
            a, b = g.adj[v]
            if g.has_edge(a, b):
                tips.append(v)
    if len(tips) > 2:
        return None
    core = sorted(set(range(n)) - set(tips))
    if len(core) < 6:
        return None
    sub, back = g.induced(core)
    path = _as_path(sub)
    if path is None:
        return None
    path = [back[v] for v in path]
    k = len(path)
    for orientation in (path, path[::-1]):
        roles = {f"v{i + 1}": orientation[i] for i in range(k)}
        with_x = with_y = False
        ok = True
        for tip in tips:
            nbrs = set(g.adj[tip])
            if nbrs == {roles["v2"], roles["v3"]} and not with_x:
                roles["x"] = tip
                with_x = True
            elif nbrs == {roles[f"v{k - 2}"], roles[f"v{k - 1}"]} and not with_y:
                roles["y"] = tip
                with_y = True
            else:
                ok = False
                break
        if ok and _verify_pk(g, k, with_x, with_y, roles):
            return QuotientClass(SPIKED_PK, n, {
                "k": k, "roles": roles, "with_x": with_x, "with_y": with_y})
    return None


def _as_path(g: Graph):
    n = g.n
    if g.m != n - 1 or any(g.degree(v) > 2 for v in range(n)):
        return None
    ends = [v for v in range(n) if g.degree(v) == 1]
    if len(ends) != 2:
        return None
    order = [ends[0]]
    prev = -1
    while len(order) < n:
        nxt = [w for w in g.adj[order[-1]] if w != prev]
        if len(nxt) != 1:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return order


def _verify_pk(g: Graph, k: int, with_x: bool, with_y: bool, roles) -> bool:
    n, edges, ref_roles = spiked_pk_edges(k, with_x, with_y)
    if n != g.n:
        return False
    perm = [0] * n
    for name, ref_id in ref_roles.items():
        perm[ref_id] = roles[name]
    want = build_graph(n, edges).relabel(perm)
    return want == g


# -- spiked p-chains Q_k ----------------------------------------------------


def _recognize_spiked_qk(g: Graph):
    n = g.n
    if n < 6 or not g.is_connected():
        return None
    masks = g.masks()
    simplicial = []
    for v in range(n):
        if _is_simplicial(g, masks, v):
            simplicial.append(v)
    stable = set(simplicial)
    clique = [v for v in range(n) if v not in stable]
    for i, u in enumerate(clique):
        for w in clique[i + 1:]:
            if not g.has_edge(u, w):
                return None
    for u in stable:
        for w in g.adj[u]:
            if w in stable:
                return None

    deg1 = [v for v in range(n) if g.degree(v) == 1]
    if len(deg1) != 2:
        return None
    a, b = deg1
    if a not in stable or b not in stable:
        return None
    na, nb = g.adj[a][0], g.adj[b][0]
    if na == nb:
        return None

    def stable_degree(v: int) -> int:
        return sum(1 for w in g.adj[v] if w in stable)

    if stable_degree(na) == stable_degree(nb):
        return None
    if stable_degree(na) < stable_degree(nb):
        a, b, na, nb = b, a, nb, na
    roles = {"v1": a, "v2": na, "v3": b, "v4": nb}
    budget = [_DFS_BRANCH_CAP]
    found = _qk_ladder(g, stable, set(clique), roles, budget)
    if found is None:
        return None
    return QuotientClass(SPIKED_QK, n, found)


def _is_simplicial(g: Graph, masks, v: int) -> bool:
    for w in g.adj[v]:
        if masks[v] & ~masks[w] & ~(1 << w) & ~(1 << v):
            return False
    return True


def _qk_ladder(g: Graph, stable: set, clique: set, roles: dict, budget):
    """DFS completion of the v-chain; z roles are deduced then verified."""
    n = g.n

    def search(roles: dict, used: set, i: int):
        # v_1..v_{2i} are pinned; extend with v_{2i+1} then v_{2i+2}
        if budget[0] <= 0:
            return None
        budget[0] -= 1
        done = _qk_finish(g, stable, clique, roles, used)
        if done is not None:
            return done
        prev_even = roles.get(f"v{2 * i - 2}")
        this_even = roles.get(f"v{2 * i}")
        if prev_even is None or this_even is None:
            return None
        pinned_prefix = {roles[f"v{2 * m}"] for m in range(1, i)}
        cands = []
        for u in stable:
            if u in used:
                continue
            nb = set(g.adj[u]) & {roles[f"v{2 * m}"] for m in range(1, i + 1)}
            if nb == pinned_prefix:
                cands.append(u)
        for odd in sorted(cands):
            r2 = dict(roles)
            r2[f"v{2 * i + 1}"] = odd
            u2 = used | {odd}
            done = _qk_finish(g, stable, clique, r2, u2)
            if done is not None:
                return done
            even_cands = sorted(set(g.adj[odd]) & clique - u2 -
                                {r2[f"v{2 * m}"] for m in range(1, i + 1)})
            for even in even_cands:
                r3 = dict(r2)
                r3[f"v{2 * i + 2}"] = even
                out = search(r3, u2 | {even}, i + 1)
                if out is not None:
                    return out
        return None

    used = set(roles.values())
    return search(dict(roles), used, 2)


def _qk_finish(g: Graph, stable: set, clique: set, roles: dict, used: set):
    """Deduce z indices for leftover vertices and verify exactly."""
    k = max(int(name[1:]) for name in roles if name.startswith("v"))
    if k < 6:
        return None
    v_evens = {}
    for name, v in roles.items():
        idx = int(name[1:])
        if idx % 2 == 0:
            v_evens[v] = idx // 2
    full = dict(roles)
    for u in sorted(set(range(g.n)) - used):
        if u in stable:
            js = sorted(v_evens[w] for w in g.adj[u] if w in v_evens)
            if not js or js != list(range(1, len(js) + 1)):
                return None
            z_idx = 2 * js[-1] - 1
        else:
            miss = sorted(v_evens.values())
            odd_names = {roles.get(f"v{2 * m - 1}"): m
                         for m in range(1, (k + 1) // 2 + 1)
                         if roles.get(f"v{2 * m - 1}") is not None}
            non_adj = sorted(odd_names[w] for w in odd_names
                             if w is not None and not g.has_edge(u, w))
            if not non_adj or non_adj != list(range(1, len(non_adj) + 1)):
                return None
            z_idx = 2 * (non_adj[-1] - 1)
        name = f"z{z_idx}"
        if name in full.values() or name in full:
            return None
        if not 2 <= z_idx <= k - 5:
            return None
        full[name] = u
    zs = tuple(sorted(int(nm[1:]) for nm in full if nm.startswith("z")))
    ref_n, ref_edges, ref_roles = spiked_qk_edges(k, zs)
    if ref_n != g.n or set(ref_roles) != set(full):
        return None
    perm = [0] * g.n
    for name, ref_id in ref_roles.items():
        perm[ref_id] = full[name]
    if build_graph(ref_n, ref_edges).relabel(perm) != g:
        return None
    return {"k": k, "roles": full, "zs": zs}


# -- the structural parameter surrogate --------------------------------------


def effective_q(g: Graph, md) -> int:
    """Upper-bound surrogate for the P4-sparseness dispatch parameter.

    Takes the largest prime quotient that matches none of the special
    classes; 7 when every prime quotient is special or small.
    """
    worst = 7
    for node in md.iter_nodes():
        if node.kind != "prime":
            continue
        q = node.quotient
        cls = classify_prime_graph(q, check_prime=False)
        if cls.tag == SMALL_PRIME:
            worst = max(worst, q.n)
    return worst
