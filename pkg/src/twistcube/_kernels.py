"""Compiled inner loops: unit-capacity vertex flows and bitset family scans.

Graphs arrive in CSR form (``indptr``, ``indices``) with ``rev[e]`` the index
of the reverse arc of ``e``.  Family scans work on graphs of at most 64
vertices, one uint64 word per vertex set.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# move kinds recorded while searching the split residual graph
_IN_OUT, _OUT_IN, _ARC, _UNARC = 0, 1, 2, 3


@njit(cache=True)
def vertex_flow(indptr, indices, rev, is_src, is_snk, cap, used, eflow, reach):
    """Number of internally disjoint paths from the source set to the sink set.

    Stops once ``cap`` paths are found.  Node ``2v`` is v's entry side,
    ``2v + 1`` its exit side; terminals have unbounded capacity.  On return,
    ``reach`` marks split nodes reachable in the final residual graph (only
    meaningful when the result is below ``cap``).
    """
    nv = indptr.shape[0] - 1
    used[:] = 0
    eflow[:] = 0
    total_nodes = 2 * nv
    par = np.empty(total_nodes, dtype=np.int64)
    kind = np.empty(total_nodes, dtype=np.int64)
    via = np.empty(total_nodes, dtype=np.int64)
    queue = np.empty(total_nodes, dtype=np.int64)
    flow = 0
    while flow < cap:
        reach[:] = 0
        head = 0
        tail = 0
        for v in range(nv):
            if is_src[v]:
                node = 2 * v + 1
                reach[node] = 1
                par[node] = -1
                queue[tail] = node
                tail += 1
        hit = -1
        while head < tail and hit < 0:
            node = queue[head]
            head += 1
            v = node >> 1
            if node & 1:
                # exit side: undo internal flow, or push along an arc
                if used[v] and not reach[2 * v]:
                    reach[2 * v] = 1
                    par[2 * v] = node
                    kind[2 * v] = _OUT_IN
                    queue[tail] = 2 * v
                    tail += 1
                for e in range(indptr[v], indptr[v + 1]):
                    y = indices[e]
                    # arcs are uncapacitated so that minimum cuts consist of vertices
                    if is_src[y]:
                        continue
                    nxt = 2 * y
                    if reach[nxt]:
                        continue
                    reach[nxt] = 1
                    par[nxt] = node
                    kind[nxt] = _ARC
                    via[nxt] = e
                    if is_snk[y]:
                        hit = nxt
                        break
                    queue[tail] = nxt
                    tail += 1
            else:
                # entry side: pass through if free, or cancel incoming flow
                if not is_src[v] and not is_snk[v] and not used[v] and not reach[2 * v + 1]:
                    reach[2 * v + 1] = 1
                    par[2 * v + 1] = node
                    kind[2 * v + 1] = _IN_OUT
                    queue[tail] = 2 * v + 1
                    tail += 1
                for e in range(indptr[v], indptr[v + 1]):
                    r = rev[e]
                    if eflow[r] > 0:
                        x = indices[e]
                        nxt = 2 * x + 1
                        if reach[nxt]:
                            continue
                        reach[nxt] = 1
                        par[nxt] = node
                        kind[nxt] = _UNARC
                        via[nxt] = r
                        queue[tail] = nxt
                        tail += 1
        if hit < 0:
            return flow
        node = hit
        while par[node] >= 0:
            k = kind[node]
            if k == _IN_OUT:
                used[node >> 1] = 1
            elif k == _OUT_IN:
                used[node >> 1] = 0
            elif k == _ARC:
                eflow[via[node]] += 1
            else:
                eflow[via[node]] -= 1
            node = par[node]
        flow += 1
    return flow


@njit(cache=True)
def extra_scan(indptr, indices, rev, sets, adjmat, best):
    """Minimum, over pairs of disjoint non-adjacent vertex sets, of the separating cut.

    ``sets`` has one row per candidate set.  Pairs are scanned in order and
    each flow is capped at the running minimum.  Returns
    ``(best, i, j, pairs_evaluated)``; ``i == -1`` if no pair beat the initial bound.
    """
    nv = indptr.shape[0] - 1
    ne = indices.shape[0]
    used = np.zeros(nv, dtype=np.uint8)
    eflow = np.zeros(ne, dtype=np.int32)
    reach = np.zeros(2 * nv, dtype=np.uint8)
    is_src = np.zeros(nv, dtype=np.uint8)
    is_snk = np.zeros(nv, dtype=np.uint8)
    s = sets.shape[0]
    w = sets.shape[1]
    bi = -1
    bj = -1
    evaluated = 0
    for i in range(s):
        for j in range(i + 1, s):
            clash = False
            for a in range(w):
                for b in range(w):
                    x = sets[i, a]
                    y = sets[j, b]
                    if x == y or adjmat[x, y]:
                        clash = True
            if clash:
                continue
            for a in range(w):
                is_src[sets[i, a]] = 1
                is_snk[sets[j, a]] = 1
            f = vertex_flow(indptr, indices, rev, is_src, is_snk, best, used, eflow, reach)
            evaluated += 1
            for a in range(w):
                is_src[sets[i, a]] = 0
                is_snk[sets[j, a]] = 0
            if f < best:
                best = f
                bi = i
                bj = j
    return best, bi, bj, evaluated


@njit(cache=True)
def _split(r, table):
    # True when the vertex set r induces a disconnected subgraph
    if r == 0:
        return False
    start = r & (~r + np.uint64(1))
    reach = start
    frontier = start
    mask8 = np.uint64(255)
    while frontier != 0:
        nb = np.uint64(0)
        for b in range(8):
            byte = (frontier >> np.uint64(8 * b)) & mask8
            if byte != 0:
                nb |= table[b, byte]
        nb &= r & ~reach
        reach |= nb
        frontier = nb
    return reach != r


@njit(cache=True)
def family_scan(masks, table, full, m, lo, hi, disjoint_only):
    """First m-combination (lexicographic) with leading index in [lo, hi) whose
    union disconnects the graph.

    A member contained in the union of the members chosen before it is
    skipped: such a family has the same union as one of size m - 1, which the
    caller has already ruled out.  Returns ``(found, idx, explored)``.
    """
    u = masks.shape[0]
    idx = np.zeros(m, dtype=np.int64)
    pre = np.zeros(m + 1, dtype=np.uint64)
    explored = 0
    if m > u or lo >= hi:
        return False, idx, explored
    d = 0
    idx[0] = lo
    while True:
        i = idx[d]
        if i > u - (m - d) or (d == 0 and i >= hi):
            d -= 1
            if d < 0:
                break
            idx[d] += 1
            continue
        x = masks[i]
        p = pre[d]
        if (x & ~p) == 0 or (disjoint_only and (x & p) != 0):
            idx[d] += 1
            continue
        cur = p | x
        if d == m - 1:
            explored += 1
            redundant = False
            # an earlier member may be covered once later ones are added
            for a in range(m - 1):
                others = np.uint64(0)
                for b in range(m):
                    if b != a:
                        others |= masks[idx[b]]
                if (masks[idx[a]] & ~others) == 0:
                    redundant = True
                    break
            if not redundant and _split(full & ~cur, table):
                return True, idx, explored
            idx[d] += 1
        else:
            pre[d + 1] = cur
            d += 1
            idx[d] = idx[d - 1] + 1
    return False, idx, explored
