"""Exact minimum-weight perfect matching on metric subsets.

The solver is the primal-dual blossom algorithm for maximum-weight matching
in general graphs (Edmonds, in the O(n^3) formulation due to Gabow and
Van Rantwijk). Float distances are converted to integers exactly (every
finite double is a dyadic rational) so all dual arithmetic is exact and
ties between matchings are real ties, not rounding artefacts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import InputError, SizeLimitError
from .graph import TOL, DistanceMatrix, WeightedGraph

BRUTE_FORCE_LIMIT = 14


@dataclass(frozen=True)
class Matching:
    """Vertex pairs ``(u, v)`` with ``u < v``, sorted, and their total cost."""

    pairs: tuple[tuple[int, int], ...]
    cost: float

    def vertices(self) -> set[int]:
        return {x for pair in self.pairs for x in pair}

    def mate(self) -> dict[int, int]:
        out = {}
        for u, v in self.pairs:
            out[u] = v
            out[v] = u
        return out


def _normalize(pairs) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((min(u, v), max(u, v)) for u, v in pairs))


def exact_integers(values: Sequence[float]) -> list[int]:
    """Scale ``values`` by one common power of two so that all become integers.

    Order and ratios are preserved exactly.
    """
    fracs = []
    for x in values:
        if not math.isfinite(x):
            raise InputError(f"non-finite weight {x!r}")
        fracs.append(Fraction(x))
    scale = max((f.denominator for f in fracs), default=1)
    return [f.numerator * (scale // f.denominator) for f in fracs]


# --------------------------------------------------------------- blossom core


class _Solution:
    """Result of one blossom run: mates plus the final dual solution."""

    def __init__(self, mate, dualvar, blossomparent, nvertex):
        self.mate = mate
        self._dual = dualvar
        self._parent = blossomparent
        self._n = nvertex

    def _chain(self, v: int) -> list[int]:
        out = []
        b = self._parent[v]
        while b != -1:
            out.append(b)
            b = self._parent[b]
        return out

    def slack(self, i: int, j: int, wt: int) -> int:
        """Reduced cost (times two) of edge ``(i, j, wt)`` including blossom duals."""
        s = self._dual[i] + self._dual[j] - 2 * wt
        common = set(self._chain(i)).intersection(self._chain(j))
        for b in common:
            s += 2 * self._dual[b]
        return s


def _max_weight_matching(nvertex: int, edges: list[tuple[int, int, int]], maxcardinality: bool) -> _Solution:
    """Maximum-weight matching for integer weights.

    ``edges`` is a list of ``(i, j, wt)`` with distinct endpoints and at most
    one edge per pair. With ``maxcardinality`` the result has maximum
    cardinality and maximum weight among such matchings. Vertex duals are
    stored doubled, so every quantity stays an integer.
    """
    nedge = len(edges)
    mate = [-1] * nvertex
    if nedge == 0:
        return _Solution(mate, [0] * (2 * nvertex), [-1] * (2 * nvertex), nvertex)

    maxweight = max(0, max(wt for _, _, wt in edges))
    # endpoint[p] is the vertex at endpoint p; edge k has endpoints 2k and 2k+1
    endpoint = [edges[p >> 1][p & 1] for p in range(2 * nedge)]
    neighbend: list[list[int]] = [[] for _ in range(nvertex)]
    for k, (i, j, _) in enumerate(edges):
        neighbend[i].append(2 * k + 1)
        neighbend[j].append(2 * k)

    # mate[v] holds the remote endpoint of v's matched edge, or -1
    label = [0] * (2 * nvertex)
    labelend = [-1] * (2 * nvertex)
    inblossom = list(range(nvertex))
    blossomparent = [-1] * (2 * nvertex)
    blossomchilds: list[list[int] | None] = [None] * (2 * nvertex)
    blossombase = list(range(nvertex)) + [-1] * nvertex
    blossomendps: list[list[int] | None] = [None] * (2 * nvertex)
    bestedge = [-1] * (2 * nvertex)
    blossombestedges: list[list[int] | None] = [None] * (2 * nvertex)
    unusedblossoms = list(range(nvertex, 2 * nvertex))
    dualvar = [maxweight] * nvertex + [0] * nvertex
    allowedge = [False] * nedge
    queue: list[int] = []

    def slack(k: int) -> int:
        i, j, wt = edges[k]
        return dualvar[i] + dualvar[j] - 2 * wt

    def leaves(b: int):
        if b < nvertex:
            yield b
        else:
            for t in blossomchilds[b]:
                if t < nvertex:
                    yield t
                else:
                    yield from leaves(t)

    def assign_label(w: int, t: int, p: int) -> None:
        # alternating-tree labels: 1 = S (outer), 2 = T (inner)
        while True:
            b = inblossom[w]
            label[w] = label[b] = t
            labelend[w] = labelend[b] = p
            bestedge[w] = bestedge[b] = -1
            if t == 1:
                queue.extend(leaves(b))
                return
            base = blossombase[b]
            w, t, p = endpoint[mate[base]], 1, mate[base] ^ 1

    def scan_blossom(v: int, w: int) -> int:
        """Trace back from v and w; return the common base or -1 for an augmenting path."""
        path = []
        base = -1
        while v != -1 or w != -1:
            b = inblossom[v]
            if label[b] & 4:
                base = blossombase[b]
                break
            path.append(b)
            label[b] = 5
            if labelend[b] == -1:
                v = -1
            else:
                v = endpoint[labelend[b]]
                b = inblossom[v]
                v = endpoint[labelend[b]]
            if w != -1:
                v, w = w, v
        for b in path:
            label[b] = 1
        return base

    def add_blossom(base: int, k: int) -> None:
        v, w, _ = edges[k]
        bb = inblossom[base]
        bv = inblossom[v]
        bw = inblossom[w]
        b = unusedblossoms.pop()
        blossombase[b] = base
        blossomparent[b] = -1
        blossomparent[bb] = b
        path: list[int] = []
        endps: list[int] = []
        blossomchilds[b] = path
        blossomendps[b] = endps
        while bv != bb:
            blossomparent[bv] = b
            path.append(bv)
            endps.append(labelend[bv])
            v = endpoint[labelend[bv]]
            bv = inblossom[v]
        path.append(bb)
        path.reverse()
        endps.reverse()
        endps.append(2 * k)
        while bw != bb:
            blossomparent[bw] = b
            path.append(bw)
            endps.append(labelend[bw] ^ 1)
            w = endpoint[labelend[bw]]
            bw = inblossom[w]
        label[b] = 1
        labelend[b] = labelend[bb]
        dualvar[b] = 0
        for v in leaves(b):
            if label[inblossom[v]] == 2:
                queue.append(v)
            inblossom[v] = b
        bestedgeto = [-1] * (2 * nvertex)
        for bv in path:
            if blossombestedges[bv] is None:
                nblists = [[p >> 1 for p in neighbend[v]] for v in leaves(bv)]
            else:
                nblists = [blossombestedges[bv]]
            for nblist in nblists:
                for kk in nblist:
                    i, j, _ = edges[kk]
                    if inblossom[j] == b:
                        i, j = j, i
                    bj = inblossom[j]
                    if bj != b and label[bj] == 1 and (
                        bestedgeto[bj] == -1 or slack(kk) < slack(bestedgeto[bj])
                    ):
                        bestedgeto[bj] = kk
            blossombestedges[bv] = None
            bestedge[bv] = -1
        blossombestedges[b] = [kk for kk in bestedgeto if kk != -1]
        bestedge[b] = -1
        for kk in blossombestedges[b]:
            if bestedge[b] == -1 or slack(kk) < slack(bestedge[b]):
                bestedge[b] = kk

    def expand_blossom(b: int, endstage: bool) -> None:
        for s in blossomchilds[b]:
            blossomparent[s] = -1
            if s < nvertex:
                inblossom[s] = s
            elif endstage and dualvar[s] == 0:
                expand_blossom(s, endstage)
            else:
                for v in leaves(s):
                    inblossom[v] = s
        if not endstage and label[b] == 2:
            # relabel the children on the even-length path through the blossom
            entrychild = inblossom[endpoint[labelend[b] ^ 1]]
            childs = blossomchilds[b]
            endps = blossomendps[b]
            j = childs.index(entrychild)
            if j & 1:
                j -= len(childs)
                jstep, endptrick = 1, 0
            else:
                jstep, endptrick = -1, 1
            p = labelend[b]
            while j != 0:
                label[endpoint[p ^ 1]] = 0
                label[endpoint[endps[j - endptrick] ^ endptrick ^ 1]] = 0
                assign_label(endpoint[p ^ 1], 2, p)
                allowedge[endps[j - endptrick] >> 1] = True
                j += jstep
                p = endps[j - endptrick] ^ endptrick
                allowedge[p >> 1] = True
                j += jstep
            bv = childs[j]
            label[endpoint[p ^ 1]] = label[bv] = 2
            labelend[endpoint[p ^ 1]] = labelend[bv] = p
            bestedge[bv] = -1
            j += jstep
            while childs[j] != entrychild:
                bv = childs[j]
                if label[bv] == 1:
                    j += jstep
                    continue
                v = -1
                for v in leaves(bv):
                    if label[v] != 0:
                        break
                if label[v] != 0:
                    label[v] = 0
                    label[endpoint[mate[blossombase[bv]]]] = 0
                    assign_label(v, 2, labelend[v])
                j += jstep
        label[b] = labelend[b] = -1
        blossomchilds[b] = blossomendps[b] = None
        blossombase[b] = -1
        blossombestedges[b] = None
        bestedge[b] = -1
        unusedblossoms.append(b)

    def augment_blossom(b: int, v: int) -> None:
        t = v
        while blossomparent[t] != b:
            t = blossomparent[t]
        if t >= nvertex:
            augment_blossom(t, v)
        childs = blossomchilds[b]
        endps = blossomendps[b]
        i = j = childs.index(t)
        if i & 1:
            j -= len(childs)
            jstep, endptrick = 1, 0
        else:
            jstep, endptrick = -1, 1
        while j != 0:
            j += jstep
            t = childs[j]
            p = endps[j - endptrick] ^ endptrick
            if t >= nvertex:
                augment_blossom(t, endpoint[p])
            j += jstep
            t = childs[j]
            if t >= nvertex:
                augment_blossom(t, endpoint[p ^ 1])
            mate[endpoint[p]] = p ^ 1
            mate[endpoint[p ^ 1]] = p
        blossomchilds[b] = childs[i:] + childs[:i]
        blossomendps[b] = endps[i:] + endps[:i]
        blossombase[b] = blossombase[blossomchilds[b][0]]

    def augment_matching(k: int) -> None:
        v, w, _ = edges[k]
        for s, p in ((v, 2 * k + 1), (w, 2 * k)):
            while True:
                bs = inblossom[s]
                if bs >= nvertex:
                    augment_blossom(bs, s)
                mate[s] = p
                if labelend[bs] == -1:
                    break
                t = endpoint[labelend[bs]]
                bt = inblossom[t]
                s = endpoint[labelend[bt]]
                j = endpoint[labelend[bt] ^ 1]
                if bt >= nvertex:
                    augment_blossom(bt, j)
                mate[j] = labelend[bt]
                p = labelend[bt] ^ 1

    for _stage in range(nvertex):
        label[:] = [0] * (2 * nvertex)
        bestedge[:] = [-1] * (2 * nvertex)
        blossombestedges[nvertex:] = [None] * nvertex
        allowedge[:] = [False] * nedge
        queue[:] = []
        for v in range(nvertex):
            if mate[v] == -1 and label[inblossom[v]] == 0:
                assign_label(v, 1, -1)

        augmented = False
        while True:
            while queue and not augmented:
                v = queue.pop()
                for p in neighbend[v]:
                    k = p >> 1
                    w = endpoint[p]
                    if inblossom[v] == inblossom[w]:
                        continue
                    kslack = 0
                    if not allowedge[k]:
                        kslack = slack(k)
                        if kslack <= 0:
                            allowedge[k] = True
                    if allowedge[k]:
                        if label[inblossom[w]] == 0:
                            assign_label(w, 2, p ^ 1)
                        elif label[inblossom[w]] == 1:
                            base = scan_blossom(v, w)
                            if base >= 0:
                                add_blossom(base, k)
                            else:
                                augment_matching(k)
                                augmented = True
                                break
                        elif label[w] == 0:
                            label[w] = 2
                            labelend[w] = p ^ 1
                    elif label[inblossom[w]] == 1:
                        b = inblossom[v]
                        if bestedge[b] == -1 or kslack < slack(bestedge[b]):
                            bestedge[b] = k
                    elif label[w] == 0:
                        if bestedge[w] == -1 or kslack < slack(bestedge[w]):
                            bestedge[w] = k
            if augmented:
                break

            # no augmenting path under the current duals: compute the dual step
            deltatype = -1
            delta = deltaedge = deltablossom = None
            if not maxcardinality:
                deltatype = 1
                delta = min(dualvar[:nvertex])
            for v in range(nvertex):
                if label[inblossom[v]] == 0 and bestedge[v] != -1:
                    dd = slack(bestedge[v])
                    if deltatype == -1 or dd < delta:
                        delta, deltatype, deltaedge = dd, 2, bestedge[v]
            for b in range(2 * nvertex):
                if blossomparent[b] == -1 and label[b] == 1 and bestedge[b] != -1:
                    kslack = slack(bestedge[b])
                    dd = kslack // 2
                    if deltatype == -1 or dd < delta:
                        delta, deltatype, deltaedge = dd, 3, bestedge[b]
            for b in range(nvertex, 2 * nvertex):
                if (
                    blossombase[b] >= 0
                    and blossomparent[b] == -1
                    and label[b] == 2
                    and (deltatype == -1 or dualvar[b] < delta)
                ):
                    delta, deltatype, deltablossom = dualvar[b], 4, b
            if deltatype == -1:
                # maxcardinality with no further augmenting path: final step
                deltatype = 1
                delta = max(0, min(dualvar[:nvertex]))

            for v in range(nvertex):
                lb = label[inblossom[v]]
                if lb == 1:
                    dualvar[v] -= delta
                elif lb == 2:
                    dualvar[v] += delta
            for b in range(nvertex, 2 * nvertex):
                if blossombase[b] >= 0 and blossomparent[b] == -1:
                    if label[b] == 1:
                        dualvar[b] += delta
                    elif label[b] == 2:
                        dualvar[b] -= delta

            if deltatype == 1:
                break
            if deltatype == 2:
                allowedge[deltaedge] = True
                i, j, _ = edges[deltaedge]
                if label[inblossom[i]] == 0:
                    i, j = j, i
                queue.append(i)
            elif deltatype == 3:
                allowedge[deltaedge] = True
                i, j, _ = edges[deltaedge]
                queue.append(i)
            else:
                expand_blossom(deltablossom, False)

        if not augmented:
            break
        for b in range(nvertex, 2 * nvertex):
            if blossomparent[b] == -1 and blossombase[b] >= 0 and label[b] == 1 and dualvar[b] == 0:
                expand_blossom(b, True)

    result = [endpoint[m] if m >= 0 else -1 for m in mate]
    return _Solution(result, dualvar, blossomparent, nvertex)


# ----------------------------------------------------------- public matchers


def _solve_min_perfect(w: list[list[int]], verts: list[int]) -> tuple[_Solution, list[tuple[int, int, int]]]:
    """Min-cost perfect matching on the complete graph over local ``verts``."""
    m = len(verts)
    top = max((w[verts[a]][verts[b]] for a in range(m) for b in range(a + 1, m)), default=0) + 1
    edges = [(a, b, top - w[verts[a]][verts[b]]) for a in range(m) for b in range(a + 1, m)]
    sol = _max_weight_matching(m, edges, maxcardinality=True)
    if any(x == -1 for x in sol.mate):
        raise RuntimeError("blossom solver returned an imperfect matching on a complete graph")
    return sol, edges


def _cost(w, verts, mate) -> int:
    return sum(w[verts[a]][verts[mate[a]]] for a in range(len(verts)) if a < mate[a])


def min_weight_perfect_matching(d: DistanceMatrix, subset: Sequence[int]) -> Matching:
    """Exact minimum-cost perfect matching of ``subset`` under ``d``.

    Among all optimal matchings the lexicographically smallest sorted pair
    list is returned, so output does not depend on solver internals.
    """
    verts = sorted(int(v) for v in subset)
    if len(set(verts)) != len(verts):
        raise InputError("subset contains repeated vertices")
    if any(not 0 <= v < d.n for v in verts):
        raise InputError("subset vertex out of range")
    if len(verts) % 2:
        raise InputError(f"cannot perfectly match an odd subset of size {len(verts)}")
    if not verts:
        return Matching((), 0.0)

    m = len(verts)
    flat = exact_integers([float(d.d[u, v]) for u in verts for v in verts])
    w = [flat[a * m : (a + 1) * m] for a in range(m)]
    local = list(range(m))
    sol, edges = _solve_min_perfect(w, local)
    mate = list(sol.mate)
    edge_weight = {(a, b): wt for a, b, wt in edges}

    def tight(a: int, b: int) -> bool:
        return sol.slack(a, b, edge_weight[(a, b)]) == 0

    # Canonicalize: fix the smallest free vertex to its smallest feasible
    # partner. Every optimal matching uses only tight edges of the final duals.
    free = set(local)
    remaining = _cost(w, local, mate)
    for s in local:
        if s not in free:
            continue
        for p in range(s + 1, mate[s]):
            if p not in free or not tight(s, p):
                continue
            rest = sorted(free - {s, p})
            sub_mate: list[int] = []
            sub_cost = 0
            if rest:
                sub, _ = _solve_min_perfect(w, rest)
                sub_mate = sub.mate
                sub_cost = _cost(w, rest, sub_mate)
            if w[s][p] + sub_cost == remaining:
                mate[s], mate[p] = p, s
                for a, b in enumerate(sub_mate):
                    mate[rest[a]] = rest[b]
                break
        remaining -= w[s][mate[s]]
        free.discard(s)
        free.discard(mate[s])

    pairs = _normalize((verts[a], verts[mate[a]]) for a in range(m) if a < mate[a])
    return Matching(pairs, math.fsum(float(d.d[u, v]) for u, v in pairs))


def max_cardinality_matching(g: WeightedGraph) -> Matching:
    """Maximum-cardinality matching of ``g``'s edge set; weights are ignored.

    ``cost`` is the number of matched pairs.
    """
    if g.m == 0:
        return Matching((), 0.0)
    sol = _max_weight_matching(g.n, [(u, v, 1) for u, v, _ in g.edges], maxcardinality=False)
    pairs = _normalize((v, sol.mate[v]) for v in range(g.n) if sol.mate[v] > v)
    return Matching(pairs, float(len(pairs)))


def brute_force_matching(d: DistanceMatrix, subset: Sequence[int]) -> Matching:
    """Exhaustive minimum-cost perfect matching by DP over vertex bitmasks."""
    verts = sorted(int(v) for v in subset)
    if len(verts) > BRUTE_FORCE_LIMIT:
        raise SizeLimitError(f"brute-force matching is capped at {BRUTE_FORCE_LIMIT} vertices, got {len(verts)}")
    if len(set(verts)) != len(verts):
        raise InputError("subset contains repeated vertices")
    if len(verts) % 2:
        raise InputError(f"cannot perfectly match an odd subset of size {len(verts)}")
    m = len(verts)
    dist = [[float(d.d[verts[a], verts[b]]) for b in range(m)] for a in range(m)]

    @lru_cache(maxsize=None)
    def best(mask: int) -> tuple[float, int]:
        if mask == 0:
            return 0.0, -1
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        top, choice = math.inf, -1
        j_bits = rest
        while j_bits:
            low = j_bits & -j_bits
            j = low.bit_length() - 1
            j_bits ^= low
            c = dist[i][j] + best(rest & ~low)[0]
            if c < top - TOL:
                top, choice = c, j
        return top, choice

    mask = (1 << m) - 1
    total = best(mask)[0]
    pairs = []
    while mask:
        i = (mask & -mask).bit_length() - 1
        j = best(mask)[1]
        pairs.append((verts[i], verts[j]))
        mask &= ~((1 << i) | (1 << j))
    return Matching(_normalize(pairs), total)
