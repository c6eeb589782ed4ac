"""Bipartite matching and assignment kernels.

Deterministic by construction: vertices are processed in sorted order
and adjacency lists are sorted, so identical inputs give identical
matchings.
"""
from __future__ import annotations

import sys
from collections import deque

INF = float("inf")

# Augmenting searches recurse one level per reassigned item.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


def hopcroft_karp(left: list[int], adj: dict[int, tuple[int, ...]]) -> dict[int, int]:
    """Maximum matching from `left` vertices into their neighbors.

    Returns the left-to-right matching map.
    """
    pair_l: dict[int, int] = {}
    pair_r: dict[int, int] = {}
    dist: dict[int, float] = {}

    def bfs() -> bool:
        q = deque()
        for u in left:
            if u not in pair_l:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = pair_r.get(v)
                if w is None:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = pair_r.get(v)
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                pair_l[u] = v
                pair_r[v] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in left:
            if u not in pair_l:
                dfs(u)
    return pair_l


def alternating_reachable(start: int, adj: dict[int, tuple[int, ...]],
                          pair_r: dict[int, int]) -> tuple[set, set]:
    """Left and right vertices reachable from an unmatched left vertex.

    Paths alternate non-matching (left to right) and matching (right to
    left) edges, as in the Koenig argument.
    """
    seen_l = {start}
    seen_r = set()
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v in seen_r:
                continue
            seen_r.add(v)
            w = pair_r.get(v)
            if w is not None and w not in seen_l:
                seen_l.add(w)
                queue.append(w)
    return seen_l, seen_r


def capacitated_assignment(items: list[int], adj: dict[int, tuple[int, ...]],
                           capacity: int) -> dict[int, int] | set:
    """Assign every item to one neighbor, using each target at most `capacity` times.

    Returns the full assignment map on success. On failure returns a
    blocking item set X (a Hall-type violator with |X| > capacity * |N(X)|).
    """
    assigned: dict[int, int] = {}
    load: dict[int, list[int]] = {}

    def augment(u: int, visited: set) -> bool:
        for v in adj[u]:
            if v in visited:
                continue
            visited.add(v)
            slot = load.setdefault(v, [])
            if len(slot) < capacity:
                slot.append(u)
                assigned[u] = v
                return True
            for w in list(slot):
                slot.remove(w)
                del assigned[w]
                if augment(w, visited):
                    slot.append(u)
                    assigned[u] = v
                    return True
                slot.append(w)
                assigned[w] = v
        return False

    for u in items:
        visited: set = set()
        if not augment(u, visited):
            # Every visited target is saturated and all its occupants were
            # re-place-attempted, so their neighborhoods stay inside `visited`.
            x = {u} | {w for v in visited for w in load.get(v, ())}
            return x
    return assigned
