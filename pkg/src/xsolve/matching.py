"""Maximum-cardinality matching in general graphs (Edmonds' blossom algorithm)."""

from __future__ import annotations

from collections import deque


def max_cardinality_matching(n, edges):
    """Return ``mate`` with ``mate[v]`` the partner of ``v`` or -1.

    Vertices are ``0..n-1``.  Parallel edges are harmless; self-loops are
    rejected.  A greedy pass seeds the matching, then one alternating-tree
    search runs from every vertex left free.  A vertex whose search fails
    never becomes augmentable later, so a single sweep suffices.
    """
    adj = [[] for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop on vertex {u}")
        adj[u].append(v)
        adj[v].append(u)

    mate = [-1] * n
    for u in range(n):
        if mate[u] == -1:
            for v in adj[u]:
                if mate[v] == -1:
                    mate[u], mate[v] = v, u
                    break

    for root in range(n):
        if mate[root] == -1 and adj[root]:
            _augment_from(root, adj, mate)
    return mate


def _augment_from(root, adj, mate):
    n = len(adj)
    parent = [-1] * n
    base = list(range(n))
    in_tree = [False] * n  # even vertices already queued
    touched = [root]
    in_tree[root] = True
    queue = deque([root])

    def lca(a, b):
        seen = set()
        while True:
            a = base[a]
            seen.add(a)
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if b in seen:
                return b
            b = parent[mate[b]]

    def mark_path(v, b, child, blossom):
        while base[v] != b:
            blossom.add(base[v])
            blossom.add(base[mate[v]])
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                b = lca(v, to)
                blossom = set()
                mark_path(v, b, to, blossom)
                mark_path(to, b, v, blossom)
                for i in touched:
                    if base[i] in blossom:
                        base[i] = b
                        if not in_tree[i]:
                            in_tree[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                touched.append(to)
                if mate[to] == -1:
                    _flip(to, parent, mate)
                    return True
                w = mate[to]
                in_tree[w] = True
                touched.append(w)
                queue.append(w)
    return False


def _flip(v, parent, mate):
    while v != -1:
        pv = parent[v]
        nxt = mate[pv]
        mate[v], mate[pv] = pv, v
        v = nxt


def matching_size(mate):
    return sum(1 for v, m in enumerate(mate) if m > v)
