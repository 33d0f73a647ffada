"""Independent brute-force oracles used across the test modules.

These deliberately avoid the BFS machinery in chevbound.norms: everything is
scalar products and explicit set unions."""


def naive_conjugate_set(G, S):
    out = set()
    for s in S:
        s_inv = G.inv(s)
        for g in range(G.order):
            out.add(G.conj(g, s))
            out.add(G.conj(g, s_inv))
    return out


def naive_ball(G, S, k):
    """Products of at most k conjugates of S u S^{-1}, plus the identity."""
    conj = naive_conjugate_set(G, S)
    out = {G.identity}
    level = {G.identity}
    for _ in range(k):
        level = {G.mult(x, c) for x in level for c in conj}
        out |= level
    return out


def naive_word_norm(G, S, g, limit=None):
    if limit is None:
        limit = G.order
    if g == G.identity:
        return 0
    conj = naive_conjugate_set(G, S)
    level = {G.identity}
    for k in range(1, limit + 1):
        level = {G.mult(x, c) for x in level for c in conj}
        if g in level:
            return k
    return None
