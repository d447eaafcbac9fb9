"""Pure-Python table fill for the colorful-subgraph DP.

Mirrors ``_pccs_ext.pyx`` statement for statement; used when the compiled
extension is unavailable and as the reference in backend-equivalence tests.

Layout (shared by both backends): anchors of vertex ``v`` occupy slots
``anc_off[v]:anc_off[v+1]`` sorted by weight, the self-anchor (weight 0)
first.  A vertex only has entries for colour sets containing its own
colour, so colour set ``mask`` of a vertex with colour ``c`` is stored in
row ``compress(mask, c)`` (bit ``c`` squeezed out) of a
``2**(k-1) x S`` table.
"""

INF = 1 << 62


def compress(mask, c):
    return (mask & ((1 << c) - 1)) | ((mask >> (c + 1)) << c)


def fill_table(n, k, col, anc_off, anc_vertex, pay, grp_end, pos, trace=None):
    col = list(col)
    anc_off = list(anc_off)
    anc_vertex = list(anc_vertex)
    pay = list(pay)
    grp_end = list(grp_end)
    pos = list(pos)
    S = len(pay)
    R = 1 << (k - 1)
    D = [INF] * (R * S)
    alive = bytearray(R * n)

    for mask in range(1, 1 << k):
        for v in range(n):
            c = col[v]
            if c < 0 or not (mask >> c) & 1:
                continue
            bit = 1 << c
            row = compress(mask, c)
            base = row * S
            a0, a1 = anc_off[v], anc_off[v + 1]
            if mask == bit:
                for s in range(a0, a1):
                    D[base + s] = pay[s]
                alive[row * n + v] = 1
                continue
            rest = mask ^ bit

            # extension by a leaf edge {v, u}
            cand = [INF] * (a1 - a0)
            for s in range(a0, a1):
                u = anc_vertex[s]
                if u == v:
                    continue
                cu = col[u]
                if cu < 0 or not (rest >> cu) & 1:
                    continue
                r2 = compress(rest, cu)
                if trace is not None:
                    trace(mask, rest)
                if not alive[r2 * n + u]:
                    continue
                bu = r2 * S
                best = INF
                for t in range(pos[s], anc_off[u + 1]):
                    x = D[bu + t]
                    if x < best:
                        best = x
                cand[s - a0] = best
            run = INF
            pref = cand
            for i in range(a1 - a0):
                if cand[i] < run:
                    run = cand[i]
                pref[i] = run
            out = [INF] * (a1 - a0)
            for s in range(a0, a1):
                b = pref[grp_end[s] - a0]
                if b < INF:
                    out[s - a0] = b + pay[s]

            # split at v into two subtrees sharing only v
            low = rest & -rest
            others = rest ^ low
            sub = others
            while True:
                sub = (sub - 1) & others
                if sub == others:
                    break
                s1 = sub | low
                m1 = s1 | bit
                m2 = (rest ^ s1) | bit
                r1 = compress(m1, c)
                r2 = compress(m2, c)
                if trace is not None:
                    trace(mask, m1)
                    trace(mask, m2)
                if alive[r1 * n + v] and alive[r2 * n + v]:
                    b1, b2 = r1 * S, r2 * S
                    for s in range(a0, a1):
                        x = D[b1 + s]
                        y = D[b2 + s]
                        if x < INF and y < INF:
                            val = x + y - pay[s]
                            if val < out[s - a0]:
                                out[s - a0] = val
            any_finite = False
            for s in range(a0, a1):
                val = out[s - a0]
                D[base + s] = val
                if val < INF:
                    any_finite = True
            if any_finite:
                alive[row * n + v] = 1
    return D, alive
