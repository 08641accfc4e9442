"""Array kernels shared by the solvers.

Every kernel has a numba version and a numpy version with the same
signature and results.  The public names at the bottom of the module are
bound according to :mod:`buchigames._jit`.

Graphs are passed as CSR arrays.  ``alive`` masks the current sub-arena;
entries whose endpoint is dead are skipped.
"""
import numpy as np

from ._jit import USE_NUMBA, njit

INF = np.int64(1) << np.int64(62)


# ---------------------------------------------------------------- attractor

@njit
def _attractor_nb(in_ptr, in_src, owner, odeg, alive, player, seed, n_alive):
    n = alive.shape[0]
    rank = np.full(n, -1, np.int64)
    cnt = odeg.copy()
    queue = np.empty(n, np.int64)
    head = 0
    tail = 0
    for v in range(n):
        if seed[v] and alive[v]:
            rank[v] = 0
            queue[tail] = v
            tail += 1
    # once every alive vertex is in, the remaining scans cannot change anything
    while head < tail and tail < n_alive:
        v = queue[head]
        head += 1
        r = rank[v] + 1
        for p in range(in_ptr[v], in_ptr[v + 1]):
            u = in_src[p]
            if not alive[u] or rank[u] >= 0:
                continue
            if owner[u] == player:
                rank[u] = r
                queue[tail] = u
                tail += 1
            else:
                cnt[u] -= 1
                if cnt[u] == 0:
                    rank[u] = r
                    queue[tail] = u
                    tail += 1
    return rank


def gather_ranges(ptr, ids):
    """Concatenated index ranges ``ptr[v]..ptr[v+1]`` for every ``v`` in ``ids``."""
    starts = ptr[ids]
    lens = ptr[ids + 1] - starts
    total = int(lens.sum())
    if total == 0:
        return np.zeros(0, np.int64)
    offs = np.repeat(starts - np.cumsum(lens) + lens, lens)
    return offs + np.arange(total, dtype=np.int64)


def _attractor_np(in_ptr, in_src, owner, odeg, alive, player, seed, n_alive):
    n = alive.shape[0]
    rank = np.full(n, -1, np.int64)
    cnt = odeg.astype(np.int64)
    frontier = np.nonzero(seed & alive)[0]
    rank[frontier] = 0
    r = 0
    total = frontier.size
    while frontier.size and total < n_alive:
        r += 1
        u = in_src[gather_ranges(in_ptr, frontier)]
        u = u[alive[u] & (rank[u] < 0)]
        mine = owner[u] == player
        new_own = np.unique(u[mine])
        opp, hits = np.unique(u[~mine], return_counts=True)
        cnt[opp] -= hits
        frontier = np.concatenate([new_own, opp[cnt[opp] == 0]])
        rank[frontier] = r
        total += frontier.size
    return rank


# ---------------------------------------------------------------- removal

@njit
def _remove_nb(in_ptr, in_src, out_ptr, out_dst, alive, odeg, ideg, ids):
    for v in ids:
        alive[v] = False
    for v in ids:
        for p in range(in_ptr[v], in_ptr[v + 1]):
            u = in_src[p]
            if alive[u]:
                odeg[u] -= 1
        for p in range(out_ptr[v], out_ptr[v + 1]):
            w = out_dst[p]
            if alive[w]:
                ideg[w] -= 1


def _remove_np(in_ptr, in_src, out_ptr, out_dst, alive, odeg, ideg, ids):
    alive[ids] = False
    u = in_src[gather_ranges(in_ptr, ids)]
    u = u[alive[u]]
    if u.size:
        np.subtract.at(odeg, u, 1)
    w = out_dst[gather_ranges(out_ptr, ids)]
    w = w[alive[w]]
    if w.size:
        np.subtract.at(ideg, w, 1)


# ---------------------------------------------------------------- level graphs

@njit
def _csr_from_pairs(n, keys, vals):
    ptr = np.zeros(n + 1, np.int64)
    for x in keys:
        ptr[x + 1] += 1
    for v in range(n):
        ptr[v + 1] += ptr[v]
    fill = ptr[:-1].copy()
    out = np.empty(keys.shape[0], np.int64)
    for e in range(keys.shape[0]):
        x = keys[e]
        out[fill[x]] = vals[e]
        fill[x] += 1
    return ptr, out


@njit
def _level_nb(cap, alive, owner, odeg, in_head, in_next, in_src, in_eid,
              out_head, out_next, out_dst, out_eid, stamp, stamp_val):
    """Edges of the level graph, read from lazily cleaned adjacency lists.

    ``in_next``/``out_next`` are singly linked lists over CSR positions; a
    dead endpoint met during a walk is unlinked so it is never read again.
    Work is O(cap * |alive|) plus the number of unlinked entries.
    """
    n = alive.shape[0]
    live_m = 0
    n_alive = 0
    for v in range(n):
        if alive[v]:
            live_m += odeg[v]
            n_alive += 1
    # the capped in-lists come out grouped by target, so they go straight into CSR form
    in_ptr = np.zeros(n + 1, np.int64)
    lodeg = np.zeros(n, np.int64)
    lin = np.empty(min(live_m, cap * n_alive), np.int64)
    cnt = 0
    for v in range(n):
        if alive[v]:
            prev = -1
            p = in_head[v]
            taken = 0
            while p != -1 and taken < cap:
                nxt = in_next[p]
                u = in_src[p]
                if not alive[u]:
                    if prev == -1:
                        in_head[v] = nxt
                    else:
                        in_next[prev] = nxt
                    p = nxt
                    continue
                if odeg[u] <= cap:
                    # only sources of this kind are walked again below
                    stamp[in_eid[p]] = stamp_val
                lin[cnt] = u
                lodeg[u] += 1
                cnt += 1
                taken += 1
                prev = p
                p = nxt
        in_ptr[v + 1] = cnt
    n_in = cnt
    xu = np.empty(min(live_m, cap * n_alive), np.int64)
    xv = np.empty_like(xu)
    n_x = 0
    for u in range(n):
        if not alive[u] or odeg[u] > cap:
            continue
        prev = -1
        p = out_head[u]
        while p != -1:
            nxt = out_next[p]
            v = out_dst[p]
            if not alive[v]:
                if prev == -1:
                    out_head[u] = nxt
                else:
                    out_next[prev] = nxt
                p = nxt
                continue
            if stamp[out_eid[p]] != stamp_val:
                xu[n_x] = u
                xv[n_x] = v
                lodeg[u] += 1
                n_x += 1
            prev = p
            p = nxt
    if n_x == 0:
        lin_src = lin[:n_in]
    else:
        # append the extra edges after each target's capped in-list
        extra = np.zeros(n + 1, np.int64)
        for e in range(n_x):
            extra[xv[e] + 1] += 1
        for v in range(n):
            extra[v + 1] += extra[v]
        new_ptr = in_ptr + extra
        lin_src = np.empty(n_in + n_x, np.int64)
        fill = np.empty(n, np.int64)
        for v in range(n):
            q = new_ptr[v]
            for p in range(in_ptr[v], in_ptr[v + 1]):
                lin_src[q] = lin[p]
                q += 1
            fill[v] = q
        for e in range(n_x):
            v = xv[e]
            lin_src[fill[v]] = xu[e]
            fill[v] += 1
        in_ptr = new_ptr
    z = np.zeros(n, np.bool_)
    for v in range(n):
        if alive[v]:
            if owner[v] == 2 and lodeg[v] == 0:
                z[v] = True
            elif owner[v] == 1 and odeg[v] > cap:
                z[v] = True
    return in_ptr, lin_src, lodeg, z


def level_np(cap, alive, owner, odeg, in_ptr, seq_src, seq_dst):
    """Vectorised level graph: O(m) per call, no mutable adjacency state."""
    n = alive.shape[0]
    live = alive[seq_src] & alive[seq_dst]
    before = np.concatenate([[0], np.cumsum(live)])
    pos_rank = before[:-1] - before[in_ptr[:-1]][seq_dst]
    sel = live & ((pos_rank < cap) | (odeg[seq_src] <= cap))
    src = seq_src[sel]
    dst = seq_dst[sel]
    lin_ptr = np.zeros(n + 1, np.int64)
    np.cumsum(np.bincount(dst, minlength=n), out=lin_ptr[1:])
    lodeg = np.bincount(src, minlength=n).astype(np.int64)
    z = alive & (((owner == 2) & (lodeg == 0)) | ((owner == 1) & (odeg > cap)))
    return lin_ptr, src, lodeg, z


def csr_from_pairs_np(n, keys, vals):
    order = np.argsort(keys, kind="stable")
    ptr = np.zeros(n + 1, np.int64)
    np.cumsum(np.bincount(keys, minlength=n), out=ptr[1:])
    return ptr, vals[order]


# ---------------------------------------------------------------- lifting

@njit
def _lift_impl(out_ptr, out_dst, in_ptr, in_src, owner, alive, tmask, cap, debug):
    k = tmask.shape[0]
    n = alive.shape[0]
    rho = np.zeros((k, n), np.int64)
    best_c = np.zeros((k, n), np.int64)
    count_c = np.zeros((k, n), np.int64)
    in_l = np.zeros((k, n), np.bool_)
    deg = np.zeros(n, np.int64)
    for v in range(n):
        if alive[v]:
            d = 0
            for p in range(out_ptr[v], out_ptr[v + 1]):
                if alive[out_dst[p]]:
                    d += 1
            deg[v] = d
    qsize = k * n + 1
    qv = np.empty(qsize, np.int64)
    ql = np.empty(qsize, np.int64)
    head = 0
    tail = 0
    for l in range(k):
        for v in range(n):
            if alive[v]:
                count_c[l, v] = deg[v]
                if not tmask[l, v]:
                    in_l[l, v] = True
                    qv[tail] = v
                    ql[tail] = l
                    tail += 1
    while head != tail:
        v = qv[head]
        l = ql[head]
        head += 1
        if head == qsize:
            head = 0
        in_l[l, v] = False
        old = rho[l, v]
        in_t = tmask[l, v]
        row = (l + 1) % k if in_t else l
        p1 = owner[v] == 1
        b = INF if p1 else np.int64(-1)
        for p in range(out_ptr[v], out_ptr[v + 1]):
            w = out_dst[p]
            if alive[w]:
                x = rho[row, w]
                if p1:
                    if x < b:
                        b = x
                elif x > b:
                    b = x
        best_c[l, v] = b
        if p1:
            c = 0
            for p in range(out_ptr[v], out_ptr[v + 1]):
                w = out_dst[p]
                if alive[w]:
                    if in_t:
                        if rho[row, w] < INF:
                            c += 1
                    elif rho[row, w] == b:
                        c += 1
            count_c[l, v] = c
        if in_t and b != INF:
            new = np.int64(0)
        elif b < cap[l]:
            new = b + 1
        else:
            new = INF
        if debug and new <= old:
            raise ValueError("lifted pair did not increase")
        rho[l, v] = new
        for p in range(in_ptr[v], in_ptr[v + 1]):
            w = in_src[p]
            if not alive[w] or tmask[l, w] or in_l[l, w] or rho[l, w] == INF:
                continue
            push = False
            if owner[w] == 1:
                if old == best_c[l, w]:
                    count_c[l, w] -= 1
                    push = count_c[l, w] == 0
            elif new > best_c[l, w]:
                push = True
            if push:
                in_l[l, w] = True
                qv[tail] = w
                ql[tail] = l
                tail += 1
                if tail == qsize:
                    tail = 0
        if new == INF:
            lm = (l - 1 + k) % k
            for p in range(in_ptr[v], in_ptr[v + 1]):
                w = in_src[p]
                if not alive[w] or not tmask[lm, w] or in_l[lm, w] or rho[lm, w] == INF:
                    continue
                push = True
                if owner[w] == 1:
                    count_c[lm, w] -= 1
                    push = count_c[lm, w] == 0
                if push:
                    in_l[lm, w] = True
                    qv[tail] = w
                    ql[tail] = lm
                    tail += 1
                    if tail == qsize:
                        tail = 0
    if debug:
        for l in range(k):
            for v in range(n):
                if not alive[v] or owner[v] != 1 or rho[l, v] == INF:
                    continue
                row = (l + 1) % k if tmask[l, v] else l
                c = 0
                for p in range(out_ptr[v], out_ptr[v + 1]):
                    w = out_dst[p]
                    if alive[w]:
                        if tmask[l, v]:
                            if rho[row, w] < INF:
                                c += 1
                        elif rho[row, w] == best_c[l, v]:
                            c += 1
                if c != count_c[l, v]:
                    raise ValueError("successor count cache drifted")
    return rho


# below this many edges the per-call overhead of the vectorised kernels
# outweighs the work, so the numpy backend runs the scalar loops as plain Python
SMALL_M = 256


def _attractor_mixed(in_ptr, in_src, owner, odeg, alive, player, seed, n_alive):
    if in_src.shape[0] <= SMALL_M:
        return _attractor_nb.py_func(in_ptr, in_src, owner, odeg, alive, player, seed, n_alive)
    return _attractor_np(in_ptr, in_src, owner, odeg, alive, player, seed, n_alive)


def _remove_mixed(in_ptr, in_src, out_ptr, out_dst, alive, odeg, ideg, ids):
    if in_src.shape[0] <= SMALL_M:
        return _remove_nb.py_func(in_ptr, in_src, out_ptr, out_dst, alive, odeg, ideg, ids)
    return _remove_np(in_ptr, in_src, out_ptr, out_dst, alive, odeg, ideg, ids)


if USE_NUMBA:
    attractor_kernel = _attractor_nb
    remove_kernel = _remove_nb
    lift_kernel = _lift_impl
    level_nb = _level_nb
    csr_from_pairs = _csr_from_pairs
else:
    attractor_kernel = _attractor_mixed
    remove_kernel = _remove_mixed
    lift_kernel = _lift_impl.py_func
    level_nb = None
    csr_from_pairs = csr_from_pairs_np
