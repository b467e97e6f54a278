"""Compiled inner loops of the coset enumerator.

Tables are int32 arrays of shape (cap + 1, ncols); row 0 is unused and an
entry of 0 means undefined.  Column 2k is generator k, column 2k+1 its
inverse, and ``inv[x]`` is the column inverse to ``x``.  For a generator
known to be an involution ``inv[2k] == 2k`` and column 2k+1 is a shadow
that is left empty during enumeration (``shadow[x] == 1``) and filled in
afterwards.

``par`` is the union-find forest over cosets: ``par[c] == c`` iff ``c`` is
live.  Relators are stored concatenated in ``rels`` with offsets
``rstart``; ``cr``/``cstart`` hold every cyclic conjugate of every relator
and its inverse, grouped by first column through ``cidx``.

State counters live in ``st`` (int64):
    st[0] number of allocated rows     st[1] live cosets
    st[2] deduction stack size         st[3] deduction overflow flag
    st[4] max rows ever allocated      st[5] total cosets defined
    st[6] coincidences                 st[7] queue length scratch
    st[8] preferred-definition count   st[9] preferred-definition head
"""

import numpy as np
from numba import njit

NOSPACE = 1
OK = 0

N_ALLOC, N_LIVE, N_DED, DED_OVF, MAX_ALLOC, N_DEFINED, N_COINC, QLEN, PDL_N, PDL_HEAD = range(10)
NSTATE = 10


@njit(cache=True)
def _rep(par, c):
    r = c
    while par[r] != r:
        r = par[r]
    while par[c] != r:
        nxt = par[c]
        par[c] = r
        c = nxt
    return r


@njit(cache=True)
def _merge(par, queue, st, k, l):
    a = _rep(par, k)
    b = _rep(par, l)
    if a != b:
        if a > b:
            a, b = b, a
        par[b] = a
        queue[st[QLEN]] = b
        st[QLEN] += 1
        st[N_LIVE] -= 1
        st[N_COINC] += 1


@njit(cache=True)
def _push(ded, st, c, x):
    if st[N_DED] < ded.shape[0]:
        ded[st[N_DED], 0] = c
        ded[st[N_DED], 1] = x
        st[N_DED] += 1
    else:
        st[DED_OVF] = 1


@njit(cache=True)
def coincidence(table, inv, par, queue, ded, st, a, b):
    """Identify cosets a and b and everything that follows from it."""
    ncol = table.shape[1]
    st[QLEN] = 0
    _merge(par, queue, st, a, b)
    i = 0
    while i < st[QLEN]:
        g = queue[i]
        i += 1
        for x in range(ncol):
            d = table[g, x]
            if d != 0:
                xi = inv[x]
                table[d, xi] = 0
                mu = _rep(par, g)
                nu = _rep(par, d)
                if table[mu, x] != 0:
                    _merge(par, queue, st, nu, table[mu, x])
                elif table[nu, xi] != 0:
                    _merge(par, queue, st, mu, table[nu, xi])
                else:
                    table[mu, x] = nu
                    table[nu, xi] = mu
                    _push(ded, st, mu, x)


@njit(cache=True)
def define(table, inv, par, st, c, x):
    n = st[N_ALLOC]
    if n + 1 >= table.shape[0]:
        return -1
    n += 1
    st[N_ALLOC] = n
    st[N_LIVE] += 1
    st[N_DEFINED] += 1
    if n > st[MAX_ALLOC]:
        st[MAX_ALLOC] = n
    par[n] = n
    for y in range(table.shape[1]):
        table[n, y] = 0
    table[c, x] = n
    table[n, inv[x]] = c
    return n


@njit(cache=True)
def _record_gap(pdl, st, f, x):
    size = pdl.shape[0]
    if size == 0:
        return
    k = (st[PDL_HEAD] + st[PDL_N]) % size
    pdl[k, 0] = f
    pdl[k, 1] = x
    if st[PDL_N] < size:
        st[PDL_N] += 1
    else:
        st[PDL_HEAD] = (st[PDL_HEAD] + 1) % size


@njit(cache=True)
def scan(table, inv, par, queue, ded, st, pdl, rels, s, e, c):
    """Scan relator rels[s:e] at coset c without defining new cosets.

    A gap of one entry is a deduction; a gap of two is remembered in
    ``pdl`` as a preferred definition."""
    f = c
    i = s
    b = c
    j = e - 1
    while i <= j and table[f, rels[i]] != 0:
        f = table[f, rels[i]]
        i += 1
    if i > j:
        if f != b:
            coincidence(table, inv, par, queue, ded, st, f, b)
        return
    while j >= i and table[b, inv[rels[j]]] != 0:
        b = table[b, inv[rels[j]]]
        j -= 1
    if j < i:
        coincidence(table, inv, par, queue, ded, st, f, b)
    elif i == j:
        table[f, rels[i]] = b
        table[b, inv[rels[i]]] = f
        _push(ded, st, f, rels[i])
    elif j == i + 1:
        _record_gap(pdl, st, f, rels[i])


@njit(cache=True)
def scan_and_fill(table, inv, par, queue, ded, st, rels, s, e, c):
    f = c
    i = s
    b = c
    j = e - 1
    while True:
        while i <= j and table[f, rels[i]] != 0:
            f = table[f, rels[i]]
            i += 1
        if i > j:
            if f != b:
                coincidence(table, inv, par, queue, ded, st, f, b)
            return OK
        while j >= i and table[b, inv[rels[j]]] != 0:
            b = table[b, inv[rels[j]]]
            j -= 1
        if j < i:
            coincidence(table, inv, par, queue, ded, st, f, b)
            return OK
        if i == j:
            table[f, rels[i]] = b
            table[b, inv[rels[i]]] = f
            _push(ded, st, f, rels[i])
            return OK
        if define(table, inv, par, st, f, rels[i]) < 0:
            return NOSPACE


@njit(cache=True)
def compact(table, par, st, cursor):
    """Renumber live cosets 1..live in order; returns the new index of ``cursor``
    (or of the next live coset after it)."""
    n = st[N_ALLOC]
    ncol = table.shape[1]
    newidx = np.zeros(n + 1, dtype=np.int32)
    k = 0
    new_cursor = -1
    for c in range(1, n + 1):
        if par[c] == c:
            k += 1
            newidx[c] = k
            if new_cursor < 0 and c >= cursor:
                new_cursor = k
    for c in range(1, n + 1):
        if par[c] == c:
            r = newidx[c]
            for x in range(ncol):
                v = table[c, x]
                if v != 0:
                    v = newidx[_rep(par, v)]
                table[r, x] = v
    for c in range(1, k + 1):
        par[c] = c
    st[N_ALLOC] = k
    st[N_LIVE] = k
    st[PDL_N] = 0
    if new_cursor < 0:
        new_cursor = k + 1
    return new_cursor


@njit(cache=True)
def _process_deductions(table, inv, par, queue, ded, st, pdl, cr, cstart, cidx):
    while st[N_DED] > 0:
        st[N_DED] -= 1
        c = ded[st[N_DED], 0]
        x = ded[st[N_DED], 1]
        if par[c] != c:
            continue
        for k in range(cidx[x], cidx[x + 1]):
            scan(table, inv, par, queue, ded, st, pdl, cr, cstart[k], cstart[k + 1], c)
            if par[c] != c:
                break
        if par[c] != c:
            continue
        d = table[c, x]
        if d == 0 or par[d] != d:
            continue
        xi = inv[x]
        for k in range(cidx[xi], cidx[xi + 1]):
            scan(table, inv, par, queue, ded, st, pdl, cr, cstart[k], cstart[k + 1], d)
            if par[d] != d:
                break


@njit(cache=True)
def _full_scan(table, inv, par, queue, ded, st, pdl, rels, rstart):
    """Scan every relator at every live coset (lookahead)."""
    nrel = rstart.shape[0] - 1
    c = 1
    while c <= st[N_ALLOC]:
        if par[c] == c:
            for r in range(nrel):
                scan(table, inv, par, queue, ded, st, pdl, rels, rstart[r], rstart[r + 1], c)
                if par[c] != c:
                    break
        c += 1


@njit(cache=True)
def _settle(table, inv, par, queue, ded, st, pdl, rels, rstart, cr, cstart, cidx):
    """Process pending deductions; after an overflow of the deduction stack
    fall back to a full scan, which catches whatever was dropped."""
    _process_deductions(table, inv, par, queue, ded, st, pdl, cr, cstart, cidx)
    while st[DED_OVF] != 0:
        st[DED_OVF] = 0
        st[N_DED] = 0
        _full_scan(table, inv, par, queue, ded, st, pdl, rels, rstart)
        _process_deductions(table, inv, par, queue, ded, st, pdl, cr, cstart, cidx)


@njit(cache=True)
def _make_room(table, inv, par, queue, ded, st, pdl, rels, rstart, cr, cstart, cidx, alpha):
    """Free rows by compaction, after a lookahead pass if nothing is dead.

    Returns the new index of ``alpha`` (negated if ``alpha`` died and the
    cursor moved to the next live coset), or 0 when no room could be made.
    """
    if st[N_LIVE] == st[N_ALLOC]:
        _full_scan(table, inv, par, queue, ded, st, pdl, rels, rstart)
        _settle(table, inv, par, queue, ded, st, pdl, rels, rstart, cr, cstart, cidx)
        if st[N_LIVE] == st[N_ALLOC]:
            return 0
    alive = par[alpha] == alpha
    nc = compact(table, par, st, alpha)
    return nc if alive else -nc


@njit(cache=True)
def _subgroup(table, inv, par, queue, ded, st, pdl, rels, rstart, cr, cstart, cidx, subs, sstart):
    nsub = sstart.shape[0] - 1
    for h in range(nsub):
        while scan_and_fill(table, inv, par, queue, ded, st, subs, sstart[h], sstart[h + 1], 1) == NOSPACE:
            if _make_room(table, inv, par, queue, ded, st, pdl, rels, rstart, cr, cstart, cidx, 1) == 0:
                return NOSPACE
        _settle(table, inv, par, queue, ded, st, pdl, rels, rstart, cr, cstart, cidx)
    return OK


@njit(cache=True)
def hlt(table, inv, shadow, par, queue, ded, st, pdl, rels, rstart, cr, cstart, cidx, subs, sstart):
    """HLT enumeration with deduction processing and lookahead.

    Cosets are taken in order; at each one every relator is scanned and
    filled, then the rest of the row is defined.  Deductions from closed
    relator scans, row definitions and coincidences are followed up with
    Felsch-style scans.  Returns OK or NOSPACE."""
    ncol = table.shape[1]
    nrel = rstart.shape[0] - 1
    if _subgroup(table, inv, par, queue, ded, st, pdl, rels, rstart, cr, cstart, cidx, subs, sstart) == NOSPACE:
        return NOSPACE
    alpha = 1
    r = 0
    x = 0
    while alpha <= st[N_ALLOC]:
        if par[alpha] != alpha:
            alpha += 1
            r = 0
            x = 0
            continue
        code = OK
        if r < nrel:
            code = scan_and_fill(table, inv, par, queue, ded, st, rels, rstart[r], rstart[r + 1], alpha)
            if code == OK:
                _settle(table, inv, par, queue, ded, st, pdl, rels, rstart, cr, cstart, cidx)
                r += 1
        elif x < ncol:
            if shadow[x] == 0 and table[alpha, x] == 0:
                if define(table, inv, par, st, alpha, x) < 0:
                    code = NOSPACE
                else:
                    _push(ded, st, alpha, x)
                    _settle(table, inv, par, queue, ded, st, pdl, rels, rstart, cr, cstart, cidx)
            if code == OK:
                x += 1
        else:
            n = st[N_ALLOC]
            if n > 1024 and 2 * (n - st[N_LIVE]) > n:
                alpha = compact(table, par, st, alpha + 1)
            else:
                alpha += 1
            r = 0
            x = 0
            continue
        if code == NOSPACE:
            st[N_DED] = 0
            res = _make_room(table, inv, par, queue, ded, st, pdl, rels, rstart, cr, cstart, cidx, alpha)
            if res == 0:
                return NOSPACE
            if res < 0:
                alpha = -res
                r = 0
                x = 0
            else:
                alpha = res
    return OK


@njit(cache=True)
def _pop_preferred(table, par, st, pdl):
    while st[PDL_N] > 0:
        k = st[PDL_HEAD]
        st[PDL_HEAD] = (k + 1) % pdl.shape[0]
        st[PDL_N] -= 1
        c = pdl[k, 0]
        x = pdl[k, 1]
        if c <= st[N_ALLOC] and par[c] == c and table[c, x] == 0:
            return c, x
    return 0, 0


@njit(cache=True)
def felsch(table, inv, shadow, par, queue, ded, st, pdl, fill, rels, rstart, cr, cstart, cidx, subs, sstart):
    """Felsch enumeration with preferred definitions.  Returns OK or NOSPACE.

    New cosets fill the first undefined entry of the lowest live coset,
    except that a preferred definition (one that closes a relator scan
    immediately) goes first while the table holds fewer than ``fill``
    times as many rows as the position of that entry."""
    ncol = table.shape[1]
    if _subgroup(table, inv, par, queue, ded, st, pdl, rels, rstart, cr, cstart, cidx, subs, sstart) == NOSPACE:
        return NOSPACE
    c = 1
    x = 0
    while True:
        found = False
        while c <= st[N_ALLOC]:
            if par[c] == c:
                while x < ncol:
                    if shadow[x] == 0 and table[c, x] == 0:
                        found = True
                        break
                    x += 1
                if found:
                    break
            c += 1
            x = 0
        if not found:
            return OK
        dc = c
        dx = x
        if st[N_ALLOC] < fill * c:
            pc, px = _pop_preferred(table, par, st, pdl)
            if pc != 0:
                dc = pc
                dx = px
        if define(table, inv, par, st, dc, dx) < 0:
            if st[N_LIVE] < st[N_ALLOC]:
                c = compact(table, par, st, c)
                x = 0
                continue
            return NOSPACE
        _push(ded, st, dc, dx)
        _settle(table, inv, par, queue, ded, st, pdl, rels, rstart, cr, cstart, cidx)


@njit(cache=True)
def standardize(table, n):
    """Breadth-first renumbering from coset 1, columns scanned in order.
    ``table`` rows 1..n must be complete; returns a new (n + 1)-row table."""
    ncol = table.shape[1]
    order = np.zeros(n + 1, dtype=np.int32)
    newidx = np.zeros(n + 1, dtype=np.int32)
    order[1] = 1
    newidx[1] = 1
    k = 1
    head = 1
    while head <= k:
        c = order[head]
        head += 1
        for x in range(ncol):
            d = table[c, x]
            if d != 0 and newidx[d] == 0:
                k += 1
                newidx[d] = k
                order[k] = d
    out = np.zeros((k + 1, ncol), dtype=np.int32)
    for i in range(1, k + 1):
        c = order[i]
        for x in range(ncol):
            out[i, x] = newidx[table[c, x]]
    return out
