# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled product kernel for A(p;q); mirrors _kernel_py exactly."""

from . import _zq

cdef enum:
    ZBITS = 20
    KOFF = 1048576  # 1 << 20; 21 + 2*20 bits fit a signed 64-bit key


def product_accumulate(list a_items, list b_groups, dict gtable, long bits, long emin):
    cdef dict out = {}
    cdef long ka, zpa, zma, oa, sa, kb, r, j, og, zpb, zmb, ob, base, off
    cdef long long rkey, key
    cdef Py_ssize_t ng, ib, nb, ig
    cdef object ea, eb, eg, prod, val, entry, gterms, items, cur
    cdef tuple a, bt, gt
    cdef list b_k = [g[0] for g in b_groups]
    cdef list b_items = [g[1] for g in b_groups]
    cdef Py_ssize_t ngroups = len(b_groups)
    cdef Py_ssize_t gi
    for a in a_items:
        ka = a[0]
        zpa = a[1]
        zma = a[2]
        ea = a[3]
        oa = a[4]
        sa = zpa + zma
        for gi in range(ngroups):
            kb = b_k[gi]
            entry = gtable.get((ka, kb))
            if entry is None:
                continue
            r = entry[0]
            gterms = entry[1]
            items = b_items[gi]
            nb = len(items)
            base = oa + sa * kb - emin
            rkey = (<long long>(r + KOFF)) << (2 * ZBITS)
            ng = len(gterms)
            if ng == 1 and gterms[0][1] == 1:
                gt = gterms[0]
                j = gt[0]
                og = gt[2]
                base += og
                for ib in range(nb):
                    bt = items[ib]
                    zpb = bt[0]
                    zmb = bt[1]
                    eb = bt[2]
                    ob = bt[3]
                    key = rkey | ((<long long>(zpa + zpb + j)) << ZBITS) | (zma + zmb + j)
                    val = (ea * eb) << ((base + ob) * bits)
                    cur = out.get(key)
                    out[key] = val if cur is None else cur + val
            else:
                for ib in range(nb):
                    bt = items[ib]
                    zpb = bt[0]
                    zmb = bt[1]
                    eb = bt[2]
                    ob = bt[3]
                    prod = ea * eb
                    off = base + ob
                    for ig in range(ng):
                        gt = gterms[ig]
                        j = gt[0]
                        eg = gt[1]
                        og = gt[2]
                        key = rkey | ((<long long>(zpa + zpb + j)) << ZBITS) | (zma + zmb + j)
                        val = (prod * eg) << ((off + og) * bits)
                        cur = out.get(key)
                        out[key] = val if cur is None else cur + val
    return out


def decode_laurent(n, long bits):
    """Balanced base-2^bits digits of nonzero n as (digits, v), digits[0] != 0."""
    if bits % 8 or bits > 56:
        return _zq.decode_laurent(n, bits)
    cdef long v = ((n & -n).bit_length() - 1) // bits
    n >>= v * bits
    cdef Py_ssize_t step = bits // 8
    cdef Py_ssize_t ndig = (n.bit_length() + 1) // bits + 2
    cdef bytes raw = n.to_bytes(ndig * step, "little", signed=True)
    cdef const unsigned char *p = raw
    cdef long long base = (<long long>1) << bits
    cdef long long half = base >> 1
    cdef long long d
    cdef int carry = 0
    cdef Py_ssize_t i, t, last = -1
    cdef list out = [0] * ndig
    for i in range(ndig):
        d = 0
        for t in range(step - 1, -1, -1):
            d = (d << 8) | p[i * step + t]
        d += carry
        if d >= half:
            d -= base
            carry = 1
        else:
            carry = 0
        if d:
            out[i] = d
            last = i
    return tuple(out[:last + 1]), v

