"""Pure-Python product kernel for A(p;q) (reference and fallback).

Coefficients arrive Kronecker-encoded: each Laurent polynomial in q is a
big integer (its value at 2^bits) plus an exponent offset.  Monomials are
triples (k, zp, zm) standing for x^k z+^zp z-^zm, where k > 0 means x+^k
and k < 0 means x-^|k|.

Output keys are packed ints, see ``pack``/``unpack``.
"""

from . import _zq

_ZBITS = 20
_ZMASK = (1 << _ZBITS) - 1
_KOFF = 1 << 20


def pack(k, zp, zm):
    return ((k + _KOFF) << (2 * _ZBITS)) | (zp << _ZBITS) | zm


def unpack(key):
    return (key >> (2 * _ZBITS)) - _KOFF, (key >> _ZBITS) & _ZMASK, key & _ZMASK


def product_accumulate(a_items, b_groups, gtable, bits, emin):
    """Accumulate all monomial-pair products.

    a_items  -- list of (k, zp, zm, enc, off)
    b_groups -- list of (k, items) with items a list of (zp, zm, enc, off)
    gtable   -- dict (k1, k2) -> (r, ((j, enc, off), ...)); pairs missing
                from the table are skipped
    Returns dict packed-key -> encoded integer, all shifted by -emin.
    """
    out = {}
    get = out.get
    zb2 = 2 * _ZBITS
    for ka, zpa, zma, ea, oa in a_items:
        sa = zpa + zma
        for kb, items in b_groups:
            entry = gtable.get((ka, kb))
            if entry is None:
                continue
            r, gterms = entry
            base = oa + sa * kb - emin
            rkey = (r + _KOFF) << zb2
            if len(gterms) == 1 and gterms[0][1] == 1:
                j, _, og = gterms[0]
                base += og
                for zpb, zmb, eb, ob in items:
                    key = rkey | ((zpa + zpb + j) << _ZBITS) | (zma + zmb + j)
                    val = (ea * eb) << ((base + ob) * bits)
                    out[key] = get(key, 0) + val
            else:
                for zpb, zmb, eb, ob in items:
                    prod = ea * eb
                    off = base + ob
                    for j, eg, og in gterms:
                        key = rkey | ((zpa + zpb + j) << _ZBITS) | (zma + zmb + j)
                        val = (prod * eg) << ((off + og) * bits)
                        out[key] = get(key, 0) + val
    return out


def decode_laurent(n, bits):
    return _zq.decode_laurent(n, bits)
