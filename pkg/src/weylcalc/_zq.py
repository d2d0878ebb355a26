"""Dense integer polynomials in q.

A polynomial is a tuple of Python ints, index = power of q, with no
trailing zeros; the zero polynomial is ``()``.
"""

import re
from math import gcd as igcd

ZERO = ()
ONE = (1,)


def trim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return trim(out)


def neg(a):
    return tuple(-v for v in a)


def sub(a, b):
    return add(a, neg(b))


def scale(a, k):
    if not k:
        return ZERO
    return tuple(k * v for v in a)


def mul(a, b):
    if not a or not b:
        return ZERO
    if len(a) == 1:
        return scale(b, a[0])
    if len(b) == 1:
        return scale(a, b[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return tuple(out)


def shift(a, k):
    """Multiply by q^k, k >= 0."""
    if not a or not k:
        return a
    return (0,) * k + a


def valuation(a):
    """Largest k with q^k | a (a nonzero)."""
    k = 0
    while not a[k]:
        k += 1
    return k


def content(a):
    g = 0
    for v in a:
        g = igcd(g, v)
        if g == 1:
            break
    return g


def primitive(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return a
    c = content(a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return a
    return tuple(v // c for v in a)


def pseudo_rem(a, b):
    """Pseudo-remainder of a by b (b nonzero)."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        lr = r[-1]
        k = len(r) - 1 - db
        r = [lb * v for v in r]
        for i, v in enumerate(b):
            r[i + k] -= lr * v
        r = list(trim(r))
    return tuple(r)


def gcd(a, b):
    """Gcd in Z[q], positive leading coefficient; gcd(0, 0) = 0."""
    if not a:
        return primitive(b) if b else ZERO
    if not b:
        return primitive(a)
    c = igcd(content(a), content(b))
    if len(a) == 1 or len(b) == 1:
        return (c,)
    va, vb = valuation(a), valuation(b)
    v = min(va, vb)
    a = primitive(a[va:])
    b = primitive(b[vb:])
    if len(a) < len(b):
        a, b = b, a
    while True:
        if len(b) == 1:
            return shift((c,), v)
        r = pseudo_rem(a, b)
        if not r:
            return shift(scale(b, c), v)
        a, b = b, primitive(r)


def exact_div(a, b):
    """a / b in Z[q]; raises ArithmeticError if inexact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ZERO
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    if len(r) - 1 < db:
        raise ArithmeticError("inexact polynomial division")
    out = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        top = r[k + db]
        if top % lb:
            raise ArithmeticError("inexact polynomial division")
        c = top // lb
        out[k] = c
        if c:
            for i, v in enumerate(b):
                r[i + k] -= c * v
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return trim(out)


def evaluate(a, x):
    acc = 0
    for v in reversed(a):
        acc = acc * x + v
    return acc


def norm1(a):
    return sum(abs(v) for v in a)


def power(a, n):
    out = ONE
    base = a
    while n:
        if n & 1:
            out = mul(out, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return out


# Kronecker substitution: evaluate at 2^bits so polynomial products become
# big-integer products. Decoding uses balanced digits, so it is exact as long
# as every coefficient of the decoded polynomial is below 2^(bits-1).

def encode(a, bits):
    acc = 0
    for v in reversed(a):
        acc = (acc << bits) + v
    return acc


_ZERO_RUN = (re.compile(b"\\x00+"), re.compile(b"\\xff+"))


def decode(n, bits):
    if not n:
        return ()
    if bits % 8:
        return _decode_slow(n, bits)
    step = bits // 8
    ndig = (n.bit_length() + 1) // bits + 2
    size = ndig * step
    raw = n.to_bytes(size, "little", signed=True)
    base = 1 << bits
    half = base >> 1
    frombytes = int.from_bytes
    out = [0] * ndig
    carry = 0
    i = 0
    while i < size:
        # a run of 0x00 with no carry, or of 0xff with carry, is all zero digits
        m = _ZERO_RUN[carry].match(raw, i)
        if m:
            skip = (m.end() - i) // step
            if skip:
                i += skip * step
                continue
        d = frombytes(raw[i:i + step], "little") + carry
        if d >= half:
            d -= base
            carry = 1
        else:
            carry = 0
        out[i // step] = d
        i += step
    return trim(out)


def _decode_slow(n, bits):
    out = []
    base = 1 << bits
    half = base >> 1
    mask = base - 1
    while n:
        d = n & mask
        if d >= half:
            d -= base
        out.append(d)
        n = (n - d) >> bits
    return tuple(out)


def decode_laurent(n, bits):
    """Decode a nonzero n as (digits, v) with n = q^v * digits, digits[0] != 0."""
    v = ((n & -n).bit_length() - 1) // bits
    return decode(n >> (v * bits), bits), v


def to_str(a, var="q"):
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        m = abs(c)
        if k == 0:
            body = str(m)
        else:
            mon = var if k == 1 else f"{var}^{k}"
            body = mon if m == 1 else f"{m}*{mon}"
        parts.append((sign, body))
    s0, b0 = parts[0]
    text = ("-" if s0 == "-" else "") + b0
    for s, b in parts[1:]:
        text += f"{s}{b}"
    return text
