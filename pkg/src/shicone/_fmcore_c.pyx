# cython: language_level=3, boundscheck=False, wraparound=False
"""Exact rational feasibility kernel (compiled twin of ``_fmcore_py``).

Same API and identical results as the pure-Python module; that module
is the readable reference for the algorithm.  Differences here are
mechanical: the Fourier-Motzkin stage loop runs on C integers while
every value fits below 2^30 (so products and sums stay inside 64 bits)
and falls back to Python-object arithmetic per stage otherwise, and
back-substitution tracks exact numerator/denominator pairs instead of
Fraction objects.  Arbitrary precision stays a guarantee, not a hope.
"""

from math import gcd, lcm

from libc.stdlib cimport free, malloc

EQ, GE, GT = 0, 1, 2

__all__ = ["EQ", "GE", "GT", "solve"]

DEF CAP = 1073741824  # 2**30: inputs below this keep all C arithmetic in range


cdef long long _llgcd(long long a, long long b):
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def solve(dim, rows):
    """See ``_fmcore_py.solve``; identical contract and results."""
    cdef Py_ssize_t n = dim
    cdef Py_ssize_t j, k
    eqs = []
    ineqs = []
    for coeffs, rhs, kind in rows:
        coeffs = list(coeffs)
        if len(coeffs) != n:
            raise ValueError("constraint dimension mismatch")
        if kind == EQ:
            eqs.append((coeffs, rhs))
        elif kind == GE:
            ineqs.append((coeffs, rhs, 0))
        elif kind == GT:
            ineqs.append((coeffs, rhs, 1))
        else:
            raise ValueError(f"unknown constraint kind {kind!r}")

    # Equality pivoting (object arithmetic; equalities are few and small).
    pivots = []
    for _ in range(len(eqs)):
        eqs = [e for e in eqs if e is not None]
        best = None
        for idx, e in enumerate(eqs):
            ec = e[0]
            for k in range(n):
                c = ec[k]
                if c:
                    cand = (abs(c), idx, k)
                    if best is None or cand < best:
                        best = cand
        if best is None:
            break
        _, idx, kk = best
        ec, erhs = eqs[idx]
        eqs[idx] = None
        pivots.append((kk, ec[:], erhs))
        eqs = [None if e is None else _subst_eq(e, ec, erhs, kk) for e in eqs]
        new_ineqs = []
        for row in ineqs:
            row = _subst_ineq(row, ec, erhs, kk)
            if row is None:
                continue
            if row is False:
                return None
            new_ineqs.append(row)
        ineqs = new_ineqs
    for e in eqs:
        if e is not None and any(e[0]):
            raise AssertionError("equality left unpivoted")
        if e is not None and e[1] != 0:
            return None

    active = {}
    for coeffs, rhs, strict in ineqs:
        if _reduce_add(active, coeffs, rhs, strict) is False:
            return None
    pivot_vars = {p[0] for p in pivots}
    remaining = [k for k in range(n) if k not in pivot_vars]
    stages = []
    while remaining:
        best_k = -1
        best_cost = None
        for k in remaining:
            pos_n = 0
            neg_n = 0
            for key in active:
                c = key[k]
                if c > 0:
                    pos_n += 1
                elif c < 0:
                    neg_n += 1
            cost = (pos_n * neg_n, pos_n + neg_n)
            if best_cost is None or cost < best_cost:
                best_cost = cost
                best_k = k
        k = best_k
        remaining.remove(k)
        try:
            result = _stage_fast(active, k, n)
        except OverflowError:
            result = _stage_object(active, k)
        if result is None:
            return None
        active, bounds = result
        stages.append((k, bounds))

    # Back-substitution on exact numerator/denominator pairs.
    num = [0] * n
    den = [0] * n  # 0 marks "not yet assigned"
    for k, bounds in reversed(stages):
        lo = hi = None  # (num, den>0, strict)
        for coeffs, rhs, strict in bounds:
            c = coeffs[k]
            bn, bd = _eval_rest(coeffs, rhs, k, n, num, den)
            bd *= c
            if bd < 0:
                bn, bd = -bn, -bd
            if c > 0:
                if lo is None or _pair_gt(bn, bd, strict, lo):
                    lo = (bn, bd, strict)
            else:
                if hi is None or _pair_lt(bn, bd, strict, hi):
                    hi = (bn, bd, strict)
        num[k], den[k] = _pick(lo, hi)
    for k, ec, erhs in reversed(pivots):
        bn, bd = _eval_rest(ec, erhs, k, n, num, den)
        bd *= ec[k]
        if bd < 0:
            bn, bd = -bn, -bd
        g = gcd(bn, bd)
        num[k], den[k] = bn // g, bd // g
    for k in range(n):
        if den[k] == 0:
            num[k], den[k] = 0, 1

    dall = 1
    for k in range(n):
        dall = lcm(dall, den[k])
    nums = tuple(num[k] * (dall // den[k]) for k in range(n))
    den = dall

    for coeffs, rhs, kind in rows:
        lhs = 0
        for j in range(n):
            lhs += coeffs[j] * nums[j]
        r = rhs * den
        if kind == EQ:
            ok = lhs == r
        elif kind == GE:
            ok = lhs >= r
        else:
            ok = lhs > r
        if not ok:
            raise AssertionError("witness failed exact re-substitution")
    return nums, den


cdef _stage_fast(dict active, Py_ssize_t k, Py_ssize_t n):
    """One elimination stage on C integers.

    Returns (new_active, bounds) like the object path, None on a derived
    contradiction; raises OverflowError when any value is outside the
    safe range, leaving ``active`` untouched.
    """
    cdef Py_ssize_t m = len(active)
    cdef Py_ssize_t width = n + 2  # coeffs | rhs | strict
    cdef long long *buf = <long long *> malloc(m * width * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef long long *tmp = <long long *> malloc(width * sizeof(long long))
    cdef Py_ssize_t *pos_idx = <Py_ssize_t *> malloc(m * sizeof(Py_ssize_t))
    cdef Py_ssize_t *neg_idx = <Py_ssize_t *> malloc(m * sizeof(Py_ssize_t))
    if tmp == NULL or pos_idx == NULL or neg_idx == NULL:
        free(buf); free(tmp); free(pos_idx); free(neg_idx)
        raise MemoryError()
    keys = list(active.keys())
    cdef Py_ssize_t npos = 0, nneg = 0
    cdef Py_ssize_t i, j, a, b, idx
    cdef long long v, cp, cn, g, rhs
    cdef int strict
    try:
        for i in range(m):
            key = keys[i]
            val = active[key]
            for j in range(n):
                v = key[j]  # raises OverflowError beyond long long
                if v >= CAP or v <= -CAP:
                    raise OverflowError()
                buf[i * width + j] = v
            v = val[0]
            if v >= CAP or v <= -CAP:
                raise OverflowError()
            buf[i * width + n] = v
            buf[i * width + n + 1] = val[1]
            v = buf[i * width + k]
            if v > 0:
                pos_idx[npos] = i; npos += 1
            elif v < 0:
                neg_idx[nneg] = i; nneg += 1

        carry = {}
        bounds = []
        for i in range(m):
            v = buf[i * width + k]
            if v == 0:
                carry[keys[i]] = active[keys[i]]
            else:
                key = keys[i]
                val = active[key]
                bounds.append((key, val[0], val[1]))

        for a in range(npos):
            i = pos_idx[a]
            cp = buf[i * width + k]
            for b in range(nneg):
                j = neg_idx[b]
                cn = -buf[j * width + k]
                g = 0
                for idx in range(n):
                    tmp[idx] = cn * buf[i * width + idx] + cp * buf[j * width + idx]
                    if tmp[idx] != 0:
                        g = _llgcd(g, tmp[idx])
                rhs = cn * buf[i * width + n] + cp * buf[j * width + n]
                strict = <int> (buf[i * width + n + 1] | buf[j * width + n + 1])
                if g == 0:
                    if rhs < 0 or (rhs == 0 and not strict):
                        continue
                    return None
                g = _llgcd(g, rhs)
                if g > 1:
                    for idx in range(n):
                        tmp[idx] //= g
                    rhs //= g
                newkey = tuple([tmp[idx] for idx in range(n)])
                old = carry.get(newkey)
                if old is None or rhs > old[0] or (rhs == old[0] and strict > old[1]):
                    carry[newkey] = (rhs, strict)
        return carry, bounds
    finally:
        free(buf); free(tmp); free(pos_idx); free(neg_idx)


cdef _stage_object(dict active, Py_ssize_t k):
    """One elimination stage on Python integers (overflow fallback)."""
    pos = []
    neg = []
    carry = {}
    for coeffs, bs in active.items():
        c = coeffs[k]
        if c > 0:
            pos.append((coeffs, bs[0], bs[1]))
        elif c < 0:
            neg.append((coeffs, bs[0], bs[1]))
        else:
            carry[coeffs] = bs
    bounds = pos + neg
    for pc, prhs, pstrict in pos:
        cp = pc[k]
        for nc, nrhs, nstrict in neg:
            cn = -nc[k]
            coeffs = [cn * a + cp * b for a, b in zip(pc, nc)]
            rhs = cn * prhs + cp * nrhs
            if _reduce_add(carry, coeffs, rhs, pstrict or nstrict) is False:
                return None
    return carry, bounds


cdef _subst_eq(e, list ec, erhs, Py_ssize_t k):
    coeffs, rhs = e
    a = coeffs[k]
    if not a:
        return (coeffs, rhs)
    p = ec[k]
    out = [p * c - a * d for c, d in zip(coeffs, ec)]
    return (out, p * rhs - a * erhs)


cdef _subst_ineq(row, list ec, erhs, Py_ssize_t k):
    coeffs, rhs, strict = row
    a = coeffs[k]
    if not a:
        return row
    p = ec[k]
    s = abs(p)
    t = -a if p > 0 else a
    out = [s * c + t * d for c, d in zip(coeffs, ec)]
    new_rhs = s * rhs + t * erhs
    if not any(out):
        if new_rhs < 0 or (new_rhs == 0 and not strict):
            return None
        return False
    return (out, new_rhs, strict)


cdef _reduce_add(dict active, coeffs, rhs, strict):
    g = 0
    for c in coeffs:
        if c:
            g = gcd(g, c)
    if g == 0:
        return rhs < 0 or (rhs == 0 and not strict)
    g = gcd(g, rhs)
    if g > 1:
        coeffs = [c // g for c in coeffs]
        rhs //= g
    key = tuple(coeffs)
    old = active.get(key)
    if old is None or (rhs, strict) > old:
        active[key] = (rhs, strict)
    return True


cdef _eval_rest(coeffs, rhs, Py_ssize_t k, Py_ssize_t n, list num, list den):
    """(rhs - sum_{j != k} coeffs_j x_j) as an integer pair, den > 0."""
    cdef Py_ssize_t j
    d = 1
    for j in range(n):
        if j != k and coeffs[j] and den[j]:
            d = lcm(d, den[j])
    rn = rhs * d
    for j in range(n):
        a = coeffs[j]
        if j != k and a and den[j]:
            rn -= a * num[j] * (d // den[j])
    return rn, d


cdef bint _pair_gt(bn, bd, strict, other):
    on, od, os = other
    t = bn * od - on * bd
    return t > 0 or (t == 0 and strict > os)


cdef bint _pair_lt(bn, bd, strict, other):
    on, od, os = other
    t = bn * od - on * bd
    return t < 0 or (t == 0 and strict > os)


cdef _pick(lo, hi):
    """A point of the interval, as a reduced pair with positive denominator."""
    if lo is None and hi is None:
        return 0, 1
    if hi is None:
        g = gcd(lo[0] + lo[1], lo[1])
        return (lo[0] + lo[1]) // g, lo[1] // g
    if lo is None:
        g = gcd(hi[0] - hi[1], hi[1])
        return (hi[0] - hi[1]) // g, hi[1] // g
    ln, ld, ls = lo
    hn, hd, hs = hi
    t = ln * hd - hn * ld
    if t < 0:
        mn = ln * hd + hn * ld
        md = 2 * ld * hd
        g = gcd(mn, md)
        return mn // g, md // g
    if t == 0 and ls == 0 and hs == 0:
        g = gcd(ln, ld)
        return ln // g, ld // g
    raise AssertionError("empty interval after elimination")
