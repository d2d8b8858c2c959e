# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the reduction and elimination kernels.

Same contracts as the pure-Python module; prime fields below 2^31 run on
C longs, everything else stays on Python objects.
"""

cdef long _SMALL = 2147483648


cdef inline bint _divides(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if <long>a[i] > <long>b[i]:
            return False
    return True


cdef inline tuple _add_exp(tuple e, tuple q):
    cdef Py_ssize_t i, n = len(e)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <long>e[i] + <long>q[i]
    return tuple(out)


def shift_vector(dict v, tuple q):
    return {(k[0], _add_exp(k[1], q)): c for k, c in v.items()}


def sub_mul(dict v, c, tuple q, dict g, F):
    """In place: ``v -= c * x^q * g``."""
    p = getattr(F, "p", 0)
    cdef long cc, x, pp
    cdef tuple m
    if p and p < _SMALL:
        pp = p
        cc = c
        for k, a in g.items():
            m = (k[0], _add_exp(k[1], q))
            x = (<long>v.get(m, 0) - cc * <long>a) % pp
            if x:
                v[m] = x
            else:
                v.pop(m, None)
    else:
        for k, a in g.items():
            m = (k[0], _add_exp(k[1], q))
            y = v.get(m, 0) - c * a
            if p:
                y %= p
            if y:
                v[m] = y
            else:
                v.pop(m, None)


cdef object _find_reducer(tuple m, list L, by_pos):
    cdef tuple e = m[1], le
    for idx in by_pos.get(m[0], ()):
        le = L[idx][1]
        if _divides(le, e):
            return idx, tuple([<long>x - <long>y for x, y in zip(e, le)])
    return None


def top_reduce(dict v, list G, list L, by_pos, key, F):
    while v:
        m = max(v, key=key)
        hit = _find_reducer(m, L, by_pos)
        if hit is None:
            return v
        idx, q = hit
        sub_mul(v, v[m], q, G[idx], F)
    return v


def top_reduce_below(dict v, list G, list L, by_pos, key, F, long n):
    while v:
        m = max(v, key=key)
        if m[0] >= n:
            return v
        hit = _find_reducer(m, L, by_pos)
        if hit is None:
            return v
        idx, q = hit
        sub_mul(v, v[m], q, G[idx], F)
    return v


def full_reduce(dict v, list G, list L, by_pos, key, F):
    cdef dict rem = {}
    while v:
        m = max(v, key=key)
        hit = _find_reducer(m, L, by_pos)
        if hit is None:
            rem[m] = v.pop(m)
            continue
        idx, q = hit
        sub_mul(v, v[m], q, G[idx], F)
    return rem


def rref(list rows, Py_ssize_t ncols, p=0):
    """Row-reduce a dense matrix in place; returns the pivot columns."""
    cdef list pivots = []
    cdef Py_ssize_t r = 0, nrows = len(rows), col, i, j, piv
    cdef list row, other
    cdef long inv, a, x
    for col in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        row = rows[r]
        c = row[col]
        if p and p < _SMALL:
            inv = pow(c, -1, p)
            if inv != 1:
                for j in range(col, ncols):
                    row[j] = (<long>row[j] * inv) % <long>p
            for i in range(nrows):
                if i != r:
                    other = rows[i]
                    a = other[col]
                    if a:
                        for j in range(col, ncols):
                            x = row[j]
                            if x:
                                other[j] = (<long>other[j] - a * x) % <long>p
        elif p:
            c = pow(c, -1, p)
            for j in range(col, ncols):
                row[j] = row[j] * c % p
            for i in range(nrows):
                if i != r:
                    other = rows[i]
                    b = other[col]
                    if b:
                        for j in range(col, ncols):
                            if row[j]:
                                other[j] = (other[j] - b * row[j]) % p
        else:
            if c != 1:
                for j in range(col, ncols):
                    row[j] = row[j] / c
            for i in range(nrows):
                if i != r:
                    other = rows[i]
                    b = other[col]
                    if b:
                        for j in range(col, ncols):
                            if row[j]:
                                other[j] = other[j] - b * row[j]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return pivots
