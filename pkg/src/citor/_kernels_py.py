"""Pure-Python reduction and elimination kernels.

Vectors are dicts ``{(pos, exp): coeff}``.  Reducers are assumed monic.
``F`` is a field object from :mod:`citor.scalar`; prime fields take a fast
path on plain ints.
"""


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def shift_vector(v, q):
    return {(p, tuple(a + b for a, b in zip(e, q))): c for (p, e), c in v.items()}


def sub_mul(v, c, q, g, F):
    """In place: ``v -= c * x^q * g``."""
    p = getattr(F, "p", 0)
    if p:
        for (pos, e), a in g.items():
            m = (pos, tuple(x + y for x, y in zip(e, q)))
            x = (v.get(m, 0) - c * a) % p
            if x:
                v[m] = x
            else:
                v.pop(m, None)
    else:
        for (pos, e), a in g.items():
            m = (pos, tuple(x + y for x, y in zip(e, q)))
            x = v.get(m, 0) - c * a
            if x:
                v[m] = x
            else:
                v.pop(m, None)


def _find_reducer(m, L, by_pos):
    pos, e = m
    for idx in by_pos.get(pos, ()):
        le = L[idx][1]
        if _divides(le, e):
            return idx, tuple(x - y for x, y in zip(e, le))
    return None


def top_reduce(v, G, L, by_pos, key, F):
    while v:
        m = max(v, key=key)
        hit = _find_reducer(m, L, by_pos)
        if hit is None:
            return v
        idx, q = hit
        sub_mul(v, v[m], q, G[idx], F)
    return v


def top_reduce_below(v, G, L, by_pos, key, F, n):
    """Top-reduce while the leading position is ``< n``."""
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


def full_reduce(v, G, L, by_pos, key, F):
    rem = {}
    while v:
        m = max(v, key=key)
        hit = _find_reducer(m, L, by_pos)
        if hit is None:
            rem[m] = v.pop(m)
            continue
        idx, q = hit
        sub_mul(v, v[m], q, G[idx], F)
    return rem


def rref(rows, ncols, p=0):
    """Row-reduce a dense matrix in place; returns the pivot columns.

    ``p == 0`` means rational entries (Fractions), otherwise entries mod p.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        row = rows[r]
        c = row[col]
        if p:
            inv = pow(c, -1, p)
            if inv != 1:
                for j in range(col, ncols):
                    row[j] = row[j] * inv % p
            for i in range(nrows):
                if i != r:
                    other = rows[i]
                    a = other[col]
                    if a:
                        for j in range(col, ncols):
                            if row[j]:
                                other[j] = (other[j] - a * row[j]) % p
        else:
            if c != 1:
                for j in range(col, ncols):
                    row[j] = row[j] / c
            for i in range(nrows):
                if i != r:
                    other = rows[i]
                    a = other[col]
                    if a:
                        for j in range(col, ncols):
                            if row[j]:
                                other[j] = other[j] - a * row[j]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return pivots
