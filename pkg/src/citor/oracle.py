"""Brute-force Tor dimensions by linear algebra in each internal degree.

No Gröbner bases are used: every graded piece is a quotient of the span of
monomials of that degree, computed by row reduction of the relations'
monomial multiples.  Meant for tiny inputs (two variables, low degree).
"""

from __future__ import annotations

from itertools import product as iproduct

from .scalar import QQ


def _monomials(weights, t):
    n = len(weights)
    out = []

    def rec(i, left, cur):
        if i == n - 1:
            if left % weights[i] == 0:
                out.append(tuple(cur + [left // weights[i]]))
            return
        for a in range(left // weights[i] + 1):
            rec(i + 1, left - a * weights[i], cur + [a])

    if t < 0:
        return []
    if n == 0:
        return [()] if t == 0 else []
    rec(0, t, [])
    return sorted(out, reverse=True)


def _deg(weights, e):
    return sum(a * w for a, w in zip(e, weights))


def _mulexp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class _Echelon:
    """Row space of vectors over F, kept fully reduced; columns are arbitrary keys."""

    def __init__(self, F):
        self.F = F
        self.rows = {}  # pivot -> row (dict)

    def reduce(self, v):
        F = self.F
        v = dict(v)
        for piv, row in self.rows.items():
            c = v.get(piv)
            if c:
                for k, a in row.items():
                    s = F.sub(v.get(k, F(0)), F.mul(c, a))
                    if s:
                        v[k] = s
                    else:
                        v.pop(k, None)
        return v

    def add(self, v) -> bool:
        F = self.F
        v = self.reduce(v)
        if not v:
            return False
        piv = min(v)
        inv = F.inv(v[piv])
        v = {k: F.mul(a, inv) for k, a in v.items()}
        for p2, row in self.rows.items():
            c = row.get(piv)
            if c:
                for k, a in v.items():
                    s = F.sub(row.get(k, F(0)), F.mul(c, a))
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
        self.rows[piv] = v
        return True

    @property
    def rank(self):
        return len(self.rows)


class GradedQuotient:
    """(Q^n with twists) / (submodule spanned by the given vectors), degree by degree.

    Vectors are dicts {(component, exponent): coeff}.
    """

    def __init__(self, weights, F, degrees, gens):
        self.weights = tuple(weights)
        self.F = F
        self.degrees = tuple(degrees)
        self.gens = [(self._vdeg(g), g) for g in gens if g]
        self._cache = {}

    def _vdeg(self, v):
        (i, e) = next(iter(v))
        return self.degrees[i] + _deg(self.weights, e)

    def piece(self, t):
        """(echelon of the relations in degree t, list of standard basis keys)."""
        if t in self._cache:
            return self._cache[t]
        ech = _Echelon(self.F)
        for d, g in self.gens:
            for m in _monomials(self.weights, t - d):
                ech.add({(i, _mulexp(e, m)): c for (i, e), c in g.items()})
        keys = [(i, e) for i, a in enumerate(self.degrees) for e in _monomials(self.weights, t - a)]
        std = [k for k in keys if k not in ech.rows]
        self._cache[t] = (ech, std)
        return ech, std

    def dim(self, t):
        return len(self.piece(t)[1])

    def normal(self, v, t):
        """Reduce a degree-t vector to a combination of standard keys."""
        return self.piece(t)[0].reduce(v)


def _ring_quotient(weights, F, relations):
    return GradedQuotient(weights, F, (0,), [{(0, e): c for e, c in f.items()} for f in relations])


class DegreewiseResolution:
    """A (not necessarily minimal) free resolution of coker(columns) over R, truncated
    at internal degree ``top``; built degree by degree from kernels."""

    def __init__(self, weights, F, relations, target, columns, top):
        self.weights = tuple(weights)
        self.F = F
        self.R = _ring_quotient(weights, F, relations)
        self.top = top
        # twists[i] = generator degrees of F_i; maps[i][g] = image of generator g (i >= 1)
        self.twists = [tuple(target)]
        self.maps = [None]
        cols = []
        degs = []
        for col in columns:
            col = {k: c for k, c in col.items() if c}
            if not col:
                continue
            (i, e) = next(iter(col))
            degs.append(target[i] + _deg(weights, e))
            cols.append(self._reduce_vec(col))
        self.twists.append(tuple(degs))
        self.maps.append(cols)
        i = 1
        while self.twists[i] and min(self.twists[i]) <= top:
            self._extend(i)
            i += 1
        self.twists.append(())
        self.maps.append([])

    def _reduce_vec(self, v):
        """Entrywise reduction of a homogeneous vector into R-standard form."""
        out = {}
        comps = {}
        for (i, e), c in v.items():
            comps.setdefault(i, {})[e] = c
        for i, comp in comps.items():
            if not comp:
                continue
            d = _deg(self.weights, next(iter(comp)))
            red = self.R.normal({(0, e): c for e, c in comp.items()}, d)
            for (_, e), c in red.items():
                out[(i, e)] = c
        return out

    def _basis(self, degrees, t):
        return [(g, m) for g, a in enumerate(degrees) for (_, m) in self.R.piece(t - a)[1]]

    def _image(self, i, g, m, t):
        """m * d_i(e_g) as a reduced vector in F_{i-1} of degree t."""
        v = {}
        F = self.F
        for (j, e), c in self.maps[i][g].items():
            k = (j, _mulexp(e, m))
            s = F.add(v.get(k, F(0)), c)
            if s:
                v[k] = s
            else:
                v.pop(k, None)
        return self._reduce_vec(v)

    def _extend(self, i):
        """Generators of ker(d_i) in degrees <= top become F_{i+1}."""
        F = self.F
        degs, gens = [], []
        for t in range(min(self.twists[i]), self.top + 1):
            basis = self._basis(self.twists[i], t)
            if not basis:
                continue
            # kernel of the degree-t matrix by augmented elimination
            ech = _Echelon(F)
            kernel = []
            for b_idx, (g, m) in enumerate(basis):
                img = {(0,) + k: c for k, c in self._image(i, g, m, t).items()}
                img[(1, b_idx)] = F(1)
                ech.add(img)
            for piv, row in ech.rows.items():
                if piv[0] == 1:
                    kernel.append({basis[k[1]]: c for k, c in row.items()})
            # submodule generated by earlier kernel generators
            span = _Echelon(F)
            for d, z in zip(degs, gens):
                for (_, m) in self.R.piece(t - d)[1]:
                    span.add(self._mult_elem(z, m, t))
            for z in kernel:
                vec = {k: c for k, c in z.items()}
                if span.add(vec):
                    degs.append(t)
                    gens.append(vec)
        self.twists.append(tuple(degs))
        self.maps.append(gens)

    def _mult_elem(self, z, m, t):
        """m * z for z given in basis coordinates {(g, mono): c}."""
        F = self.F
        v = {}
        for (g, mono), c in z.items():
            mm = _mulexp(mono, m)
            tdeg = _deg(self.weights, mm)
            red = self.R.normal({(0, mm): F(1)}, tdeg)
            for (_, e), a in red.items():
                k = (g, e)
                s = F.add(v.get(k, F(0)), F.mul(c, a))
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
        return v


def tor_dimensions(weights, relations, M_target, M_columns, N_target, N_columns,
                   field=QQ, max_i=8, top=8):
    """dims[i][t] = dim_k Tor_i^R(M, N)_t for 0 <= i <= max_i and 0 <= t <= top.

    Polynomials are dicts {exponent: coeff}; module columns are dicts
    {(component, exponent): coeff} over Q (relations are added implicitly).
    """
    F = field
    res = DegreewiseResolution(weights, F, relations, M_target, M_columns, top)
    rel_mults = [{(j, e): c for e, c in f.items()} for f in relations for j in range(len(N_target))]
    Nq = GradedQuotient(weights, F, N_target, list(N_columns) + rel_mults)

    def tensor_basis(i, t):
        if i >= len(res.twists):
            return []
        return [(g, k) for g, a in enumerate(res.twists[i]) for k in Nq.piece(t - a)[1]]

    def rank_of(i, t):
        """rank of d_i tensor N in degree t."""
        if i < 1 or i >= len(res.maps) or not res.maps[i]:
            return 0
        ech = _Echelon(F)
        for g, (comp, e) in tensor_basis(i, t):
            v = {}
            img = {}
            for (j, ej), c in res.maps[i][g].items():
                # d_i(e_g) = sum_j (entry_j) e_j; acting on n in N gives entry_j * n in slot j
                key = (comp, _mulexp(ej, e))
                img_j = img.setdefault(j, {})
                s = F.add(img_j.get(key, F(0)), c)
                if s:
                    img_j[key] = s
                else:
                    img_j.pop(key, None)
            for j, vec in img.items():
                if not vec:
                    continue
                tj = t - res.twists[i - 1][j]
                for k, c in Nq.normal(vec, tj).items():
                    v[(j,) + k] = c
            ech.add(v)
        return ech.rank

    dims = []
    for i in range(max_i + 1):
        row = []
        for t in range(top + 1):
            n = len(tensor_basis(i, t))
            row.append(n - rank_of(i, t) - rank_of(i + 1, t))
        dims.append(row)
    return dims


def pipeline_dimensions(M, N, max_i=8, top=8):
    """The same table from the Gröbner pipeline (Hilbert functions of Tor_i)."""
    from .pairs import tor

    data = tor(M, N, max_i)
    return [[mod.presentation.hilbert.hilbert_function(t) for t in range(top + 1)]
            for mod in data.modules]


def _poly_dict(p):
    return dict(p._t)


def _columns(P):
    # convert a GradedPresentation's columns to plain dicts
    return [dict(c) for c in P.columns]


def oracle_for(M, N, max_i=8, top=8):
    """Oracle table for presentations M, N over the same RingSpec."""
    R = M.ring
    rels = [_poly_dict(f) for f in R.relations]
    return tor_dimensions(R.Q.weights, rels, M.target, _columns(M), N.target, _columns(N),
                          field=R.field, max_i=max_i, top=top)


def small_inputs(max_degree=4):
    """Deterministic family of two-variable inputs: (relations, I, J) as strings."""
    rels = [[], ["x*y"], ["x^2"], ["x^2 - y^2"], ["x^3 + y^3"], ["x^2*y^2"], ["x^4 - x*y^3"],
            ["x^2", "y^2"], ["x*y", "x^2 + y^2"]]
    ideals = [["x"], ["y"], ["x", "y"], ["x^2"], ["x + y"], ["x^2", "x*y"], ["x^3", "y^2"],
              ["x*y^3", "y^4"], ["x^2 - x*y"], ["x^4"]]
    out = []
    for rel in rels:
        for I, J in iproduct(ideals, ideals):
            degs = [_max_deg(s) for s in rel + I + J]
            if max(degs) <= max_degree:
                out.append((rel, I, J))
    return out


def _max_deg(s):
    import re
    total = 0
    for term in re.split(r"[+-]", s.replace(" ", "")):
        d = 0
        for fac in term.split("*"):
            if not fac:
                continue
            if "^" in fac:
                d += int(fac.split("^")[1])
            elif fac[0].isalpha():
                d += 1
        total = max(total, d)
    return total

