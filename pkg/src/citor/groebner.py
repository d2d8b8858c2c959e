"""Gröbner bases of graded submodules of free modules over k[x].

Vectors are dicts ``{(pos, exp): coeff}``; a polynomial is the rank-one case
with ``pos == 0``.  Everything here is homogeneous: each generator of a free
module carries a degree and a term ``x^exp e_pos`` has degree
``deg(exp) + degrees[pos]``.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import dataclass, field

from . import kernels
from .poly import Polynomial, PolyRing


class InhomogeneousError(ValueError):
    pass


class PartialBasisError(RuntimeError):
    """A degree-capped basis was fed to a computation needing a full one."""


# ---------------------------------------------------------------------------
# free modules, vectors


class FreeModule:
    """Graded free module ``⊕ k[x](-a_i)``; ``degrees[i]`` is the degree of e_i."""

    def __init__(self, ring: PolyRing, degrees):
        self.ring = ring
        self.degrees = tuple(int(d) for d in degrees)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def __eq__(self, other):
        return (isinstance(other, FreeModule) and other.ring == self.ring
                and other.degrees == self.degrees)

    def __hash__(self):
        return hash((self.ring, self.degrees))

    def __repr__(self):
        return f"FreeModule(rank={self.rank}, degrees={self.degrees})"

    def basis(self, i: int) -> dict:
        return {(i, self.ring.one_exp): self.ring.field.one}

    def term_degree(self, mon) -> int:
        return self.ring.degree(mon[1]) + self.degrees[mon[0]]

    def vector_degree(self, v: dict):
        """Degree of a homogeneous vector (None for zero)."""
        if not v:
            return None
        degs = {self.term_degree(m) for m in v}
        if len(degs) != 1:
            raise InhomogeneousError(f"inhomogeneous vector (degrees {sorted(degs)})")
        return degs.pop()

    def from_polys(self, polys) -> dict:
        out = {}
        for i, p in enumerate(polys):
            for e, c in p._t.items():
                out[(i, e)] = c
        return out

    def to_polys(self, v: dict) -> list[Polynomial]:
        comps = [dict() for _ in range(self.rank)]
        for (i, e), c in v.items():
            comps[i][e] = c
        return [self.ring._raw(c) for c in comps]


def poly_times_vector(p: dict, v: dict, field) -> dict:
    """``p * v`` for a raw polynomial dict ``p``."""
    out: dict = {}
    for e1, c1 in p.items():
        for (i, e2), c2 in v.items():
            m = (i, tuple(a + b for a, b in zip(e1, e2)))
            c = field.add(out.get(m, field.zero), field.mul(c1, c2))
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def vec_add(a: dict, b: dict, field, scale=None) -> dict:
    """``a + scale*b`` (new dict)."""
    out = dict(a)
    for m, c in b.items():
        if scale is not None:
            c = field.mul(c, scale)
        v = field.add(out.get(m, field.zero), c)
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def vec_scale(v: dict, c, field) -> dict:
    if not c:
        return {}
    return {m: field.mul(x, c) for m, x in v.items()}


def combine(coeffs, vectors, field) -> dict:
    """``sum(coeffs[i] * vectors[i])`` with raw polynomial coefficients."""
    out: dict = {}
    for p, v in zip(coeffs, vectors):
        if not p or not v:
            continue
        for e1, c1 in p.items():
            for (i, e2), c2 in v.items():
                m = (i, tuple(a + b for a, b in zip(e1, e2)))
                c = field.add(out.get(m, field.zero), field.mul(c1, c2))
                if c:
                    out[m] = c
                else:
                    out.pop(m, None)
    return out


def split_vector(v: dict, rank: int) -> list[dict]:
    comps = [dict() for _ in range(rank)]
    for (i, e), c in v.items():
        comps[i][e] = c
    return comps


# ---------------------------------------------------------------------------
# module orders


class ModuleOrder:
    """Orders on terms x^a e_i of a graded free module.

    ``top``: degree, then the monomial order, then position (e_0 largest).
    ``pot``: position first, then degree and monomial order.
    """

    def __init__(self, free: FreeModule, kind: str = "top"):
        if kind not in ("top", "pot"):
            raise ValueError(f"unknown module order {kind!r}")
        self.free = free
        self.kind = kind
        self._mkey = free.ring.order.key
        self._cache: dict = {}

    def key(self, mon):
        k = self._cache.get(mon)
        if k is None:
            pos, exp = mon
            mk = self._mkey(exp)
            deg = mk[0] + self.free.degrees[pos]
            if self.kind == "top":
                k = (deg,) + mk[1:] + (-pos,)
            else:
                k = (-pos, deg) + mk[1:]
            self._cache[mon] = k
        return k

    def signature(self):
        return ("module", self.kind, self.free.degrees, self.free.ring.order.kind)


class SchreyerOrder:
    """Order on a free module F' = ⊕ e'_i induced by leading terms of a map.

    ``x^a e'_i > x^b e'_j`` iff ``lt(x^a g_i) > lt(x^b g_j)`` in the target
    order, ties broken by index (e'_0 largest).
    """

    def __init__(self, free: FreeModule, target_order: ModuleOrder, leads):
        self.free = free
        self.target_order = target_order
        self.leads = list(leads)
        self._cache: dict = {}

    def key(self, mon):
        k = self._cache.get(mon)
        if k is None:
            i, exp = mon
            lp, le = self.leads[i]
            k = self.target_order.key((lp, tuple(a + b for a, b in zip(exp, le)))) + (-i,)
            self._cache[mon] = k
        return k

    def signature(self):
        return ("schreyer", self.target_order.signature(), tuple(self.leads))


class _AugmentedOrder:
    """Elimination order on F ⊕ F': target terms dominate tag terms."""

    def __init__(self, target: ModuleOrder, tags: SchreyerOrder, n: int):
        self.target = target
        self.tags = tags
        self.n = n
        self._cache: dict = {}

    def key(self, mon):
        k = self._cache.get(mon)
        if k is None:
            pos, exp = mon
            if pos < self.n:
                k = (1,) + self.target.key(mon)
            else:
                k = (0,) + self.tags.key((pos - self.n, exp))
            self._cache[mon] = k
        return k


# ---------------------------------------------------------------------------
# Buchberger


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


@dataclass
class GroebnerBasis:
    """A reduced Gröbner basis; elements are monic vectors."""

    free: FreeModule
    order: object
    elements: list
    leads: list
    reduced: bool = True
    partial: bool = False
    degree_cap: int | None = None
    minimal_inputs: list = field(default_factory=list)

    def require_full(self):
        if self.partial:
            raise PartialBasisError("degree-capped basis cannot feed length/dimension computations")

    def __len__(self):
        return len(self.elements)

    def by_position(self):
        out = defaultdict(list)
        for idx, (p, e) in enumerate(self.leads):
            out[p].append((e, idx))
        return out

    def normal_form(self, v: dict) -> dict:
        return normal_form(v, self)

    def contains(self, v: dict) -> bool:
        return not normal_form(v, self)

    def initial_ideals(self) -> dict:
        """Position -> list of leading exponents (the initial submodule)."""
        out = defaultdict(list)
        for p, e in self.leads:
            out[p].append(e)
        return out

    def as_polynomials(self) -> list:
        if self.free.rank != 1:
            raise ValueError("not an ideal basis")
        return [self.free.ring._raw({e: c for (_, e), c in v.items()}) for v in self.elements]

    def dump(self) -> list[str]:
        """Debug dump in the polynomial string grammar."""
        lines = []
        for v in self.elements:
            comps = self.free.to_polys(v)
            lines.append("[" + ", ".join(str(c) for c in comps) + "]")
        return lines


class _Engine:
    """State of one Buchberger run (top-reduction, Gebauer-Möller pairs)."""

    def __init__(self, free: FreeModule, order, shift_of, ideal_mode: bool):
        self.free = free
        self.field = free.ring.field
        self.order = order
        self.key = order.key
        self.shift_of = shift_of
        self.ideal_mode = ideal_mode
        self.G: list = []
        self.L: list = []
        self.by_pos: dict = defaultdict(list)
        self.pairs: dict = defaultdict(list)
        self.wdeg = free.ring.degree

    def top_reduce(self, v: dict) -> dict:
        return kernels.top_reduce(v, self.G, self.L, self.by_pos, self.key, self.field)

    def add(self, v: dict):
        lm = max(v, key=self.key)
        c = v[lm]
        if c != self.field.one:
            v = vec_scale(v, self.field.inv(c), self.field)
        k = len(self.G)
        self.G.append(v)
        self.L.append(lm)
        self._update(k, lm)
        self.by_pos[lm[0]].append(k)
        return k

    def _update(self, k, lm):
        p, e = lm
        # prune old pairs (B criterion)
        for d, plist in list(self.pairs.items()):
            keep = []
            for (i, j, L) in plist:
                if self.L[i][0] == p and _divides(e, L):
                    if _lcm(self.L[i][1], e) != L and _lcm(self.L[j][1], e) != L:
                        continue
                keep.append((i, j, L))
            self.pairs[d] = keep
        cands = []
        for i in self.by_pos.get(p, ()):
            ei = self.L[i][1]
            L = _lcm(ei, e)
            coprime = all(a == 0 or b == 0 for a, b in zip(ei, e))
            cands.append((i, L, coprime))
        # M criterion
        kept = []
        for (i, L, cp) in cands:
            dominated = False
            for (j, L2, _) in cands:
                if L2 != L and _divides(L2, L):
                    dominated = True
                    break
            if not dominated:
                kept.append((i, L, cp))
        # F criterion (+ product criterion for ideals)
        groups: dict = {}
        for (i, L, cp) in kept:
            groups.setdefault(L, []).append((i, cp))
        shift = self.shift_of(p)
        for L, members in groups.items():
            if self.ideal_mode and any(cp for _, cp in members):
                continue
            i = members[0][0]
            self.pairs[self.wdeg(L) + shift].append((i, k, L))

    def spoly(self, i, j, L):
        F = self.field
        gi, gj = self.G[i], self.G[j]
        ei, ej = self.L[i][1], self.L[j][1]
        qi = tuple(a - b for a, b in zip(L, ei))
        qj = tuple(a - b for a, b in zip(L, ej))
        out = {}
        for (pos, e), c in gi.items():
            out[(pos, tuple(a + b for a, b in zip(e, qi)))] = c
        for (pos, e), c in gj.items():
            m = (pos, tuple(a + b for a, b in zip(e, qj)))
            x = F.sub(out.get(m, F.zero), c)
            if x:
                out[m] = x
            else:
                out.pop(m, None)
        return out


def _vector_degree(v, free):
    return free.vector_degree(v)


def _run_buchberger(free: FreeModule, order, inputs, background, degree_cap,
                    shift_of=None, ideal_mode=False):
    if shift_of is None:
        def shift_of(p):
            return free.degrees[p]
    eng = _Engine(free, order, shift_of, ideal_mode)
    queue: dict = defaultdict(lambda: ([], []))
    for v in background:
        if v:
            queue[_vector_degree(v, free)][0].append(v)
    for idx, v in enumerate(inputs):
        if v:
            queue[_vector_degree(v, free)][1].append((idx, v))
    minimal = []
    processed = set()
    partial = False
    while True:
        degs = [d for d, lst in eng.pairs.items() if lst]
        degs += [d for d in queue if d not in processed]
        if not degs:
            break
        d = min(degs)
        if degree_cap is not None and d > degree_cap:
            partial = True
            break
        plist = sorted(eng.pairs.pop(d, []), key=lambda t: (t[1], t[0]))
        for (i, j, L) in plist:
            s = eng.spoly(i, j, L)
            s = eng.top_reduce(s)
            if s:
                eng.add(s)
        if d in queue and d not in processed:
            processed.add(d)
            bg, real = queue[d]
            for v in bg:
                v = eng.top_reduce(dict(v))
                if v:
                    eng.add(v)
            for idx, v in real:
                v = eng.top_reduce(dict(v))
                if v:
                    eng.add(v)
                    minimal.append(idx)
    return eng, minimal, partial


def _interreduce(eng: _Engine):
    G, L = eng.G, eng.L
    keep = []
    for i, (p, e) in enumerate(L):
        redundant = False
        for j, (q, f) in enumerate(L):
            if j != i and q == p and _divides(f, e) and (f != e or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    key = eng.key
    keep.sort(key=lambda i: key(L[i]))
    elems = [G[i] for i in keep]
    leads = [L[i] for i in keep]
    by_pos = defaultdict(list)
    for idx, (p, e) in enumerate(leads):
        by_pos[p].append(idx)
    F = eng.field
    out = []
    for idx, v in enumerate(elems):
        lm = leads[idx]
        tail = dict(v)
        lc = tail.pop(lm)
        others_by_pos = {p: [j for j in lst if j != idx] for p, lst in by_pos.items()}
        red = kernels.full_reduce(tail, elems, leads, others_by_pos, key, F)
        red[lm] = lc
        if lc != F.one:
            red = vec_scale(red, F.inv(lc), F)
        out.append(red)
    return out, leads


def buchberger(gens, free: FreeModule, order=None, degree_cap=None, background=(),
               reduce_result=True) -> GroebnerBasis:
    """Reduced Gröbner basis of the submodule generated by ``gens`` (+ ``background``).

    ``minimal_inputs`` lists the indices of ``gens`` forming a minimal
    generating set of the module modulo the background submodule.
    """
    if order is None:
        order = ModuleOrder(free, "top")
    gens = [dict(g) for g in gens]
    for g in list(gens) + list(background):
        _vector_degree(g, free)
    eng, minimal, partial = _run_buchberger(
        free, order, gens, background, degree_cap, ideal_mode=free.rank == 1)
    if reduce_result:
        elems, leads = _interreduce(eng)
    else:
        elems, leads = eng.G, eng.L
    return GroebnerBasis(free, order, elems, leads, reduced=reduce_result,
                         partial=partial, degree_cap=degree_cap, minimal_inputs=minimal)


def normal_form(v: dict, gb: GroebnerBasis) -> dict:
    by_pos = defaultdict(list)
    for idx, (p, e) in enumerate(gb.leads):
        by_pos[p].append(idx)
    return kernels.full_reduce(dict(v), gb.elements, gb.leads, by_pos, gb.order.key,
                               gb.free.ring.field)


def s_pairs_reduce_to_zero(gb: GroebnerBasis) -> bool:
    """Buchberger criterion checked over all same-position pairs."""
    F = gb.free.ring.field
    for i in range(len(gb.elements)):
        for j in range(i + 1, len(gb.elements)):
            (p, e), (q, f) = gb.leads[i], gb.leads[j]
            if p != q:
                continue
            L = _lcm(e, f)
            qi = tuple(a - b for a, b in zip(L, e))
            qj = tuple(a - b for a, b in zip(L, f))
            s = vec_add(kernels.shift_vector(gb.elements[i], qi),
                        kernels.shift_vector(gb.elements[j], qj), F, scale=F.neg(F.one))
            if normal_form(s, gb):
                return False
    return True


# ---------------------------------------------------------------------------
# tracked bases: syzygies and lifts


class TrackedBasis:
    """Gröbner basis of ``[g_i | e'_i]`` in ``F ⊕ F'`` under an elimination order.

    Gives: a Gröbner basis of ``<g>`` (target part), a Gröbner basis of the
    syzygy module in the Schreyer order on F', and representations
    ``v = sum a_i g_i`` for members ``v``.
    """

    def __init__(self, gens, free: FreeModule, order: ModuleOrder | None = None,
                 tag_degrees=None):
        self.free = free
        self.ring = free.ring
        self.field = free.ring.field
        self.gens = [dict(g) for g in gens]
        self.target_order = order or ModuleOrder(free, "top")
        n = free.rank
        self.n = n
        gdeg = []
        for i, g in enumerate(self.gens):
            d = free.vector_degree(g)
            if d is None:
                d = 0 if tag_degrees is None else tag_degrees[i]
            elif tag_degrees is not None and tag_degrees[i] != d:
                raise InhomogeneousError(f"generator {i} has degree {d}, expected {tag_degrees[i]}")
            gdeg.append(d)
        self.tag_free = FreeModule(self.ring, gdeg)
        leads = []
        for g in self.gens:
            leads.append(max(g, key=self.target_order.key) if g else (0, self.ring.one_exp))
        self.schreyer = SchreyerOrder(self.tag_free, self.target_order, leads)
        self.order = _AugmentedOrder(self.target_order, self.schreyer, n)
        aug_free = FreeModule(self.ring, free.degrees + tuple(gdeg))
        self.aug_free = aug_free
        one = self.ring.one_exp
        F = self.field
        inputs = []
        self.zero_gens = []
        for i, g in enumerate(self.gens):
            if not g:
                self.zero_gens.append(i)
                continue
            v = dict(g)
            v[(n + i, one)] = F.one
            inputs.append(v)
        eng, _, _ = _run_buchberger(aug_free, self.order, inputs, (), None,
                                    ideal_mode=False)
        elems, leads = _interreduce(eng)
        self.elements = elems
        self.leads = leads
        self._by_pos = defaultdict(list)
        for idx, (p, e) in enumerate(leads):
            self._by_pos[p].append(idx)

    # -- syzygies -------------------------------------------------------------
    def syzygy_vectors(self) -> list[dict]:
        """Gröbner basis (Schreyer order) of syz(g) as vectors in F'."""
        n = self.n
        out = []
        for v, (p, _) in zip(self.elements, self.leads):
            if p >= n:
                out.append({(q - n, e): c for (q, e), c in v.items()})
        one = self.ring.one_exp
        for i in self.zero_gens:
            out.append({(i, one): self.field.one})
        return out

    def syzygy_basis(self) -> GroebnerBasis:
        """The syzygy vectors as a Gröbner basis in the Schreyer order."""
        syz = self.syzygy_vectors()
        leads = [max(v, key=self.schreyer.key) for v in syz]
        return GroebnerBasis(self.tag_free, self.schreyer, syz, leads)

    def module_basis(self) -> GroebnerBasis:
        """Reduced Gröbner basis of <g> in the target order."""
        n = self.n
        elems, leads = [], []
        for v, lm in zip(self.elements, self.leads):
            if lm[0] < n:
                elems.append({m: c for m, c in v.items() if m[0] < n})
                leads.append(lm)
        return GroebnerBasis(self.free, self.target_order, elems, leads)

    # -- representations ---------------------------------------------------------
    def lift(self, v: dict):
        """Coefficients ``a`` (raw poly dicts) with ``v = sum a_i g_i``, or None."""
        n = self.n
        F = self.field
        w = dict(v)
        w = kernels.top_reduce_below(w, self.elements, self.leads, self._by_pos,
                                     self.order.key, F, n)
        if any(m[0] < n for m in w):
            return None
        coeffs = [dict() for _ in self.gens]
        for (p, e), c in w.items():
            coeffs[p - n][e] = F.neg(c)
        return coeffs

    def contains(self, v: dict) -> bool:
        return self.lift(v) is not None


def syzygies(gens, free: FreeModule, minimal=True, tag_degrees=None):
    """Generators of the first syzygy module of ``gens``.

    Returns ``(tag_free, vectors, basis)`` where ``basis`` is the tracked
    basis whose syzygy part is a Gröbner basis in the Schreyer order.
    """
    tb = TrackedBasis(gens, free, tag_degrees=tag_degrees)
    syz = tb.syzygy_vectors()
    if minimal and syz:
        gb = buchberger(syz, tb.tag_free)
        syz = [syz[i] for i in gb.minimal_inputs]
    return tb.tag_free, syz, tb


# ---------------------------------------------------------------------------
# memo table

_GB_MEMO: dict = {}
_GB_LOCK = threading.Lock()


def memo_buchberger(gens, free: FreeModule, order_kind="top") -> GroebnerBasis:
    """``buchberger`` with a process-wide memo keyed by (generators, order)."""
    key = (free, order_kind, tuple(tuple(sorted(g.items(), key=repr)) for g in gens))
    hit = _GB_MEMO.get(key)
    if hit is not None:
        return hit
    gb = buchberger(gens, free, ModuleOrder(free, order_kind))
    with _GB_LOCK:
        _GB_MEMO[key] = gb
    return gb


def clear_memo():
    with _GB_LOCK:
        _GB_MEMO.clear()


# ---------------------------------------------------------------------------
# ideals


def ideal_free(ring: PolyRing) -> FreeModule:
    return FreeModule(ring, (0,))


def ideal_vectors(polys) -> list[dict]:
    return [{(0, e): c for e, c in p._t.items()} for p in polys if p]


def ideal_basis(polys, ring: PolyRing, degree_cap=None) -> GroebnerBasis:
    polys = [ring(p) for p in polys]
    for p in polys:
        if not p.is_homogeneous():
            raise InhomogeneousError(f"inhomogeneous generator {p}")
    return buchberger(ideal_vectors(polys), ideal_free(ring), degree_cap=degree_cap)


def colon(ideal, g, ring: PolyRing) -> GroebnerBasis:
    """``(I : g)`` for polynomials, or ``(I : J)`` when ``g`` is a list."""
    if isinstance(g, (list, tuple)):
        parts = [colon(ideal, h, ring) for h in g]
        if not parts:
            return ideal_basis([ring.one], ring)
        out = parts[0]
        for p in parts[1:]:
            out = intersect(out.as_polynomials(), p.as_polynomials(), ring)
        return out
    g = ring(g)
    ideal = [ring(p) for p in ideal if ring(p)]
    free = ideal_free(ring)
    if not g:
        return ideal_basis([ring.one], ring)
    syz_free, syz, _ = syzygies(ideal_vectors([g] + ideal), free, minimal=False)
    gens = []
    for v in syz:
        comp = {e: c for (p, e), c in v.items() if p == 0}
        if comp:
            gens.append({(0, e): c for e, c in comp.items()})
    return buchberger(gens, free)


def intersect(I, J, ring: PolyRing) -> GroebnerBasis:
    free2 = FreeModule(ring, (0, 0))
    F = ring.field
    one = ring.one_exp
    gens = [{(0, one): F.one, (1, one): F.one}]
    gens += [{(0, e): c for e, c in p._t.items()} for p in I if p]
    gens += [{(1, e): c for e, c in p._t.items()} for p in J if p]
    _, syz, _ = syzygies(gens, free2, minimal=False)
    out = []
    for v in syz:
        comp = {(0, e): c for (p, e), c in v.items() if p == 0}
        if comp:
            out.append(comp)
    return buchberger(out, ideal_free(ring))


def annihilator(free: FreeModule, relations) -> GroebnerBasis:
    """ann of ``free / <relations>`` as an ideal basis."""
    ring = free.ring
    n = free.rank
    F = ring.field
    one = ring.one_exp
    if n == 0:
        return buchberger([{(0, one): F.one}], ideal_free(ring))
    # block b, slot p has degree deg(e_p) - deg(e_b), so the diagonal is homogeneous
    big = FreeModule(ring, tuple(free.degrees[p] - free.degrees[b]
                                 for b in range(n) for p in range(n)))
    diag = {(i * n + i, one): F.one for i in range(n)}
    gens = [diag]
    for blk in range(n):
        for r in relations:
            gens.append({(blk * n + p, e): c for (p, e), c in r.items()})
    _, syz, _ = syzygies(gens, big, minimal=False)
    out = []
    for v in syz:
        comp = {(0, e): c for (p, e), c in v.items() if p == 0}
        if comp:
            out.append(comp)
    return buchberger(out, ideal_free(ring))


# ---------------------------------------------------------------------------
# Hilbert series


def _tpoly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _tpoly_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


def _minimalize(mons):
    mons = sorted(set(mons), key=sum)
    out = []
    for m in mons:
        if not any(_divides(o, m) for o in out):
            out.append(m)
    return out


def monomial_numerator(mons, weights) -> dict:
    """Numerator N(t) with HS(k[x]/(mons)) = N(t) / prod(1 - t^w)."""
    memo: dict = {}

    def deg(m):
        return sum(w * e for w, e in zip(weights, m))

    def rec(ms):
        ms = tuple(sorted(ms))
        hit = memo.get(ms)
        if hit is not None:
            return hit
        if not ms:
            res = {0: 1}
        elif all(all(a == 0 or b == 0 for a, b in zip(ms[i], ms[j]))
                 for i in range(len(ms)) for j in range(i + 1, len(ms))):
            res = {0: 1}
            for m in ms:
                res = _tpoly_mul(res, {0: 1, deg(m): -1})
        else:
            # pivot on the variable occurring in most generators
            counts = [sum(1 for m in ms if m[v] > 0) for v in range(len(weights))]
            v = max(range(len(weights)), key=lambda k: counts[k])
            exps = sorted(m[v] for m in ms if m[v] > 0)
            # lower median: never a pure power already in the ideal
            e = exps[(len(exps) - 1) // 2]
            piv = tuple(e if k == v else 0 for k in range(len(weights)))
            # N(J) = N(J + (piv)) + t^deg(piv) N(J : piv)
            with_piv = _minimalize(list(ms) + [piv])
            quot = _minimalize([tuple(max(a - b, 0) for a, b in zip(m, piv)) for m in ms])
            res = _tpoly_mul({deg(piv): 1}, rec(quot))
            a = rec(with_piv)
            for k, x in a.items():
                res[k] = res.get(k, 0) + x
            res = {k: x for k, x in res.items() if x}
        memo[ms] = res
        return res

    ms = _minimalize(mons)
    if any(not any(m) for m in ms):
        return {}
    return rec(ms)


@dataclass
class HilbertData:
    """Hilbert series ``numerator(t) / prod(1 - t^w)`` of a graded quotient."""

    numerator: dict
    weights: tuple

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def is_zero(self) -> bool:
        return not self.numerator

    def _reduced(self):
        """(order of vanishing of the numerator at t=1, cofactor)."""
        num = dict(self.numerator)
        k = 0
        while num and sum(num.values()) == 0:
            num = _divide_one_minus_t(num)
            k += 1
        return k, num

    def dimension(self) -> int:
        """Krull dimension (-1 for the zero module)."""
        if not self.numerator:
            return -1
        k, _ = self._reduced()
        return self.nvars - k

    def multiplicity(self):
        from fractions import Fraction
        if not self.numerator:
            return 0
        _, num = self._reduced()
        prod_w = 1
        for w in self.weights:
            prod_w *= w
        return Fraction(sum(num.values()), prod_w)

    def length(self):
        """Total dimension over k when finite, else None."""
        d = self.dimension()
        if d > 0:
            return None
        if d < 0:
            return 0
        return sum(self.series(self.max_degree()).values())

    def max_degree(self) -> int:
        """Upper bound for the top nonzero degree of a finite-length module."""
        top = max(self.numerator) if self.numerator else 0
        return top

    def min_degree(self) -> int:
        return min(self.numerator) if self.numerator else 0

    def series(self, upto: int) -> dict:
        """Hilbert function values for degrees ``<= upto``."""
        coeffs = dict(self.numerator)
        lo = min(coeffs) if coeffs else 0
        for w in self.weights:
            # multiply by 1/(1 - t^w)
            out: dict = {}
            for d in range(lo, upto + 1):
                out[d] = coeffs.get(d, 0) + out.get(d - w, 0)
            coeffs = out
        return {d: v for d, v in coeffs.items() if d <= upto and v}

    def hilbert_function(self, d: int) -> int:
        return self.series(d).get(d, 0)


def _divide_one_minus_t(num: dict) -> dict:
    """Exact division of a Laurent polynomial by (1 - t)."""
    lo, hi = min(num), max(num)
    out = {}
    acc = 0
    for d in range(lo, hi + 1):
        acc += num.get(d, 0)
        if acc:
            out[d] = acc
    return out


def hilbert(gb: GroebnerBasis) -> HilbertData:
    """Hilbert series of ``free / <gb>`` via the initial submodule."""
    gb.require_full()
    ring = gb.free.ring
    init = gb.initial_ideals()
    total: dict = {}
    for pos, shift in enumerate(gb.free.degrees):
        num = monomial_numerator(init.get(pos, []), ring.weights)
        for k, v in num.items():
            total[k + shift] = total.get(k + shift, 0) + v
    total = {k: v for k, v in total.items() if v}
    return HilbertData(total, ring.weights)


def standard_monomials(gb: GroebnerBasis, degree: int) -> list:
    """Basis (pos, exp) of ``(free/<gb>)_degree``, descending in the order."""
    ring = gb.free.ring
    init = gb.initial_ideals()
    out = []
    for pos, shift in enumerate(gb.free.degrees):
        leads = init.get(pos, [])
        for exp in ring.monomials_of_degree(degree - shift):
            if not any(_divides(l, exp) for l in leads):
                out.append((pos, exp))
    out.sort(key=gb.order.key, reverse=True)
    return out


__all__ = [
    "FreeModule", "ModuleOrder", "SchreyerOrder", "GroebnerBasis", "TrackedBasis",
    "buchberger", "normal_form", "syzygies", "hilbert", "HilbertData", "colon",
    "intersect", "annihilator", "ideal_basis", "standard_monomials",
    "s_pairs_reduce_to_zero", "InhomogeneousError", "PartialBasisError",
]

