"""Finitely presented graded modules over Q or R = Q/(f).

A module is ``coker(Q^source -> Q^target)`` plus the relations ``f_k e_i``;
all Gröbner work happens over Q.  Entry (i, j) of the matrix has degree
``source[j] - target[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import groebner as gbm
from .groebner import FreeModule, InhomogeneousError, TrackedBasis, buchberger
from .poly import Polynomial
from .rings import RingSpec
from .scalar import INF


class PresentationError(ValueError):
    pass


class NotTorsionFree(ValueError):
    def __init__(self, witness):
        super().__init__("module has torsion: M -> M** is not injective")
        self.witness = witness


class GradedPresentation:
    """coker of a homogeneous matrix over ``ring`` (columns stored as vectors)."""

    def __init__(self, ring: RingSpec, target, source, columns, check: bool = True):
        self.ring = ring
        self.target = tuple(int(a) for a in target)
        self.source = tuple(int(b) for b in source)
        self.columns = [dict(c) for c in columns]
        if len(self.columns) != len(self.source):
            raise PresentationError("one source twist per column required")
        if check:
            free = self.free
            for j, c in enumerate(self.columns):
                for (p, _) in c:
                    if p >= len(self.target):
                        raise PresentationError(f"column {j} has an entry outside the target")
                d = free.vector_degree(c)
                if d is not None and d != self.source[j]:
                    raise InhomogeneousError(
                        f"column {j} has degree {d}, source twist says {self.source[j]}")

    # -- constructors -------------------------------------------------------------
    @classmethod
    def from_matrix(cls, ring: RingSpec, target, source, rows):
        """``rows[i][j]`` is a polynomial (or string) for entry (i, j)."""
        Q = ring.Q
        target = list(target)
        source = list(source)
        cols = [dict() for _ in source]
        if len(rows) != len(target):
            raise PresentationError("matrix needs one row per target twist")
        for i, row in enumerate(rows):
            if len(row) != len(source):
                raise PresentationError(f"row {i} needs {len(source)} entries")
            for j, ent in enumerate(row):
                p = Q(ent)
                if p and not p.is_homogeneous():
                    raise InhomogeneousError(f"entry ({i},{j}) = {p} is inhomogeneous")
                if p and p.degree() != source[j] - target[i]:
                    raise InhomogeneousError(
                        f"entry ({i},{j}) = {p} has degree {p.degree()}, "
                        f"expected {source[j] - target[i]}")
                for e, c in p._t.items():
                    cols[j][(i, e)] = c
        return cls(ring, target, source, cols)

    @classmethod
    def free_module(cls, ring: RingSpec, degrees=(0,)):
        return cls(ring, degrees, (), [])

    @classmethod
    def cyclic(cls, ring: RingSpec, ideal=(), shift: int = 0):
        """``R/(ideal)`` with generator in degree ``shift``."""
        Q = ring.Q
        gens = [Q(g) for g in ideal]
        gens = [g for g in gens if g]
        cols, src = [], []
        for g in gens:
            if not g.is_homogeneous():
                raise InhomogeneousError(f"ideal generator {g} is inhomogeneous")
            cols.append({(0, e): c for e, c in g._t.items()})
            src.append(g.degree() + shift)
        return cls(ring, (shift,), src, cols)

    @classmethod
    def residue_field(cls, ring: RingSpec):
        return cls.cyclic(ring, ring.Q.gens())

    # -- basic data ------------------------------------------------------------------
    @cached_property
    def free(self) -> FreeModule:
        return FreeModule(self.ring.Q, self.target)

    @property
    def rank(self) -> int:
        return len(self.target)

    @property
    def matrix(self) -> list[list[Polynomial]]:
        Q = self.ring.Q
        rows = [[dict() for _ in self.source] for _ in self.target]
        for j, c in enumerate(self.columns):
            for (i, e), a in c.items():
                rows[i][j][e] = a
        return [[Q._raw(x) for x in row] for row in rows]

    def q_relations(self) -> list[dict]:
        """Relations over Q: the columns plus (f)·free."""
        return [c for c in self.columns if c] + self.ring.relation_multiples(self.free)

    @cached_property
    def gb(self) -> gbm.GroebnerBasis:
        return buchberger(self.q_relations(), self.free)

    @cached_property
    def hilbert(self) -> gbm.HilbertData:
        if not self.target:
            return gbm.HilbertData({}, self.ring.Q.weights)
        return gbm.hilbert(self.gb)

    def is_zero(self) -> bool:
        return self.hilbert.is_zero()

    def dimension(self) -> int:
        return self.hilbert.dimension()

    def normal_form(self, v: dict) -> dict:
        return gbm.normal_form(v, self.gb) if self.target else {}

    def contains_relation(self, v: dict) -> bool:
        return not self.normal_form(v)

    def restrict(self, base: RingSpec) -> "GradedPresentation":
        """The same module viewed over a ring Q/(f_1..f_s) mapping onto ours."""
        s = base.codim
        if base.Q != self.ring.Q or base.relations != self.ring.relations[:s]:
            raise PresentationError("restriction needs a prefix of the defining sequence")
        extra = []
        for f in self.ring.relations[s:]:
            for i in range(self.rank):
                extra.append({(i, e): c for e, c in f._t.items()})
        src = list(self.source) + [self.free.vector_degree(v) for v in extra]
        return GradedPresentation(base, self.target, src, self.columns + extra, check=False)

    def describe(self) -> dict:
        return {
            "target": list(self.target),
            "source": list(self.source),
            "matrix": [[str(x) for x in row] for row in self.matrix],
        }

    def __repr__(self):
        return f"GradedPresentation(target={self.target}, source={self.source})"


# ---------------------------------------------------------------------------
# minimal presentations


class MinimalPresentation(GradedPresentation):
    """A minimal presentation plus the map from the original generators."""

    def __init__(self, ring, target, source, columns, kept, images):
        super().__init__(ring, target, source, columns, check=False)
        # kept[k] = original index of new generator k; images[i] = new vector of old e_i
        self.kept = kept
        self.images = images

    def transport(self, v: dict) -> dict:
        """Image in the new free module of a vector over the original generators."""
        F = self.ring.field
        out: dict = {}
        for (i, e), c in v.items():
            for (k, e2), c2 in self.images[i].items():
                m = (k, tuple(a + b for a, b in zip(e, e2)))
                x = F.add(out.get(m, F.zero), F.mul(c, c2))
                if x:
                    out[m] = x
                else:
                    out.pop(m, None)
        return out


def _unit_prune(P: GradedPresentation):
    F = P.ring.field
    one = P.ring.Q.one_exp
    cols = [dict(c) for c in P.columns if c]
    n = P.rank
    elim: dict = {}
    alive = set(range(n))
    while True:
        hit = None
        for j, c in enumerate(cols):
            for (i, e) in c:
                if e == one:
                    hit = (j, i)
                    break
            if hit:
                break
        if hit is None:
            break
        j, i = hit
        piv = cols.pop(j)
        cinv = F.inv(piv[(i, one)])
        # e_i == -(1/c) * (piv - c e_i)
        expr = {m: F.neg(F.mul(a, cinv)) for m, a in piv.items() if m != (i, one)}
        newcols = []
        for c in cols:
            comp = {e: a for (p, e), a in c.items() if p == i}
            if comp:
                c = gbm.vec_add(c, gbm.poly_times_vector(comp, piv, F), F, scale=F.neg(cinv))
            if c:
                newcols.append(c)
        cols = newcols
        for k, ex in list(elim.items()):
            comp = {e: a for (p, e), a in ex.items() if p == i}
            if comp:
                rest = {m: a for m, a in ex.items() if m[0] != i}
                elim[k] = gbm.vec_add(rest, gbm.poly_times_vector(comp, expr, F), F)
        elim[i] = expr
        alive.discard(i)
    return cols, sorted(alive), elim


def minimal_presentation(P: GradedPresentation) -> MinimalPresentation:
    """Prune unit entries, then keep a minimal set of relations modulo (f)."""
    ring = P.ring
    cols, alive, elim = _unit_prune(P)
    newidx = {old: k for k, old in enumerate(alive)}

    def rename(v):
        return {(newidx[p], e): c for (p, e), c in v.items()}

    one = ring.Q.one_exp
    images = []
    for i in range(P.rank):
        if i in newidx:
            images.append({(newidx[i], one): ring.field.one})
        else:
            images.append(rename(elim[i]))
    target = [P.target[i] for i in alive]
    free = FreeModule(ring.Q, target)
    cols = [rename(c) for c in cols]
    cols = [c for c in cols if c]
    if cols:
        gb = buchberger(cols, free, background=ring.relation_multiples(free))
        cols = [cols[i] for i in sorted(gb.minimal_inputs)]
    cols = [ring.reduce_vector(c) for c in cols]
    images = [ring.reduce_vector(v) for v in images]
    src = [free.vector_degree(c) for c in cols]
    return MinimalPresentation(ring, target, src, cols, alive, images)


def mu(P: GradedPresentation) -> int:
    return minimal_presentation(P).rank


def is_free(P: GradedPresentation) -> bool:
    return not minimal_presentation(P).source


# ---------------------------------------------------------------------------
# lengths


@dataclass(frozen=True)
class LengthReport:
    dimension: int
    length: object  # int or INF
    adjusted_length: int

    def as_dict(self):
        return {
            "dimension": self.dimension,
            "length": "inf" if self.length is INF else self.length,
            "adjusted_length": self.adjusted_length,
        }


def length_report(P) -> LengthReport:
    h = P.hilbert if isinstance(P, GradedPresentation) else P
    d = h.dimension()
    if d <= 0:
        ell = h.length()
        return LengthReport(d, ell, ell)
    return LengthReport(d, INF, 0)


# ---------------------------------------------------------------------------
# submodules, subquotients, homology


def kernel_of_free_map(ring: RingSpec, src_degrees, tgt_free: FreeModule, images,
                       tgt_relations=()) -> list[dict]:
    """Generators of ``{v : sum v_k images_k in <tgt_relations> + (f) tgt}``.

    Returned vectors live in the free module with degrees ``src_degrees``.
    """
    m = len(images)
    back = [b for b in tgt_relations if b] + ring.relation_multiples(tgt_free)
    gens = list(images) + back
    tdeg = list(src_degrees) + [tgt_free.vector_degree(b) for b in back]
    if not m:
        return []
    _, syz, _ = gbm.syzygies(gens, tgt_free, minimal=False, tag_degrees=tdeg)
    out = []
    for v in syz:
        w = {(p, e): c for (p, e), c in v.items() if p < m}
        if w:
            out.append(w)
    return out


class Subquotient:
    """``(<Z> + B) / B`` for vectors of a free Q-module, presented over ``ring``.

    ``B`` should already contain every relation of the ambient quotient; the
    multiples of (f) are added here.
    """

    def __init__(self, ring: RingSpec, free: FreeModule, Z, B):
        self.ring = ring
        self.free = free
        Z = [z for z in Z if z]
        back = [b for b in B if b] + ring.relation_multiples(free)
        self.background = back
        if Z:
            gb = buchberger(Z, free, background=back)
            self.Zmin = [Z[i] for i in sorted(gb.minimal_inputs)]
        else:
            self.Zmin = []
        self.degrees = [free.vector_degree(z) for z in self.Zmin]
        m = len(self.Zmin)
        self._m = m
        if m:
            self.tb = TrackedBasis(self.Zmin + back, free)
            rels = []
            for v in self.tb.syzygy_vectors():
                w = {(p, e): c for (p, e), c in v.items() if p < m}
                if w:
                    rels.append(w)
        else:
            self.tb = None
            rels = []
        gfree = FreeModule(ring.Q, self.degrees)
        src = [gfree.vector_degree(r) for r in rels]
        raw = GradedPresentation(ring, self.degrees, src, rels, check=False)
        self.presentation = minimal_presentation(raw)

    def coordinates(self, v: dict):
        """Coordinates of ``v`` in the minimal presentation, or None if v is not in <Z>+B."""
        if not v:
            return {}
        if self.tb is None:
            return None if gbm.normal_form(v, buchberger(self.background, self.free)) else {}
        coeffs = self.tb.lift(v)
        if coeffs is None:
            return None
        w = {}
        for k in range(self._m):
            for e, c in coeffs[k].items():
                w[(k, e)] = c
        return self.presentation.transport(w)


def homology(ring: RingSpec, free: FreeModule, B, out_images=None, out_free=None,
             out_B=(), in_images=()) -> Subquotient:
    """Homology at ``C = free/B`` of ``C_in -> C -> C_out``.

    ``out_images[k]`` is the image of basis vector k; ``in_images`` are the
    images of the incoming map (vectors in ``free``).
    """
    one = ring.Q.one_exp
    if out_images is None:
        Z = [{(k, one): ring.field.one} for k in range(free.rank)]
    else:
        Z = kernel_of_free_map(ring, free.degrees, out_free, out_images, out_B)
    return Subquotient(ring, free, Z, list(B) + list(in_images))


# ---------------------------------------------------------------------------
# module operations


def tensor(P1: GradedPresentation, P2: GradedPresentation) -> GradedPresentation:
    if P1.ring != P2.ring:
        raise PresentationError("tensor needs modules over the same ring")
    n2 = P2.rank
    target = [a + b for a in P1.target for b in P2.target]
    cols, src = [], []
    for c, s in zip(P1.columns, P1.source):
        for j, b in enumerate(P2.target):
            cols.append({(i * n2 + j, e): x for (i, e), x in c.items()})
            src.append(s + b)
    for i, a in enumerate(P1.target):
        for c, s in zip(P2.columns, P2.source):
            cols.append({(i * n2 + j, e): x for (j, e), x in c.items()})
            src.append(s + a)
    return GradedPresentation(P1.ring, target, src, cols, check=False)


def direct_sum(*mods: GradedPresentation) -> GradedPresentation:
    ring = mods[0].ring
    target, source, cols = [], [], []
    off = 0
    for P in mods:
        target += P.target
        source += P.source
        cols += [{(p + off, e): c for (p, e), c in col.items()} for col in P.columns]
        off += P.rank
    return GradedPresentation(ring, target, source, cols, check=False)


def shift(P: GradedPresentation, a: int) -> GradedPresentation:
    """``P(-a)``: generators move up by ``a``."""
    return GradedPresentation(P.ring, [t + a for t in P.target], [s + a for s in P.source],
                              P.columns, check=False)


def _transpose_images(P: GradedPresentation):
    """Images of the dual basis e_i* under A^T, living in the dual of the source."""
    imgs = [dict() for _ in P.target]
    for j, c in enumerate(P.columns):
        for (i, e), x in c.items():
            imgs[i][(j, e)] = x
    return imgs


def dual_kernel(P: GradedPresentation) -> list[dict]:
    """Generators of M* as vectors in the dual free module (degrees -target)."""
    ring = P.ring
    dual_src = FreeModule(ring.Q, [-b for b in P.source])
    imgs = _transpose_images(P)
    return kernel_of_free_map(ring, [-a for a in P.target], dual_src, imgs)


def hom_into_ring(P: GradedPresentation) -> MinimalPresentation:
    """A minimal presentation of ``Hom_R(M, R)``."""
    ring = P.ring
    free = FreeModule(ring.Q, [-a for a in P.target])
    Z = dual_kernel(P)
    return Subquotient(ring, free, Z, ()).presentation


def depth(P: GradedPresentation):
    """depth at the irrelevant ideal = dim Q - pd_Q (INF for the zero module)."""
    if P.is_zero():
        return INF
    return P.ring.dim_Q - pd_Q(P)


def pd_Q(P: GradedPresentation) -> int:
    from .resolution import resolve
    res = resolve(P.restrict(P.ring.ambient()), horizon=None)
    return res.length


# ---------------------------------------------------------------------------
# maps and short exact sequences


class ModuleMap:
    """Homogeneous map given by the images of the source generators."""

    def __init__(self, source: GradedPresentation, target: GradedPresentation, images):
        self.source = source
        self.target = target
        self.images = [dict(v) for v in images]
        if len(self.images) != source.rank:
            raise PresentationError("one image per source generator required")
        for k, v in enumerate(self.images):
            d = target.free.vector_degree(v)
            if d is not None and d != source.target[k]:
                raise InhomogeneousError(f"image of generator {k} has degree {d}, "
                                         f"expected {source.target[k]}")

    @classmethod
    def from_matrix(cls, source, target, rows):
        """``rows[i][k]``: component i of the image of source generator k."""
        Q = source.ring.Q
        imgs = [dict() for _ in source.target]
        for i, row in enumerate(rows):
            for k, ent in enumerate(row):
                for e, c in Q(ent)._t.items():
                    imgs[k][(i, e)] = c
        return cls(source, target, imgs)

    def apply(self, v: dict) -> dict:
        F = self.source.ring.field
        comps = gbm.split_vector(v, self.source.rank)
        return gbm.combine(comps, self.images, F)

    def is_well_defined(self) -> bool:
        return all(self.target.contains_relation(self.apply(c)) for c in self.source.columns)

    def cokernel(self) -> GradedPresentation:
        T = self.target
        imgs = [v for v in self.images if v]
        src = [T.free.vector_degree(v) for v in imgs]
        return GradedPresentation(T.ring, T.target, list(T.source) + src,
                                  T.columns + imgs, check=False)

    def is_surjective(self) -> bool:
        return self.cokernel().is_zero()

    def kernel(self) -> Subquotient:
        S = self.source
        Z = kernel_of_free_map(S.ring, S.target, self.target.free, self.images,
                               self.target.columns)
        return Subquotient(S.ring, S.free, Z, S.columns)

    def is_injective(self) -> bool:
        return self.kernel().presentation.is_zero()

    def compose_zero(self, other: "ModuleMap") -> bool:
        """Is ``other ∘ self`` zero?"""
        return all(other.target.contains_relation(other.apply(v)) for v in self.images)


def _numer_eq(a: dict, b: dict) -> bool:
    return {k: v for k, v in a.items() if v} == {k: v for k, v in b.items() if v}


def _numer_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


@dataclass
class ExactnessReport:
    exact: bool
    failures: list = field(default_factory=list)

    def as_dict(self):
        return {"exact": self.exact, "failures": list(self.failures)}


def verify_short_exact(alpha: ModuleMap, beta: ModuleMap) -> ExactnessReport:
    """Check ``0 -> M1 -alpha-> M2 -beta-> M3 -> 0`` is exact.

    Well-defined maps with beta∘alpha = 0 and beta onto, plus the Hilbert
    identities HS(coker alpha) = HS(M3) and HS(M2) = HS(M1) + HS(M3), force
    exactness at all three spots.
    """
    fails = []
    if alpha.target is not beta.source and alpha.target.describe() != beta.source.describe():
        fails.append("maps are not composable")
    if not alpha.is_well_defined():
        fails.append("first map not well defined")
    if not beta.is_well_defined():
        fails.append("second map not well defined")
    if not alpha.compose_zero(beta):
        fails.append("composite is nonzero")
    if not beta.is_surjective():
        fails.append("second map not onto")
    h1 = alpha.source.hilbert.numerator
    h2 = alpha.target.hilbert.numerator
    h3 = beta.target.hilbert.numerator
    if not _numer_eq(alpha.cokernel().hilbert.numerator, h3):
        fails.append("image of the first map differs from the kernel of the second")
    if not _numer_eq(h2, _numer_add(h1, h3)):
        fails.append("first map not injective (Hilbert series mismatch)")
    return ExactnessReport(not fails, fails)


# ---------------------------------------------------------------------------
# pushforward


@dataclass
class Pushforward:
    lam: int
    iota: ModuleMap
    M1: GradedPresentation
    exact: bool

    def as_dict(self):
        return {"lambda": self.lam, "cokernel": self.M1.describe(), "exact": self.exact}


def pushforward(P: GradedPresentation) -> Pushforward:
    """``0 -> M -> R^lambda -> M1 -> 0`` where R^lambda covers M* minimally."""
    ring = P.ring
    dual_free = FreeModule(ring.Q, [-a for a in P.target])
    sq = Subquotient(ring, dual_free, dual_kernel(P), ())
    Z = sq.Zmin
    deltas = sq.degrees
    lam = len(Z)
    cover = GradedPresentation.free_module(ring, [-d for d in deltas])
    imgs = []
    for i in range(P.rank):
        v = {}
        for k, z in enumerate(Z):
            for (p, e), c in z.items():
                if p == i:
                    v[(k, e)] = c
        imgs.append(v)
    iota = ModuleMap(P, cover, imgs)
    ker = iota.kernel()
    if not ker.presentation.is_zero():
        raise NotTorsionFree(ker.Zmin[0] if ker.Zmin else None)
    M1 = iota.cokernel()
    exact = iota.is_well_defined() and iota.is_injective()
    return Pushforward(lam, iota, M1, exact)


def mprimary_killing_ideal(P: GradedPresentation):
    """An m-primary ideal killing a finite-length module (ann + max ideal power)."""
    ann = gbm.annihilator(P.free, P.q_relations())
    return ann
