"""Tor and Ext of module pairs, Betti sequences, operator actions on Tor."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import groebner as gbm
from .groebner import FreeModule, TrackedBasis, standard_monomials
from .modules import (GradedPresentation, LengthReport, Subquotient, homology, length_report,
                      minimal_presentation)
from .resolution import (HorizonError, OperatorSet, ResolutionPrefix, eisenbud_operators,
                         resolve)
from .rings import RingSpec
from .scalar import INF


# ---------------------------------------------------------------------------
# complexes F ⊗ N and Hom(F, N)


@dataclass
class HomologyModule:
    """One homology module of a complex of free-module quotients over Q."""

    index: int
    sq: Subquotient
    free: FreeModule  # ambient chain module over Q

    @property
    def presentation(self):
        return self.sq.presentation

    @property
    def report(self) -> LengthReport:
        return length_report(self.presentation)

    @property
    def mu(self) -> int:
        return self.presentation.rank

    def is_zero(self) -> bool:
        return self.presentation.is_zero()

    def representative(self, pos: int, exp) -> dict:
        z = self.sq.Zmin[self.presentation.kept[pos]]
        return {(p, tuple(a + b for a, b in zip(e, exp))): c for (p, e), c in z.items()}

    def basis(self, degree: int) -> list:
        P = self.presentation
        if not P.rank:
            return []
        return standard_monomials(P.gb, degree)

    def coordinates(self, v: dict, degree: int) -> list | None:
        """Coefficients of the class of cycle ``v`` on ``basis(degree)``."""
        w = self.sq.coordinates(v)
        if w is None:
            return None
        P = self.presentation
        nf = P.normal_form(w) if P.rank else {}
        basis = self.basis(degree)
        idx = {m: k for k, m in enumerate(basis)}
        F = P.ring.field
        out = [F.zero] * len(basis)
        for m, c in nf.items():
            if m not in idx:
                raise AssertionError("normal form left the requested degree")
            out[idx[m]] = c
        return out

    def degree_range(self, cap: int):
        """Degrees with possibly nonzero graded pieces, truncated at ``cap``."""
        P = self.presentation
        if not P.rank:
            return range(0)
        lo = min(P.target)
        h = P.hilbert
        if h.dimension() <= 0:
            hi = max(h.numerator) if h.numerator else lo - 1
            return range(lo, hi + 1)
        return range(lo, max(cap, lo) + 1)


class _TensorComplex:
    """F ⊗ N for a resolution F and an R-module N (presented over Q)."""

    def __init__(self, res: ResolutionPrefix, N: GradedPresentation):
        self.res = res
        self.N = N
        self.nN = N.rank
        self.ring = res.ring

    def free(self, i: int) -> FreeModule:
        return FreeModule(self.ring.Q, [a + b for a in self.res.twists[i] for b in self.N.target]
                          if i < len(self.res.twists) else ())

    def relations(self, i: int) -> list[dict]:
        nN = self.nN
        out = []
        for k in range(self.res.rank(i)):
            for c in self.N.columns:
                out.append({(k * nN + j, e): x for (j, e), x in c.items()})
        return out

    def images(self, i: int) -> list[dict]:
        """Images of the basis of C_i under d_i ⊗ 1."""
        nN = self.nN
        out = []
        for col in self.res.d(i):
            for j in range(nN):
                out.append({(l * nN + j, e): c for (l, e), c in col.items()})
        return out

    def chain_map(self, cols) -> list:
        """Images of the basis of C under (matrix with given columns) ⊗ 1."""
        nN = self.nN
        out = []
        for col in cols:
            for j in range(nN):
                out.append({(l * nN + j, e): c for (l, e), c in col.items()})
        return out

    def apply(self, images, v: dict) -> dict:
        F = self.ring.field
        comps = gbm.split_vector(v, len(images))
        return gbm.combine(comps, images, F)

    def homology(self, i: int) -> HomologyModule:
        ring = self.ring
        free = self.free(i)
        if i == 0:
            H = homology(ring, free, self.relations(0), None, None, (), self.images(1))
        else:
            H = homology(ring, free, self.relations(i), self.images(i), self.free(i - 1),
                         self.relations(i - 1), self.images(i + 1))
        return HomologyModule(i, H, free)


class _HomComplex:
    """Hom_R(F, N); C^i = ⊕_k N(deg F_i[k])."""

    def __init__(self, res: ResolutionPrefix, N: GradedPresentation):
        self.res = res
        self.N = N
        self.nN = N.rank
        self.ring = res.ring

    def free(self, i: int) -> FreeModule:
        return FreeModule(self.ring.Q, [b - a for a in self.res.twists[i] for b in self.N.target])

    def relations(self, i: int) -> list[dict]:
        nN = self.nN
        out = []
        for k in range(self.res.rank(i)):
            for c in self.N.columns:
                out.append({(k * nN + j, e): x for (j, e), x in c.items()})
        return out

    def images(self, i: int) -> list[dict]:
        """Images of the basis of C^i under Hom(d_{i+1}, N)."""
        nN = self.nN
        # entry (k, l) of d_{i+1}
        out = [dict() for _ in range(self.res.rank(i) * nN)]
        for l, col in enumerate(self.res.d(i + 1)):
            for (k, e), c in col.items():
                for j in range(nN):
                    out[k * nN + j][(l * nN + j, e)] = c
        return out

    def homology(self, i: int) -> HomologyModule:
        ring = self.ring
        free = self.free(i)
        out = self.images(i)
        incoming = self.images(i - 1) if i >= 1 else []
        H = homology(ring, free, self.relations(i), out, self.free(i + 1),
                     self.relations(i + 1), incoming)
        return HomologyModule(i, H, free)


# ---------------------------------------------------------------------------
# Tor / Ext


@dataclass
class TorData:
    M: GradedPresentation
    N: GradedPresentation
    resolution: ResolutionPrefix
    modules: list
    complex: object = field(repr=False, default=None)

    def __getitem__(self, i):
        return self.modules[i]

    def __len__(self):
        return len(self.modules)

    def lengths(self) -> list:
        return [m.report.length for m in self.modules]


def _check_ring(M, N):
    if M.ring != N.ring:
        raise ValueError("modules over different rings")


def tor(M: GradedPresentation, N: GradedPresentation, n: int,
        res: ResolutionPrefix | None = None) -> TorData:
    """Tor_0..Tor_n from a resolution of M tensored with N."""
    _check_ring(M, N)
    if res is None:
        res = resolve(M, n + 1)
    elif len(res.twists) < n + 2 and not res.complete:
        raise HorizonError(f"Tor_{n} needs the resolution to reach F_{n + 1}", required=n + 1)
    Nm = minimal_presentation(N)
    cx = _TensorComplex(_padded(res, n + 1), Nm)
    mods = [cx.homology(i) for i in range(n + 1)]
    return TorData(M, N, res, mods, cx)


def ext(M: GradedPresentation, N: GradedPresentation, n: int,
        res: ResolutionPrefix | None = None) -> TorData:
    """Ext^0..Ext^n as homology of Hom(F, N)."""
    _check_ring(M, N)
    if res is None:
        res = resolve(M, n + 1)
    elif len(res.twists) < n + 2 and not res.complete:
        raise HorizonError(f"Ext^{n} needs the resolution to reach F_{n + 1}", required=n + 1)
    Nm = minimal_presentation(N)
    cx = _HomComplex(_padded(res, n + 1), Nm)
    mods = [cx.homology(i) for i in range(n + 1)]
    return TorData(M, N, res, mods, cx)


def _padded(res: ResolutionPrefix, upto: int) -> ResolutionPrefix:
    """Extend a complete resolution with zero modules up to index ``upto``."""
    if len(res.twists) > upto or not res.complete:
        return res
    twists = list(res.twists) + [[] for _ in range(upto + 1 - len(res.twists))]
    diffs = list(res.diffs) + [[] for _ in range(upto + 1 - len(res.diffs))]
    return ResolutionPrefix(res.ring, res.module, max(res.horizon, upto), twists, diffs,
                            res.cover, complete=True)


# ---------------------------------------------------------------------------
# Betti sequences


@dataclass
class BettiRecord:
    i: int
    dimension: int
    length: object
    beta: int
    mu: int

    def as_dict(self):
        return {"i": self.i, "dimension": self.dimension,
                "length": "inf" if self.length is INF else self.length,
                "beta": self.beta, "mu": self.mu}


@dataclass
class BettiSequence:
    records: list
    horizon: int
    pair: tuple = ("M", "N")

    @property
    def betas(self) -> list[int]:
        return [r.beta for r in self.records]

    @property
    def lengths(self) -> list:
        return [r.length for r in self.records]

    @property
    def mus(self) -> list[int]:
        return [r.mu for r in self.records]

    @property
    def finite_length_index(self):
        """Least s with every recorded Tor_i, i >= s, of finite length.

        Infinite unless the last two recorded spots are finite: a single
        finite final spot can be an even vanishing between infinite odd ones.
        """
        s = len(self.records)
        for r in reversed(self.records):
            if r.length is INF:
                break
            s = r.i
        if s > len(self.records) - 2:
            return INF
        return s

    def as_dict(self):
        f = self.finite_length_index
        return {"pair": list(self.pair), "horizon": self.horizon,
                "finite_length_index": "inf" if f is INF else f,
                "records": [r.as_dict() for r in self.records]}


def betti_from_homology(data: TorData, pair=("M", "N")) -> BettiSequence:
    recs = []
    for m in data.modules:
        rep = m.report
        recs.append(BettiRecord(m.index, rep.dimension, rep.length, rep.adjusted_length, m.mu))
    return BettiSequence(recs, len(recs) - 1, pair)


def betti_sequence(M, N, horizon: int, pair=("M", "N"), data: TorData | None = None) -> BettiSequence:
    if data is None:
        data = tor(M, N, horizon)
    return betti_from_homology(data, pair)


def tor_symmetry(M, N, n: int) -> bool:
    """Lengths of Tor_i(M,N) from resolving M agree with those from resolving N."""
    a = tor(M, N, n).lengths()
    b = tor(N, M, n).lengths()
    return a == b


# ---------------------------------------------------------------------------
# induced maps on homology


def _rank(rows, F) -> int:
    from . import kernels
    if not rows or not rows[0]:
        return 0
    p = getattr(F, "p", 0)
    M = [list(r) for r in rows]
    return len(kernels.rref(M, len(M[0]), p))


def induced_matrix(src: HomologyModule, tgt: HomologyModule, images, apply, t: int, shift: int):
    """k-matrix (rows = tgt basis in degree t - shift) of the induced map on degree t."""
    cols = []
    for (pos, exp) in src.basis(t):
        v = src.representative(pos, exp)
        w = apply(images, v)
        c = tgt.coordinates(w, t - shift)
        if c is None:
            raise AssertionError("induced map sends a cycle outside the cycles")
        cols.append(c)
    nrows = len(tgt.basis(t - shift))
    return [[cols[j][i] for j in range(len(cols))] for i in range(nrows)], len(cols)


@dataclass
class OperatorAction:
    """maps[(j, i, t)] = k-matrix of x_j : (Tor_{i+2})_t -> (Tor_i)_{t - d_j}."""

    maps: dict
    degrees: list
    r: int

    def matrix(self, j, i, t):
        return self.maps[(j, i, t)]


def operator_action_on_tor(ops: OperatorSet, data: TorData, degree_cap: int | None = None,
                           spots=None) -> OperatorAction:
    cx = data.complex
    ring = ops.resolution.ring
    dj = ring.relation_degrees
    maps = {}
    top = len(data.modules) - 1
    if spots is None:
        spots = range(0, top - 1)
    cap = degree_cap if degree_cap is not None else _default_cap(data)
    for i in spots:
        src = data[i + 2]
        tgt = data[i]
        for j in range(ops.r):
            imgs = cx.chain_map(ops.t(j, i))
            for t in src.degree_range(cap):
                mat, _ = induced_matrix(src, tgt, imgs, cx.apply, t, dj[j])
                maps[(j, i, t)] = mat
    return OperatorAction(maps, sorted({k[2] for k in maps}), ops.r)


def _default_cap(data: TorData) -> int:
    hi = 0
    for m in data.modules:
        P = m.presentation
        if P.rank:
            hi = max(hi, max(P.target))
            if P.source:
                hi = max(hi, max(P.source))
    return hi + 4


def _matmul(A, B, F):
    if not A or not B:
        return []
    n, k, m = len(A), len(B), len(B[0])
    return [[sum_(F, (F.mul(A[i][l], B[l][j]) for l in range(k))) for j in range(m)]
            for i in range(n)]


def sum_(F, it):
    s = F.zero
    for x in it:
        s = F.add(s, x)
    return s


def operators_commute(action: OperatorAction, ring: RingSpec) -> bool:
    """x_j x_l = x_l x_j as maps Tor_{i+4} -> Tor_i, wherever both sides were computed."""
    F = ring.field
    dj = ring.relation_degrees
    for (l, i2, t) in action.maps:
        if i2 < 2:
            continue
        i = i2 - 2
        for j in range(l + 1, action.r):
            parts = (action.maps.get((j, i, t - dj[l])), action.maps.get((l, i2, t)),
                     action.maps.get((l, i, t - dj[j])), action.maps.get((j, i2, t)))
            if any(p is None for p in parts):
                continue
            if not _mat_equal(_matmul(parts[0], parts[1], F), _matmul(parts[2], parts[3], F)):
                return False
    return True


def _mat_equal(A, B) -> bool:
    if _is_zero_mat(A) and _is_zero_mat(B):
        return True
    return A == B


def _is_zero_mat(A) -> bool:
    return not A or all(not x for row in A for x in row)


@dataclass
class SurjectivityReport:
    found: bool
    combination: list | None
    onset: int | None
    tested: int
    field: str

    def as_dict(self):
        return {"found": self.found, "combination": self.combination, "onset": self.onset,
                "tested": self.tested, "field": self.field}


def _combinations(ring: RingSpec, coeffs):
    """Coefficient vectors over operators sharing one degree (keeps the map homogeneous)."""
    from itertools import product
    dj = ring.relation_degrees
    for d in sorted(set(dj)):
        idx = [j for j, x in enumerate(dj) if x == d]
        for vec in product((0,) + tuple(coeffs), repeat=len(idx)):
            if any(vec):
                a = [0] * len(dj)
                for j, c in zip(idx, vec):
                    a[j] = c
                yield d, a


def surjective_combination(data: TorData, ops: OperatorSet, coeffs=(1, 2, 3)) -> SurjectivityReport:
    """Look for sum a_j x_j mapping Tor_{i+2} onto Tor_i for all large computed i.

    The onset is the least i from which every computed spot is onto; a
    combination counts once at least two spots (one of each parity) pass.
    Over a finite field the search can miss, which is reported, not failed.
    """
    ring = ops.resolution.ring
    F = ring.field
    cx = data.complex
    top = len(data.modules) - 1
    cap = _default_cap(data)
    tested = 0
    for d, a in _combinations(ring, coeffs):
        tested += 1
        onto = []
        for i in range(0, top - 1):
            src, tgt = data[i + 2], data[i]
            if i >= ops.spots():
                # past a finite resolution the operators are zero
                onto.append(tgt.is_zero())
                continue
            imgs = [cx.chain_map(ops.t(j, i)) if a[j] else None for j in range(ops.r)]
            ok = True
            for s in tgt.degree_range(cap):
                n = len(tgt.basis(s))
                if not n:
                    continue
                total = None
                for j in range(ops.r):
                    if not a[j]:
                        continue
                    mat, _ = induced_matrix(src, tgt, imgs[j], cx.apply, s + d, d)
                    c = F(a[j])
                    mat = [[F.mul(c, x) for x in row] for row in mat]
                    total = mat if total is None else [[F.add(x, y) for x, y in zip(r1, r2)]
                                                       for r1, r2 in zip(total, mat)]
                if _rank(total, F) < n:
                    ok = False
                    break
            onto.append(ok)
        onset = None
        for i in range(len(onto) - 1, -1, -1):
            if not onto[i]:
                break
            onset = i
        if onset is not None and onset <= top - 3:
            return SurjectivityReport(True, [F.to_str(F(x)) for x in a], onset, tested,
                                      F.descriptor)
    return SurjectivityReport(False, None, None, tested, F.descriptor)


# ---------------------------------------------------------------------------
# Kirby / almost-Artinian check


@dataclass
class KirbyReport:
    applicable: bool
    onset: int | None
    passed: bool
    joint_kernel: list
    top: int
    reason: str = ""

    def as_dict(self):
        return {"applicable": self.applicable, "onset": self.onset, "passed": self.passed,
                "joint_kernel_dims": list(self.joint_kernel), "top": self.top,
                "reason": self.reason}


def _nullity(mats_stacked, ncols, F) -> int:
    rows = [row for M in mats_stacked for row in M]
    if not ncols:
        return 0
    if not rows:
        return ncols
    return ncols - _rank(rows, F)


def kirby_check(betti: BettiSequence, data: TorData, ops: OperatorSet) -> KirbyReport:
    """Least n with the joint kernel of the x_j vanishing on Tor_i for all computed i > n."""
    top = len(data.modules) - 1
    fR = betti.finite_length_index
    if fR is INF:
        return KirbyReport(False, None, False, [], top, "finite length index is infinite")
    ring = ops.resolution.ring
    F = ring.field
    dj = ring.relation_degrees
    cx = data.complex
    jk = []
    for i in range(top + 1):
        T = data[i]
        rep = T.report
        if rep.length is INF:
            jk.append(INF)
            continue
        total = 0
        for t in T.degree_range(0):
            n = len(T.basis(t))
            if not n:
                continue
            if i < 2:
                total += n
                continue
            stacked = []
            for j in range(ops.r):
                imgs = cx.chain_map(ops.t(j, i - 2))
                mat, _ = induced_matrix(T, data[i - 2], imgs, cx.apply, t, dj[j])
                stacked.append(mat)
            total += _nullity(stacked, n, F)
        jk.append(total)
    nz = [i for i, v in enumerate(jk) if v is INF or v]
    onset = max(nz) if nz else -1
    passed = onset <= top - 2
    return KirbyReport(True, onset, passed, ["inf" if v is INF else v for v in jk], top)


# ---------------------------------------------------------------------------
# change of rings Q/(f_1..f_{r-1}) -> R


def comparison_map(res_small: ResolutionPrefix, res_big: ResolutionPrefix, upto: int) -> list:
    """Chain map phi_i: F'_i -> F_i over R lifting the identity of M.

    ``res_small`` resolves M over R' (mapping onto R), ``res_big`` over R.
    """
    ring = res_big.ring
    F = ring.field
    # phi_0 via the shared original generators
    cov_s, cov_b = res_small.cover, res_big.cover
    phi = [[dict(cov_b.images[k]) for k in cov_s.kept]]
    for i in range(1, upto + 1):
        if not res_small.rank(i):
            phi.append([])
            continue
        tgt_prev = res_big.free(i - 1)
        gens = list(res_big.d(i)) + ring.relation_multiples(tgt_prev)
        tdeg = list(res_big.twists[i]) + [tgt_prev.vector_degree(v)
                                           for v in ring.relation_multiples(tgt_prev)]
        tb = TrackedBasis(gens, tgt_prev, tag_degrees=tdeg)
        nb = res_big.rank(i)
        cols = []
        for col in res_small.d(i):
            v = gbm.combine(gbm.split_vector(col, len(phi[i - 1])), phi[i - 1], F)
            a = tb.lift(v)
            if a is None:
                raise AssertionError("comparison map lift failed")
            w = {}
            for k in range(nb):
                for e, c in a[k].items():
                    w[(k, e)] = c
            cols.append(ring.reduce_vector(w))
        phi.append(cols)
    return phi


@dataclass
class ChangeOfRingsReport:
    passed: bool
    spots: list
    failures: list
    degree_cap: int

    def as_dict(self):
        return {"passed": self.passed, "spots": self.spots, "failures": self.failures,
                "degree_cap": self.degree_cap}


def change_of_rings_check(M: GradedPresentation, N: GradedPresentation, n: int,
                          data: TorData | None = None, ops: OperatorSet | None = None,
                          degree_cap: int | None = None) -> ChangeOfRingsReport:
    """Exactness of the Tor sequence for R' = Q/(f_1..f_{r-1}) -> R, spots 0..n.

    At each n and internal degree t: im(alpha_n) = ker(x_r on Tor_n) and
    dim ker(alpha_n)_t = dim coker(x_r: Tor_{n+1} -> Tor_{n-1})_{t - d_r}.
    """
    ring = M.ring
    r = ring.codim
    if r < 1:
        raise ValueError("change of rings needs r >= 1")
    d = ring.relation_degrees[-1]
    small = ring.drop_last()
    if data is None:
        data = tor(M, N, n + 1)
    if ops is None:
        ops = eisenbud_operators(data.resolution)
    Ns = minimal_presentation(data.N).restrict(small)
    Ms = M.restrict(small)
    res_s = resolve(Ms, n + 1)
    data_s = tor(Ms, Ns, n, res_s)
    phi = comparison_map(res_s, data.resolution, n)
    F = ring.field
    cx = data.complex
    cap = degree_cap if degree_cap is not None else max(_default_cap(data), _default_cap(data_s)) + d
    failures = []
    spots = []
    for k in range(n + 1):
        Tk = data[k]
        Tk_s = data_s[k]
        alpha_imgs = cx.chain_map(phi[k]) if k < len(phi) else []
        # Tor^{R'} is built from N restricted; its generators match N's
        degs = set(Tk.degree_range(cap)) | set(Tk_s.degree_range(cap))
        if k >= 1:
            degs |= {u + d for u in data[k - 1].degree_range(cap)}
        for t in sorted(degs):
            if t > cap:
                continue
            nT = len(Tk.basis(t))
            nTs = len(Tk_s.basis(t))
            if nTs:
                A, _ = induced_matrix(Tk_s, Tk, alpha_imgs, cx.apply, t, 0)
                rank_a = _rank(A, F)
            else:
                A, rank_a = [], 0
            if k >= 2 and nT:
                D, _ = induced_matrix(Tk, data[k - 2], cx.chain_map(ops.t(r - 1, k - 2)),
                                      cx.apply, t, d)
                rank_d = _rank(D, F)
                if A and A[0] and not _is_zero_mat(_matmul(D, A, F)):
                    failures.append({"n": k, "t": t, "what": "x_r after alpha is nonzero"})
            else:
                rank_d = 0
            if rank_a != nT - rank_d:
                failures.append({"n": k, "t": t, "what": "image of alpha differs from kernel of x_r",
                                 "rank_alpha": rank_a, "ker_x": nT - rank_d})
            # kernel of alpha vs cokernel of x_r: Tor_{k+1} -> Tor_{k-1} in degree t - d
            ker_a = nTs - rank_a
            if k >= 1:
                s = t - d
                tgt = data[k - 1]
                nt = len(tgt.basis(s))
                src = data[k + 1]
                if len(src.basis(t)) and nt:
                    D2, _ = induced_matrix(src, tgt, cx.chain_map(ops.t(r - 1, k - 1)),
                                           cx.apply, t, d)
                    coker = nt - _rank(D2, F)
                else:
                    coker = nt
            else:
                coker = 0
            if ker_a != coker:
                failures.append({"n": k, "t": t, "what": "kernel of alpha differs from cokernel of x_r",
                                 "ker_alpha": ker_a, "coker_x": coker})
            spots.append([k, t])
    return ChangeOfRingsReport(not failures, spots, failures, cap)


def two_presentation_check(M, N, n: int, s: int = 1) -> bool:
    """x_1..x_s agree on Tor whether read from Q/(f) or from R'/(f_1..f_s)."""
    data = tor(M, N, n)
    ring = M.ring
    r = ring.codim
    res = data.resolution
    a = eisenbud_operators(res)
    b = eisenbud_operators(res, lift_order=list(range(s, r)) + list(range(s)))
    act_a = operator_action_on_tor(a, data)
    act_b = operator_action_on_tor(b, data)
    for (j, i, t), mat in act_a.maps.items():
        if j < s and act_b.maps[(j, i, t)] != mat:
            return False
    return True
