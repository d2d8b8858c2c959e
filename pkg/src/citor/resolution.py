"""Minimal graded free resolutions, matrix factorizations, Eisenbud operators."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from . import groebner as gbm
from .groebner import FreeModule, buchberger
from .modules import GradedPresentation, MinimalPresentation, minimal_presentation
from .rings import NotRegularSequence, RingSpec, verify_regular_sequence  # noqa: F401


class HorizonError(ValueError):
    """The requested data needs a longer resolution than was computed."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class InfiniteResolution(HorizonError):
    pass


def default_horizon(ring: RingSpec) -> int:
    env = os.environ.get("CITOR_HORIZON")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"CITOR_HORIZON must be an integer, got {env!r}") from None
    return 2 * ring.dim_Q + 2 * ring.codim + 6


def _degree0_constant(v: dict, one) -> bool:
    return any(e == one for (_, e) in v)


@dataclass
class ResolutionPrefix:
    """``F_n -> ... -> F_1 -> F_0 (-> M)``; ``diffs[i]`` holds the columns of d_i."""

    ring: RingSpec
    module: GradedPresentation
    horizon: int
    twists: list
    diffs: list
    cover: MinimalPresentation
    complete: bool = False

    @property
    def free_modules(self) -> list[FreeModule]:
        return [FreeModule(self.ring.Q, t) for t in self.twists]

    def free(self, i: int) -> FreeModule:
        return FreeModule(self.ring.Q, self.twists[i] if i < len(self.twists) else ())

    def rank(self, i: int) -> int:
        if i < 0:
            return 0
        if i < len(self.twists):
            return len(self.twists[i])
        if self.complete:
            return 0
        raise HorizonError(f"rank of F_{i} beyond the computed horizon {self.horizon}",
                           required=i)

    def betti(self) -> list[int]:
        return [len(t) for t in self.twists]

    @property
    def length(self) -> int:
        """Projective dimension (only for complete resolutions)."""
        if not self.complete:
            raise HorizonError("resolution not known to terminate")
        nz = [i for i, t in enumerate(self.twists) if t]
        return max(nz) if nz else -1

    def d(self, i: int) -> list[dict]:
        """Columns of d_i: F_i -> F_{i-1}."""
        if i <= 0:
            return []
        if i < len(self.diffs):
            return self.diffs[i]
        if self.complete:
            return []
        raise HorizonError(f"d_{i} beyond the computed horizon {self.horizon}", required=i)

    def matrix(self, i: int):
        Q = self.ring.Q
        cols = self.d(i)
        rows = [[dict() for _ in cols] for _ in range(self.rank(i - 1))]
        for j, c in enumerate(cols):
            for (p, e), a in c.items():
                rows[p][j][e] = a
        return [[Q._raw(x) for x in row] for row in rows]

    # -- certificates -------------------------------------------------------------
    def check_dd_zero(self) -> bool:
        F = self.ring.field
        for i in range(2, len(self.diffs)):
            prev = [gbm.split_vector(c, self.rank(i - 1)) for c in self.d(i)]
            for comps in prev:
                v = gbm.combine(comps, self.d(i - 1), F)
                v = self.ring.reduce_vector(v)
                if v:
                    return False
        return True

    def check_minimal(self) -> bool:
        one = self.ring.Q.one_exp
        return not any(_degree0_constant(c, one) for i in range(1, len(self.diffs))
                       for c in self.d(i))

    def check_exact(self, upto: int | None = None) -> bool:
        """Homology of the prefix vanishes at F_1..F_{n-1} and H_0 = M."""
        from .modules import homology
        ring = self.ring
        top = len(self.twists) - 1 if upto is None else min(upto, len(self.twists) - 1)
        for i in range(1, top):
            free = self.free(i)
            if not free.rank:
                continue
            H = homology(ring, free, (), self.d(i), self.free(i - 1), (),
                         self.d(i + 1))
            if not H.presentation.is_zero():
                return False
        # H_0 has the Hilbert series of M
        h0 = GradedPresentation(ring, self.twists[0], [self.free(0).vector_degree(c) for c in self.d(1)],
                                self.d(1), check=False)
        return h0.hilbert.numerator == self.module.hilbert.numerator

    def export(self) -> list:
        """[(twists, matrix in the polynomial grammar)] for i = 0..n."""
        out = []
        for i, t in enumerate(self.twists):
            mat = [[str(x) for x in row] for row in self.matrix(i)] if i else []
            out.append({"twists": list(t), "matrix": mat})
        return out


def _next_syzygies(ring: RingSpec, src_free: FreeModule, tgt_free: FreeModule, cols):
    """Minimal generators of ker(src -> tgt) over R, modulo (f)·src."""
    from .modules import kernel_of_free_map
    if not cols:
        return []
    Z = kernel_of_free_map(ring, src_free.degrees, tgt_free, cols)
    back = ring.relation_multiples(src_free)
    Z = [z for z in Z if z]
    if not Z:
        return []
    gb = buchberger(Z, src_free, background=back)
    out = [ring.reduce_vector(Z[i]) for i in sorted(gb.minimal_inputs)]
    out.sort(key=lambda v: src_free.vector_degree(v))
    return out


def resolve(P: GradedPresentation, horizon: int | None = None) -> ResolutionPrefix:
    """Minimal graded free resolution of ``P`` over its ring, up to ``horizon``.

    ``horizon=None`` asks for the full resolution; over a singular ring this
    probes up to ``dim R + 1`` and rejects modules of infinite projective
    dimension.
    """
    ring = P.ring
    probe = False
    if horizon is None:
        if ring.codim == 0:
            target = ring.dim_Q + 1
        else:
            target = ring.dim + 1
            probe = True
    else:
        target = int(horizon)
        if target < 0:
            raise ValueError("horizon must be non-negative")
    mp = minimal_presentation(P)
    twists = [list(mp.target)]
    diffs = [None, [dict(c) for c in mp.columns]]
    if mp.columns:
        twists.append([FreeModule(ring.Q, mp.target).vector_degree(c) for c in mp.columns])
    else:
        twists.append([])
    i = 1
    while i < target and twists[i]:
        src = FreeModule(ring.Q, twists[i])
        tgt = FreeModule(ring.Q, twists[i - 1])
        syz = _next_syzygies(ring, src, tgt, diffs[i])
        diffs.append(syz)
        twists.append([src.vector_degree(v) for v in syz])
        i += 1
    complete = not twists[-1]
    if probe and not complete:
        raise InfiniteResolution("module has infinite projective dimension over the ring; "
                                 "pass a finite horizon", required=None)
    h = horizon if horizon is not None else len(twists) - 1
    return ResolutionPrefix(ring, P, h, twists, diffs, mp, complete=complete)


# ---------------------------------------------------------------------------
# matrix products over Q


def _mat_mul_cols(A_cols, B_cols, F):
    """Columns of A·B where A: F1 -> F0 and B: F2 -> F1 are given by columns."""
    out = []
    nA = len(A_cols)
    for b in B_cols:
        comps = gbm.split_vector(b, nA)
        out.append(gbm.combine(comps, A_cols, F))
    return out


def _columns_to_rows(cols, nrows):
    rows = [[dict() for _ in cols] for _ in range(nrows)]
    for j, c in enumerate(cols):
        for (p, e), a in c.items():
            rows[p][j][e] = a
    return rows


# ---------------------------------------------------------------------------
# Eisenbud operators


@dataclass
class OperatorSet:
    """``ops[j][i]``: columns of t_j: F_{i+2} -> F_i (internal degree -d_j)."""

    resolution: ResolutionPrefix
    ops: list
    method: str = "division"
    fallbacks: int = 0

    @property
    def r(self) -> int:
        return len(self.ops)

    def spots(self) -> int:
        return len(self.ops[0]) if self.ops else 0

    def t(self, j: int, i: int) -> list[dict]:
        return self.ops[j][i]

    def check_identity(self) -> bool:
        """d~_{i+1} d~_{i+2} == sum_j f_j t~_j exactly over Q."""
        res = self.resolution
        ring = res.ring
        F = ring.field
        for i in range(self.spots()):
            lhs = _mat_mul_cols(res.d(i + 1), res.d(i + 2), F)
            for k in range(len(lhs)):
                rhs: dict = {}
                for j, f in enumerate(ring.relations):
                    col = self.ops[j][i][k]
                    rhs = gbm.vec_add(rhs, gbm.poly_times_vector(f._t, col, F), F)
                if gbm.vec_add(lhs[k], rhs, F, scale=F.neg(F.one)):
                    return False
        return True


def _lift_entries(ring: RingSpec, v: dict, order=None, tb_cache={}):
    """Write each component of ``v`` as sum_j f_j q_j; returns list of vectors q_j."""
    r = ring.codim
    F = ring.field
    Q = ring.Q
    fs = list(ring.relations) if order is None else [ring.relations[j] for j in order]
    idx = list(range(r)) if order is None else list(order)
    qs = [dict() for _ in range(r)]
    fallback = 0
    for p, comp in enumerate(gbm.split_vector(v, (max(k[0] for k in v) + 1) if v else 0)):
        if not comp:
            continue
        poly = Q._raw(comp)
        if order is None:
            quots, rem = Q.divide(poly, fs)
        else:
            rem = poly
        if order is not None or rem:
            fallback += 1
            key = (Q, tuple(fs))
            tb = tb_cache.get(key)
            if tb is None:
                free1 = FreeModule(Q, (0,))
                tb = gbm.TrackedBasis([{(0, e): c for e, c in f._t.items()} for f in fs], free1)
                tb_cache[key] = tb
            coeffs = tb.lift({(0, e): c for e, c in comp.items()})
            if coeffs is None:
                raise AssertionError("operator lift failed: entry not in (f)")
            quots = [Q._raw(c) for c in coeffs]
        for j, q in zip(idx, quots):
            for e, c in q._t.items():
                qs[j][(p, e)] = F.add(qs[j].get((p, e), F.zero), c)
    return qs, fallback


def eisenbud_operators(res: ResolutionPrefix, lift_order=None) -> OperatorSet:
    """Operators t_j with d~^2 = sum f_j t~_j.

    By default each entry of d~^2 is divided by (f_1..f_r) in sequence order;
    ``lift_order`` instead lifts through a Gröbner basis of the relations
    listed in that order (used for the two-presentation comparison).
    """
    ring = res.ring
    F = ring.field
    r = ring.codim
    ops = [[] for _ in range(r)]
    n_spots = max(0, len(res.diffs) - 2)
    fallbacks = 0
    for i in range(n_spots):
        prod = _mat_mul_cols(res.d(i + 1), res.d(i + 2), F)
        per_j = [[] for _ in range(r)]
        for col in prod:
            qs, fb = _lift_entries(ring, col, lift_order)
            fallbacks += fb
            for j in range(r):
                per_j[j].append(qs[j])
        for j in range(r):
            ops[j].append(per_j[j])
    method = "division" if lift_order is None else "groebner-lift"
    opset = OperatorSet(res, ops, method, fallbacks)
    if not opset.check_identity():
        raise AssertionError("operator identity failed")
    return opset


# ---------------------------------------------------------------------------
# matrix factorizations (r = 1)


def _const_matrix(cols, nrows, one, F):
    M = [[F.zero] * len(cols) for _ in range(nrows)]
    for j, c in enumerate(cols):
        for (p, e), a in c.items():
            if e == one:
                M[p][j] = a
    return M


def _invert_const(M, F):
    n = len(M)
    A = [list(row) + [F.one if i == j else F.zero for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col]), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        c = F.inv(A[col][col])
        A[col] = [F.mul(x, c) for x in A[col]]
        for i in range(n):
            if i != col and A[i][col]:
                a = A[i][col]
                A[i] = [F.sub(x, F.mul(a, y)) for x, y in zip(A[i], A[col])]
    return [row[n:] for row in A]


def _const_cols(M, one):
    n = len(M)
    cols = []
    for j in range(len(M[0]) if M else 0):
        cols.append({(i, one): M[i][j] for i in range(n) if M[i][j]})
    return cols


def invert_graded(cols, nrows, ring: RingSpec):
    """Inverse over Q of a square degree-preserving matrix, or None."""
    F = ring.field
    one = ring.Q.one_exp
    if len(cols) != nrows:
        return None
    if nrows == 0:
        return []
    T0 = _const_matrix(cols, nrows, one, F)
    T0inv = _invert_const(T0, F)
    if T0inv is None:
        return None
    T0i = _const_cols(T0inv, one)
    # N = T - T0 ; X = T0^{-1} N is nilpotent, T^{-1} = sum (-X)^k T0^{-1}
    Ncols = [{m: a for m, a in c.items() if m[1] != one} for c in cols]
    X = _mat_mul_cols(T0i, Ncols, F)
    negX = [gbm.vec_scale(c, F.neg(F.one), F) for c in X]
    term = T0i
    total = [dict(c) for c in T0i]
    for _ in range(4 * nrows * (1 + max(ring.Q.weights)) + 64):
        term = _mat_mul_cols(negX, term, F)
        if not any(term):
            break
        total = [gbm.vec_add(a, b, F) for a, b in zip(total, term)]
    else:
        raise AssertionError("Neumann series did not terminate")
    return total


@dataclass
class MatrixFactorization:
    A: list  # columns
    B: list
    onset: int | None
    size: int
    verified: bool
    ring: RingSpec = field(repr=False, default=None)

    def rows(self, which="A"):
        Q = self.ring.Q
        cols = self.A if which == "A" else self.B
        return [[Q._raw(x) for x in row] for row in _columns_to_rows(cols, self.size)]

    def as_dict(self):
        if self.size == 0:
            return {"onset": self.onset, "size": 0, "A": [], "B": [], "verified": self.verified}
        return {
            "onset": self.onset,
            "size": self.size,
            "A": [[str(x) for x in row] for row in self.rows("A")],
            "B": [[str(x) for x in row] for row in self.rows("B")],
            "verified": self.verified,
        }


def matrix_factorization(res: ResolutionPrefix, ops: OperatorSet | None = None) -> MatrixFactorization:
    """(A, B) with AB = BA = f·I from the periodic tail of a hypersurface resolution."""
    ring = res.ring
    if ring.codim != 1:
        raise ValueError("matrix factorizations need a hypersurface (r = 1)")
    if res.complete:
        return MatrixFactorization([], [], None, 0, True, ring)
    if ops is None:
        ops = eisenbud_operators(res)
    F = ring.field
    f = ring.relations[0]
    for i in range(ops.spots()):
        t = ops.t(0, i)
        n = res.rank(i)
        if len(t) != n or res.rank(i + 1) != n:
            continue
        inv = invert_graded(t, n, ring)
        if inv is None:
            continue
        A = res.d(i + 1)
        Bc = _mat_mul_cols(res.d(i + 2), inv, F)
        ok = _is_f_identity(_mat_mul_cols(A, Bc, F), f, n, F) and \
            _is_f_identity(_mat_mul_cols(Bc, A, F), f, n, F)
        return MatrixFactorization(A, Bc, i, n, ok, ring)
    raise HorizonError("periodicity not reached within the horizon; increase it",
                       required=res.horizon + 2)


def _is_f_identity(cols, f, n, F) -> bool:
    if len(cols) != n:
        return False
    for j, c in enumerate(cols):
        want = {(j, e): a for e, a in f._t.items()}
        if gbm.vec_add(c, want, F, scale=F.neg(F.one)):
            return False
    return True


def is_two_periodic_from(res: ResolutionPrefix, start: int) -> bool:
    """Twists satisfy F_{i+2} = F_i(-d) for i >= start (r = 1)."""
    d = res.ring.relation_degrees[0]
    for i in range(start, len(res.twists) - 2):
        if sorted(res.twists[i + 2]) != sorted(x + d for x in res.twists[i]):
            return False
    return True

