"""Per-entry analysis: cached pipelines, report assembly and the check suites.

Every check returns records ``{suite, check, subject, status, detail}`` with
status ``pass``, ``fail`` or ``n/a``.  Reports contain only exact integers,
rationals as ``[num, den]`` and the string ``"inf"``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import asymptotics as asy
from . import groebner as gbm
from .modules import (GradedPresentation, NotTorsionFree, is_free, length_report, mu,
                      pd_Q, pushforward, tensor, verify_short_exact)
from .pairs import (betti_from_homology, change_of_rings_check, ext, kirby_check,
                    operator_action_on_tor, operators_commute, surjective_combination, tor,
                    two_presentation_check)
from .resolution import (HorizonError, default_horizon, eisenbud_operators,
                         is_two_periodic_from, matrix_factorization, resolve)
from .scalar import INF, rational_to_json

SUITES = ("poly", "groebner", "modules", "resolution", "operators", "tor", "kirby",
          "change_of_rings", "fits", "eta", "biadditivity", "complexity", "rigidity",
          "dimension")


def _j(x):
    """JSON-ready exact value."""
    if x is INF:
        return "inf"
    if isinstance(x, Fraction):
        return rational_to_json(x)
    if isinstance(x, (list, tuple)):
        return [_j(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _j(v) for k, v in x.items()}
    return x


def _status(ok) -> str:
    if ok is None:
        return "n/a"
    return "pass" if ok else "fail"


class Entry:
    """A loaded problem with memoized resolutions, Tor/Ext data and fits."""

    def __init__(self, problem, horizon: int | None = None):
        self.problem = problem
        self.ring = problem.ring
        self.name = problem.name
        if horizon is not None:
            self.horizon = horizon
        elif problem.horizon is not None:
            self.horizon = problem.horizon
        else:
            self.horizon = default_horizon(self.ring)
        self._cache = {}

    def _memo(self, key, fn):
        if key not in self._cache:
            try:
                self._cache[key] = ("ok", fn())
            except (asy.FitError, HorizonError, ValueError) as exc:
                self._cache[key] = ("err", exc)
        tag, val = self._cache[key]
        if tag == "err":
            raise val
        return val

    def module(self, name) -> GradedPresentation:
        return self.problem.modules[name]

    # -- resolutions -----------------------------------------------------------
    def resolution(self, name):
        return self._memo(("res", name), lambda: resolve(self.module(name), self.horizon + 1))

    def operators(self, name):
        return self._memo(("ops", name), lambda: eisenbud_operators(self.resolution(name)))

    def module_cx(self, name):
        """Complexity of a module: growth of its Betti numbers."""
        def run():
            ranks = self.resolution(name).betti()[: self.horizon + 1]
            ranks += [0] * (self.horizon + 1 - len(ranks))
            return asy.fit_sequence(ranks, self.ring.codim, self.ring.dim_Q)
        return self._memo(("cx", name), run)

    # -- pairs -------------------------------------------------------------------
    def tor(self, m, n):
        return self._memo(("tor", m, n), lambda: tor(self.module(m), self.module(n), self.horizon,
                                                     self.resolution(m)))

    def ext(self, m, n):
        return self._memo(("ext", m, n), lambda: ext(self.module(m), self.module(n), self.horizon,
                                                     self.resolution(m)))

    def betti(self, m, n):
        return self._memo(("betti", m, n), lambda: betti_from_homology(self.tor(m, n), (m, n)))

    def fit(self, m, n):
        def run():
            B = self.betti(m, n)
            return asy.fit_series(B, self.ring.codim, self.ring.dim_Q)
        return self._memo(("fit", m, n), run)

    def finite_tensor(self, m, n) -> bool:
        return self.tor(m, n)[0].report.length is not INF

    def eta(self, m, n, e):
        return asy.eta(self.fit(m, n), e)

    def surjectivity(self, m, n):
        return self._memo(("surj", m, n),
                          lambda: surjective_combination(self.tor(m, n), self.operators(m)))

    def small_ring_betti(self, m, n, horizon=None):
        """Betti data over R' = Q/(f_1..f_{r-1}) of the restricted modules."""
        small = self.ring.drop_last()
        h = horizon or self.horizon
        def run():
            Ms = self.module(m).restrict(small)
            Ns = self.module(n).restrict(small)
            return betti_from_homology(tor(Ms, Ns, h), (m, n))
        return self._memo(("small", m, n, h), run)


# ---------------------------------------------------------------------------
# report sections


def module_report(E: Entry, name: str) -> dict:
    P = E.module(name)
    rep = length_report(P)
    out = {"presentation": P.describe(), "mu": mu(P), "dimension": rep.dimension,
           "length": _j(rep.length), "adjusted_length": rep.adjusted_length,
           "hilbert_numerator": {str(k): v for k, v in sorted(P.hilbert.numerator.items())}}
    res = E.resolution(name)
    out["betti_numbers"] = res.betti()
    out["resolution_complete"] = res.complete
    out["pd_Q"] = pd_Q(P) if not P.is_zero() else -1
    try:
        out["cx"] = max(E.module_cx(name).c, E.module_cx(name).d)
    except asy.FitError as exc:
        out["cx"] = {"status": "failed", "reason": str(exc)}
    if E.ring.codim == 1 and not res.complete:
        try:
            out["matrix_factorization"] = matrix_factorization(res, E.operators(name)).as_dict()
        except HorizonError as exc:
            out["matrix_factorization"] = {"status": "failed", "reason": str(exc)}
    return out


def pair_report(E: Entry, m: str, n: str) -> dict:
    r = E.ring.codim
    B = E.betti(m, n)
    out = {"modules": [m, n], "betti": B.as_dict()}
    X = E.ext(m, n)
    out["ext"] = {"lengths": _j(X.lengths()), "mu": [x.mu for x in X.modules]}
    fR = B.finite_length_index
    out["finite_length_index"] = _j(fR)
    try:
        fit = E.fit(m, n)
    except asy.FitError as exc:
        out["fit"] = {"status": "n/a" if fR is INF else "failed", "reason": str(exc)}
        fit = None
    else:
        out["fit"] = fit.as_dict()
        out["eta"] = {str(e): asy.eta(fit, e).as_dict() for e in range(0, r + 1)}
        if r == 1:
            try:
                out["theta"] = asy.theta(B, fit, E.ring.dim_Q).as_dict()
            except asy.FitError as exc:
                out["theta"] = {"status": "failed", "reason": str(exc)}
    chi = {}
    if E.finite_tensor(m, n):
        if r == 0:
            chi["serre"] = asy.serre_chi(B.lengths)
        if fit is not None:
            chi["gulliksen"] = asy.gulliksen_chi(fit, r).as_dict()
    out["chi"] = chi
    cxr = _complexity(E, m, n, fit)
    out["complexity"] = cxr.as_dict() if cxr else None
    if fR is not INF and r >= 1:
        out["kirby"] = kirby_check(B, E.tor(m, n), E.operators(m)).as_dict()
        out["operator_surjectivity"] = E.surjectivity(m, n).as_dict()
    return out


def _complexity(E, m, n, fit):
    key = ("cxr", m, n)
    if key in E._cache:
        return E._cache[key][1]
    B = E.betti(m, n)
    X = E.ext(m, n)
    r = E.ring.codim
    try:
        cxm = E.module_cx(m)
        cxn = E.module_cx(n)
        cx_M, cx_N = max(cxm.c, cxm.d), max(cxn.c, cxn.d)
    except asy.FitError:
        cx_M = cx_N = None
    rep = None
    try:
        if fit is not None:
            rep = asy.complexities(B.betas, B.mus, [x.mu for x in X.modules], r, E.ring.dim_Q,
                                   cx_M, cx_N, fit=fit)
        else:
            tcx, ct = asy.complexity_of(B.mus, r, E.ring.dim_Q)
            cx, ce = asy.complexity_of([x.mu for x in X.modules], r, E.ring.dim_Q)
            bound = min(cx_M, cx_N) if cx_M is not None else None
            rep = asy.ComplexityReport(None, tcx, cx, None, {"tcx": ct, "cx": ce}, None,
                                       bound, None if bound is None else tcx <= bound)
    except asy.FitError:
        rep = None
    E._cache[key] = ("ok", rep)
    return rep


def sequence_report(E: Entry, seq) -> dict:
    ex = verify_short_exact(seq.alpha, seq.beta)
    out = {"modules": list(seq.modules), "side": seq.side, "exact": ex.as_dict(), "eta": {}}
    for N in seq.against:
        row = {}
        for idx, M in enumerate(seq.modules):
            m, n = (M, N) if seq.side == "first" else (N, M)
            try:
                fit = E.fit(m, n)
            except asy.FitError:
                row[M] = None
                continue
            row[M] = {str(e): asy.eta(fit, e).as_dict() for e in range(0, E.ring.codim + 1)}
        out["eta"][N] = row
    return out


# ---------------------------------------------------------------------------
# checks


def _rec(suite, check, subject, status, detail=None):
    return {"suite": suite, "check": check, "subject": subject, "status": status,
            "detail": _j(detail) if detail is not None else None}


def _rand_poly(rng: random.Random, Q, deg: int, terms: int = 3):
    mons = []
    for d in range(deg + 1):
        mons += [e for e in _mons(Q.weights, d)]
    tdict = {}
    for _ in range(terms):
        e = rng.choice(mons)
        tdict[e] = Q.field(Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
    return Q._raw({e: c for e, c in tdict.items() if c})


def _mons(weights, d):
    from .oracle import _monomials
    return _monomials(weights, d)


def checks_poly(E: Entry):
    Q = E.ring.Q
    rng = random.Random(1729)
    out = []
    ok = True
    for _ in range(15):
        a, b, c = (_rand_poly(rng, Q, 3) for _ in range(3))
        if not ((a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c and a * b == b * a):
            ok = False
    out.append(_rec("poly", "ring_axioms", E.name, _status(ok)))
    ok = True
    for f in list(E.ring.relations) + [Q(g) for g in Q.names]:
        for _ in range(3):
            g = _rand_poly(rng, Q, 4, 4)
            divs = [d for d in (list(E.ring.relations) + Q.gens()) if d]
            qs, rem = Q.divide(g, divs)
            total = rem
            for qq, d in zip(qs, divs):
                total = total + qq * d
            ok &= total == g
    out.append(_rec("poly", "division_identity", E.name, _status(ok)))
    ok = True
    for _ in range(10):
        g = _rand_poly(rng, Q, 3, 4)
        ok &= Q(str(g)) == g
    for f in E.ring.relations:
        ok &= Q(str(f)) == f
    out.append(_rec("poly", "string_roundtrip", E.name, _status(ok)))
    return out


def checks_groebner(E: Entry):
    out = []
    rng = random.Random(4104)
    for name, P in sorted(E.problem.modules.items()):
        gb = P.gb
        out.append(_rec("groebner", "s_pairs_reduce_to_zero", name,
                        _status(gbm.s_pairs_reduce_to_zero(gb))))
        rep = length_report(P)
        if rep.length is not INF and E.ring.dim_Q <= 3:
            init = gb.initial_ideals()
            count = hsum = 0
            # a finite-length Hilbert series is a polynomial of degree <= deg numerator
            top = max(P.hilbert.numerator)
            for d in range(min(P.target), top + 1):
                for pos, a in enumerate(P.target):
                    for e in _mons(E.ring.Q.weights, d - a):
                        if not any(all(x <= y for x, y in zip(le, e)) for le in init.get(pos, [])):
                            count += 1
                hsum += P.hilbert.hilbert_function(d)
            ok = count == rep.length == hsum
            out.append(_rec("groebner", "hilbert_standard_monomials", name, _status(ok),
                            {"length": rep.length, "standard_monomials": count}))
        # normal form: idempotent and linear
        F = E.ring.field
        vs = []
        for _ in range(3):
            pos = rng.randrange(P.rank) if P.rank else None
            if pos is None:
                break
            d = P.target[pos] + rng.randint(0, 3)
            deg = d - P.target[pos]
            vec = {}
            for e in _mons(E.ring.Q.weights, deg):
                if rng.random() < 0.6:
                    vec[(pos, e)] = F(rng.randint(-3, 3))
            vs.append({k: c for k, c in vec.items() if c})
        ok = True
        for v in vs:
            nf = P.normal_form(v)
            ok &= P.normal_form(nf) == nf
        if len(vs) >= 2:
            u, v = vs[0], vs[1]
            a, b = F(2), F(-3)
            lhs = P.normal_form(gbm.vec_add(gbm.vec_scale(u, a, F), gbm.vec_scale(v, b, F), F))
            rhs = gbm.vec_add(gbm.vec_scale(P.normal_form(u), a, F),
                              gbm.vec_scale(P.normal_form(v), b, F), F)
            ok &= (lhs == rhs) or not _same_degree(P, u, v)
        out.append(_rec("groebner", "normal_form_idempotent_linear", name, _status(ok)))
        if P.columns:
            cols = [c for c in P.columns if c]
            _, syz, _ = gbm.syzygies(cols, P.free, minimal=True)
            ok = all(not gbm.combine(gbm.split_vector(s, len(cols)), cols, F) for s in syz)
            out.append(_rec("groebner", "syzygies_sound", name, _status(ok), {"count": len(syz)}))
    return out


def _same_degree(P, u, v):
    return P.free.vector_degree(u) == P.free.vector_degree(v)


def _depth_by_ext(P: GradedPresentation):
    """depth = least i with Ext^i_Q(k, M) != 0, computed over the polynomial ring."""
    Qring = P.ring.ambient()
    k = GradedPresentation.residue_field(Qring)
    Mq = P.restrict(Qring)
    X = ext(k, Mq, Qring.dim_Q)
    for i, m in enumerate(X.modules):
        if not m.sq.presentation.is_zero():
            return i
    return INF


def checks_modules(E: Entry):
    out = []
    R = E.ring
    for name, P in sorted(E.problem.modules.items()):
        rep = length_report(P)
        ok = rep.adjusted_length == (rep.length if rep.dimension == 0 else 0)
        out.append(_rec("modules", "adjusted_length", name, _status(ok)))
        if rep.length is not INF and not P.is_zero():
            ann = gbm.annihilator(P.free, P.q_relations())
            lRI = gbm.hilbert(ann).length()
            m_ = mu(P)
            ok = m_ * lRI >= rep.length >= m_
            out.append(_rec("modules", "length_bounds", name, _status(ok),
                            {"mu": m_, "length": rep.length, "length_R_mod_I": lRI}))
        if not P.is_zero():
            dep = _depth_by_ext(P)
            pd = pd_Q(P)
            out.append(_rec("modules", "auslander_buchsbaum", name,
                            _status(dep + pd == R.dim_Q), {"depth": dep, "pd_Q": pd}))
        try:
            pf = pushforward(P)
        except NotTorsionFree:
            out.append(_rec("modules", "pushforward", name, "n/a", "module has torsion"))
        else:
            from .modules import depth
            d0, d1 = depth(P), depth(pf.M1)
            ok = pf.exact and (is_free(P) == is_free(pf.M1)) and (
                d1 is INF or d0 is INF or d1 >= d0 - 1)
            out.append(_rec("modules", "pushforward", name, _status(ok),
                            {"lambda": pf.lam, "depth_M": d0, "depth_M1": d1}))
    for pname, (m, n) in sorted(E.problem.pairs.items()):
        a = tensor(E.module(m), E.module(n)).hilbert.numerator
        b = tensor(E.module(n), E.module(m)).hilbert.numerator
        out.append(_rec("modules", "tensor_symmetry", pname, _status(a == b)))
    return out


def checks_resolution(E: Entry):
    out = []
    R = E.ring
    for name in sorted(E.problem.modules):
        res = E.resolution(name)
        out.append(_rec("resolution", "dd_zero", name, _status(res.check_dd_zero())))
        out.append(_rec("resolution", "minimal", name, _status(res.check_minimal())))
        out.append(_rec("resolution", "exact", name, _status(res.check_exact())))
        if R.codim == 1:
            if res.complete:
                out.append(_rec("resolution", "periodicity", name, "n/a", "finite resolution"))
                continue
            per = is_two_periodic_from(res, R.dim_Q + 1)
            try:
                mf = matrix_factorization(res, E.operators(name))
                ok = per and mf.verified
                detail = {"onset": mf.onset, "size": mf.size}
            except HorizonError as exc:
                ok, detail = False, str(exc)
            out.append(_rec("resolution", "periodicity", name, _status(ok), detail))
    return out


def checks_operators(E: Entry):
    out = []
    R = E.ring
    for name in sorted(E.problem.modules):
        if R.codim == 0:
            continue
        ops = E.operators(name)
        out.append(_rec("operators", "operator_identity", name, _status(ops.check_identity()),
                        {"fallbacks": ops.fallbacks}))
    if R.codim >= 2:
        for pname, (m, n) in sorted(E.problem.pairs.items()):
            top = min(E.horizon, 6)
            data = E.tor(m, n)
            act = operator_action_on_tor(E.operators(m), data, spots=range(0, top - 1))
            out.append(_rec("operators", "operators_commute", pname,
                            _status(operators_commute(act, R))))
            ok = two_presentation_check(E.module(m), E.module(n), top)
            out.append(_rec("operators", "two_presentations", pname, _status(ok)))
    return out


def checks_tor(E: Entry):
    out = []
    R = E.ring
    for pname, (m, n) in sorted(E.problem.pairs.items()):
        a = E.tor(m, n).lengths()
        b = E.tor(n, m).lengths()
        out.append(_rec("tor", "symmetry", pname, _status(a == b)))
        if R.codim == 1:
            s = R.dim_Q
            ok = all(a[i] == a[i + 2] for i in range(s, len(a) - 2))
            out.append(_rec("tor", "two_periodic_lengths", pname, _status(ok), {"from": s}))
            anns = []
            data = E.tor(m, n)
            for i in range(s, len(a)):
                mod = data[i].presentation
                if mod.is_zero():
                    anns.append(("1",))
                    continue
                g = gbm.annihilator(mod.free, mod.q_relations())
                anns.append(tuple(sorted(str(p) for p in g.as_polynomials())))
            ok = all(anns[i] == anns[i + 2] for i in range(len(anns) - 2))
            out.append(_rec("tor", "annihilator_periodicity", pname, _status(ok)))
        X = E.ext(m, n)
        start = R.dim_Q + R.codim + 1
        ext_zero = all(x.sq.presentation.is_zero() for x in X.modules[start:])
        tor_zero = all(t.sq.presentation.is_zero() for t in E.tor(m, n).modules[start:])
        ok = ext_zero == tor_zero if start < len(X.modules) else None
        out.append(_rec("tor", "ext_tor_vanishing", pname, _status(ok),
                        {"ext_vanish": ext_zero, "tor_vanish": tor_zero, "from": start}))
        # mu <= l <= l(R/I) mu when a single m-primary I kills the Tor's
        Mm, Nn = E.module(m), E.module(n)
        if not Mm.is_zero() and not Nn.is_zero():
            annM = gbm.annihilator(Mm.free, Mm.q_relations()).as_polynomials()
            annN = gbm.annihilator(Nn.free, Nn.q_relations()).as_polynomials()
            I = gbm.ideal_basis(list(annM) + list(annN), R.Q)
            lRI = gbm.hilbert(I).length()
            if lRI is not None:
                B = E.betti(m, n)
                ok = all(rec.length is INF or rec.mu <= rec.length <= lRI * rec.mu
                         for rec in B.records)
                out.append(_rec("tor", "length_bounds", pname, _status(ok),
                                {"length_R_mod_I": lRI}))
    return out


def checks_kirby(E: Entry):
    out = []
    if E.ring.codim == 0:
        return out
    for pname, (m, n) in sorted(E.problem.pairs.items()):
        B = E.betti(m, n)
        rep = kirby_check(B, E.tor(m, n), E.operators(m))
        st = _status(rep.passed) if rep.applicable else "n/a"
        out.append(_rec("kirby", "joint_kernel_vanishes", pname, st,
                        {"onset": rep.onset, "reason": rep.reason or None}))
        if rep.applicable:
            # informational: a miss (possible over a finite field) is never a failure
            sr = E.surjectivity(m, n)
            out.append(_rec("kirby", "surjective_combination", pname,
                            "pass" if sr.found else "n/a", sr.as_dict()))
    return out


def _serre_over_Q(E, m, n):
    Qr = E.ring.ambient()
    Mq = E.module(m).restrict(Qr)
    Nq = E.module(n).restrict(Qr)
    return asy.serre_chi(tor(Mq, Nq, Qr.dim_Q).lengths())


def checks_change_of_rings(E: Entry):
    out = []
    R = E.ring
    r = R.codim
    if r == 0:
        return out
    for pname, (m, n) in sorted(E.problem.pairs.items()):
        top = min(E.horizon - 1, 6)
        rep = change_of_rings_check(E.module(m), E.module(n), top, E.tor(m, n), E.operators(m))
        out.append(_rec("change_of_rings", "long_exact_sequence", pname, _status(rep.passed),
                        {"spots": len(rep.spots), "failures": rep.failures[:3]}))
        try:
            fit = E.fit(m, n)
        except asy.FitError:
            out.append(_rec("change_of_rings", "eta_relation", pname, "n/a", "no fit"))
            continue
        if r == 1:
            if not E.finite_tensor(m, n):
                out.append(_rec("change_of_rings", "eta_relation", pname, "n/a",
                                "tensor has infinite length"))
                continue
            chi = _serre_over_Q(E, m, n)
            e1 = asy.eta(fit, 1).value
            out.append(_rec("change_of_rings", "eta_relation", pname,
                            _status(e1 == Fraction(chi, 2)), {"eta_1": e1, "chi_Q": chi}))
        else:
            Bs = E.small_ring_betti(m, n)
            if Bs.finite_length_index is INF:
                out.append(_rec("change_of_rings", "eta_relation", pname, "n/a",
                                "infinite finite-length index over the smaller ring"))
                continue
            try:
                fs = asy.fit_series(Bs, r - 1, R.dim_Q)
            except asy.FitError as exc:
                out.append(_rec("change_of_rings", "eta_relation", pname, "fail", str(exc)))
                continue
            vals = {}
            ok = True
            for e in range(max(2, fit.c, fs.c + 1), r + 1):
                a = asy.eta(fit, e).value
                b = asy.eta(fs, e - 1).value / (2 * e)
                vals[str(e)] = [a, b]
                ok &= a == b
            st = _status(ok) if vals else "n/a"
            out.append(_rec("change_of_rings", "eta_relation", pname, st, vals))
    return out


def checks_fits(E: Entry):
    out = []
    r = E.ring.codim
    for pname, (m, n) in sorted(E.problem.pairs.items()):
        B = E.betti(m, n)
        try:
            fit = E.fit(m, n)
        except asy.FitError as exc:
            st = "n/a" if B.finite_length_index is INF else "fail"
            out.append(_rec("fits", "fit_exists", pname, st, str(exc)))
            continue
        out.append(_rec("fits", "faithful", pname, _status(fit.faithful()),
                        {"confidence": fit.confidence, "window": fit.window}))
        bad = asy.check_fit_invariants(fit, r)
        out.append(_rec("fits", "invariants", pname, _status(not bad), bad or None))
        g = asy.growth_degree(fit.data, fit.onset)
        out.append(_rec("fits", "c_equals_growth", pname, _status(g == fit.c),
                        {"c": fit.c, "growth": g}))
    return out


def checks_eta(E: Entry):
    out = []
    r = E.ring.codim
    for pname, (m, n) in sorted(E.problem.pairs.items()):
        try:
            fit = E.fit(m, n)
        except asy.FitError:
            continue
        ev = asy.eta(fit, r)
        out.append(_rec("eta", "limit_cross_check", pname, _status(ev.limit_consistent)))
        if r == 1:
            try:
                th = asy.theta(E.betti(m, n), fit, E.ring.dim_Q)
                ok = th.periodic and th.equals_two_eta
                out.append(_rec("eta", "theta_equals_two_eta", pname, _status(ok),
                                {"theta": th.value, "eta_1": asy.eta(fit, 1).value}))
            except asy.FitError as exc:
                out.append(_rec("eta", "theta_equals_two_eta", pname, "fail", str(exc)))
        if E.finite_tensor(m, n):
            g = asy.gulliksen_chi(fit, r)
            out.append(_rec("eta", "gulliksen", pname, _status(g.consistent),
                            {"chi": g.value, "eta_r": g.eta_r}))
            if r == 0:
                s = asy.serre_chi(E.betti(m, n).lengths)
                out.append(_rec("eta", "eta0_equals_serre", pname,
                                _status(asy.eta(fit, 0).value == s), {"chi": s}))
    return out


def checks_biadditivity(E: Entry):
    out = []
    r = E.ring.codim
    for sname, seq in sorted(E.problem.sequences.items()):
        ex = verify_short_exact(seq.alpha, seq.beta)
        out.append(_rec("biadditivity", "sequence_exact", sname, _status(ex.exact), ex.failures or None))
        for N in seq.against:
            pairs = [(M, N) if seq.side == "first" else (N, M) for M in seq.modules]
            try:
                fits = [E.fit(a, b) for a, b in pairs]
            except asy.FitError:
                out.append(_rec("biadditivity", "eta_additive", f"{sname}/{N}", "n/a", "no fit"))
                continue
            lo = max(max(f.c for f in fits), 1)
            if all(E.finite_tensor(a, b) for a, b in pairs):
                lo = max(f.c for f in fits)
            ok = True
            vals = {}
            for e in range(lo, max(r, lo) + 1):
                v = [asy.eta(f, e).value for f in fits]
                vals[str(e)] = v
                ok &= v[1] == v[0] + v[2]
            out.append(_rec("biadditivity", "eta_additive", f"{sname}/{N}", _status(ok), vals))
    return out


def checks_complexity(E: Entry):
    out = []
    for pname, (m, n) in sorted(E.problem.pairs.items()):
        try:
            fit = E.fit(m, n)
        except asy.FitError:
            fit = None
        rep = _complexity(E, m, n, fit)
        if rep is None:
            out.append(_rec("complexity", "fits_available", pname, "fail"))
            continue
        if fit is not None:
            ok = rep.equal and rep.lcx_growth == rep.lcx
            out.append(_rec("complexity", "lcx_tcx_cx_equal", pname, _status(ok),
                            {"lcx": rep.lcx, "tcx": rep.tcx, "cx": rep.cx}))
        else:
            out.append(_rec("complexity", "lcx_tcx_cx_equal", pname, "n/a",
                            "finite length index is infinite"))
        out.append(_rec("complexity", "tcx_bound", pname, _status(rep.bound_ok),
                        {"tcx": rep.tcx, "min_cx": rep.bound}))
    return out


def checks_rigidity(E: Entry):
    out = []
    r = E.ring.codim
    if r == 0:
        return out
    from .modules import depth
    for pname, (m, n) in sorted(E.problem.pairs.items()):
        try:
            fit = E.fit(m, n)
        except asy.FitError:
            out.append(_rec("rigidity", "windows", pname, "n/a", "no fit"))
            continue
        data = E.tor(m, n)
        zeros = [t.sq.presentation.is_zero() for t in data.modules]
        eta_r = asy.eta(fit, r).value
        d_M = depth(E.module(m))
        rep = asy.rigidity_check(zeros, r, eta_r, E.ring.depth, d_M,
                                 E.betti(m, n).finite_length_index)
        st = _status(not rep.critical) if rep.predicted else "n/a"
        out.append(_rec("rigidity", "windows", pname, st,
                        {"eta_r": eta_r, "windows": rep.windows, "violations": rep.violations}))
    return out


def checks_dimension(E: Entry):
    out = []
    R = E.ring
    for pname, (m, n) in sorted(E.problem.pairs.items()):
        if not E.finite_tensor(m, n):
            continue
        try:
            fit = E.fit(m, n)
            cm, cn = E.module_cx(m), E.module_cx(n)
        except asy.FitError:
            out.append(_rec("dimension", "eta_vanishes_below_bound", pname, "fail", "no fit"))
            continue
        rep_cx = _complexity(E, m, n, fit)
        rep = asy.dimension_inequality_check(E.module(m).dimension(), E.module(n).dimension(),
                                             R.dim, R.codim, max(cm.c, cm.d), max(cn.c, cn.d),
                                             fit, rep_cx.tcx if rep_cx else None)
        st = _status(rep.passed) if rep.below_bound else "n/a"
        out.append(_rec("dimension", "eta_vanishes_below_bound", pname, st,
                        {"dims": [rep.dim_M, rep.dim_N, rep.dim_R], "a": rep.a, "eta_a": rep.eta_a}))
    ex = E.problem.notes.get("dimension_example")
    if ex:
        m, n = ex["pair"]
        d = E.module(m).dimension() + E.module(n).dimension()
        want = R.dim + R.codim - 1
        seq = E.problem.sequences.get(ex.get("witness"))
        exact = verify_short_exact(seq.alpha, seq.beta).exact if seq else False
        out.append(_rec("dimension", "example_dimension_datum", f"{m},{n}",
                        _status(d == want and exact),
                        {"dim_sum": d, "dim_R_plus_r_minus_1": want, "witness_exact": exact}))
    return out


CHECKS = {
    "poly": checks_poly, "groebner": checks_groebner, "modules": checks_modules,
    "resolution": checks_resolution, "operators": checks_operators, "tor": checks_tor,
    "kirby": checks_kirby, "change_of_rings": checks_change_of_rings, "fits": checks_fits,
    "eta": checks_eta, "biadditivity": checks_biadditivity, "complexity": checks_complexity,
    "rigidity": checks_rigidity, "dimension": checks_dimension,
}


def run_checks(E: Entry, suites=None) -> list:
    out = []
    for s in (suites or SUITES):
        out.extend(CHECKS[s](E))
    return sorted(out, key=lambda c: (c["suite"], c["check"], c["subject"]))


def entry_report(E: Entry, suites=None) -> dict:
    pb = E.problem
    rep = {
        "entry": pb.name,
        "ring": E.ring.describe() | {"dim": E.ring.dim, "codim": E.ring.codim},
        "horizon": E.horizon,
        "notes": dict(pb.notes),
        "modules": {k: module_report(E, k) for k in sorted(pb.modules)},
        "pairs": {k: pair_report(E, *v) for k, v in sorted(pb.pairs.items())},
        "sequences": {k: sequence_report(E, s) for k, s in sorted(pb.sequences.items())},
        "checks": run_checks(E, suites),
    }
    return _j(rep)
