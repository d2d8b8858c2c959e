"""Rational Poincaré series fits and the asymptotic invariants read off them.

Series are fitted in the form ``p(t) / ((1-t)^c (1+t)^d)`` with integer p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .scalar import INF, rational_to_json


class FitError(ValueError):
    """No admissible (c, d) reproduces the data within the required window."""


# ---------------------------------------------------------------------------
# integer polynomials as coefficient lists


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ppow(base, n):
    out = [1]
    for _ in range(n):
        out = _pmul(out, base)
    return out


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def peval(a, x):
    s = 0
    for c in reversed(a):
        s = s * x + c
    return s


def denominator(c: int, d: int):
    return _pmul(_ppow([1, -1], c), _ppow([1, 1], d))


def expand(p, c: int, d: int, n: int) -> list:
    """First ``n`` coefficients of ``p / ((1-t)^c (1+t)^d)``."""
    coeffs = [p[i] if i < len(p) else 0 for i in range(n)]
    for _ in range(c):
        for i in range(1, n):
            coeffs[i] += coeffs[i - 1]
    for _ in range(d):
        for i in range(1, n):
            coeffs[i] -= coeffs[i - 1]
    return coeffs


# ---------------------------------------------------------------------------
# fits


@dataclass
class SeriesFit:
    p: list
    c: int
    d: int
    m0: Fraction
    n0: Fraction
    g_even: list
    g_odd: list
    onset: int
    confidence: str  # certified | heuristic
    window: int
    horizon: int
    data: list = field(default_factory=list, repr=False)

    @property
    def degree(self) -> int:
        return len(self.p) - 1

    def coefficient(self, i: int) -> int:
        return expand(self.p, self.c, self.d, i + 1)[i]

    def closed_form(self, i: int) -> Fraction:
        """The asymptotic formula for beta_i (valid for i >= onset)."""
        val = Fraction(0)
        if self.c >= 1:
            val += self.m0 / factorial(self.c - 1) * Fraction(i) ** (self.c - 1)
        if self.d >= 1:
            val += (-1) ** i * self.n0 / factorial(self.d - 1) * Fraction(i) ** (self.d - 1)
        g = self.g_even if i % 2 == 0 else self.g_odd
        val += sum((Fraction(a) * Fraction(i) ** k for k, a in enumerate(g)), Fraction(0))
        return val

    def faithful(self) -> bool:
        """Expansion reproduces the data, and the closed form holds from the onset."""
        n = len(self.data)
        if expand(self.p, self.c, self.d, n) != list(self.data):
            return False
        return all(self.closed_form(i) == self.data[i] for i in range(self.onset, n))

    def as_dict(self) -> dict:
        return {
            "p": list(self.p), "c": self.c, "d": self.d,
            "m0": rational_to_json(self.m0), "n0": rational_to_json(self.n0),
            "g_even": [rational_to_json(a) for a in self.g_even],
            "g_odd": [rational_to_json(a) for a in self.g_odd],
            "onset": self.onset, "confidence": self.confidence, "window": self.window,
            "horizon": self.horizon,
        }


def _numerator(data, c, d):
    """(1-t)^c (1+t)^d * sum data_i t^i truncated at the horizon."""
    q = _pmul(denominator(c, d), list(data))[:len(data)]
    return _trim(q)


def _try(data, r, window):
    """Minimal (c, d) whose numerator stops at least ``window`` terms before the end."""
    H = len(data) - 1
    for c in range(r + 1):
        for d in range(c + 1):
            q = _numerator(data, c, d)
            deg = len(q) - 1
            if H - deg >= window:
                return c, d, q
    return None


def _interpolate(points):
    """Coefficients (low to high) of the polynomial through ``points``."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for k, (xk, yk) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m, (xm, _) in enumerate(points):
            if m == k:
                continue
            basis = [Fraction(0)] + basis
            for i in range(len(basis) - 1):
                basis[i] -= xm * basis[i + 1]
            denom *= (xk - xm)
        for i in range(n):
            coeffs[i] += Fraction(yk) * basis[i] / denom
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _g_parts(data, c, d, m0, n0, onset):
    """Lower-order corrections g_+ (even i) and g_- (odd i)."""
    deg_bound = max(c, d) - 1  # g has degree < deg_bound
    out = []
    for parity in (0, 1):
        pts = []
        for i in range(onset, len(data)):
            if i % 2 != parity:
                continue
            main = Fraction(0)
            if c >= 1:
                main += m0 / factorial(c - 1) * Fraction(i) ** (c - 1)
            if d >= 1:
                main += (-1) ** i * n0 / factorial(d - 1) * Fraction(i) ** (d - 1)
            pts.append((Fraction(i), Fraction(data[i]) - main))
        need = max(deg_bound, 0)
        g = _interpolate(pts[:need]) if need else []
        for x, y in pts:
            if sum((a * x ** k for k, a in enumerate(g)), Fraction(0)) != y:
                raise FitError("closed form does not hold on the tail")
        out.append(g)
    return out


def fit_sequence(data, r: int, dim_Q: int | None = None, window: int | None = None) -> SeriesFit:
    """Fit ``sum data_i t^i`` as ``p/((1-t)^c (1+t)^d)`` with minimal c, then d.

    Certified when r <= 1 and the horizon passes ``2 dim Q + 2r + 4`` with the
    numerator inside the range the periodicity theorem allows; otherwise the
    fit must hold on the final ``max(2r + 4, 8)`` terms and refit identically
    from a prefix missing half of that window.
    """
    data = [int(x) for x in data]
    H = len(data) - 1
    if H < 0:
        raise FitError("empty sequence")
    confidence = None
    res = None
    W = window if window is not None else max(2 * r + 4, 8)
    if dim_Q is not None and r <= 1 and H > 2 * dim_Q + 2 * r + 4:
        # the tail is eventually zero (r = 0) or 2-periodic from dim Q on (r = 1)
        res = _try(data, r, H - (dim_Q + r))
        if res is not None:
            confidence = "certified"
            W = H - len(res[2]) + 1
    if res is None:
        res = _try(data, r, W)
        if res is None:
            raise FitError(f"no fit with c, d <= {r} vanishing on the last {W} terms "
                           f"(horizon {H}); increase the horizon")
        half = W // 2
        pre = _try(data[:len(data) - half], r, W - half)
        if pre is None or pre != res:
            raise FitError("fit not re-derivable from the window's first half")
        confidence = "heuristic"
    c, d, p = res
    m0 = Fraction(peval(p, 1), 2 ** d) if c >= 1 else Fraction(0)
    n0 = Fraction(peval(p, -1), 2 ** c) if d >= 1 else Fraction(0)
    onset = max(0, len(p) - 1 - c - d + 1)
    g_even, g_odd = _g_parts(data, c, d, m0, n0, onset)
    fit = SeriesFit(p, c, d, m0, n0, g_even, g_odd, onset, confidence, W, H, data)
    if not fit.faithful():
        raise FitError("fit does not reproduce the data")
    return fit


def fit_series(B, r: int, dim_Q: int | None = None) -> SeriesFit:
    """Fit a BettiSequence's generalized Betti numbers."""
    if B.finite_length_index is INF:
        raise FitError("finite length index is infinite")
    return fit_sequence(B.betas, r, dim_Q)


def check_fit_invariants(fit: SeriesFit, r: int) -> list[str]:
    """Violations of d <= c <= r, the sign conditions at t = ±1, and m0 >= 0."""
    bad = []
    if not (fit.d <= fit.c <= r):
        bad.append("d <= c <= r fails")
    if fit.p:
        if fit.c > 0 and peval(fit.p, 1) == 0:
            bad.append("p(1) = 0 with c > 0")
        if fit.d > 0 and peval(fit.p, -1) == 0:
            bad.append("p(-1) = 0 with d > 0")
    if fit.m0 < 0:
        bad.append("m0 < 0")
    return bad


def growth_degree(data, tail_start: int) -> int:
    """Complexity by finite differences: least k with each parity subsequence of
    degree < k on the tail (0 if the tail vanishes)."""
    best = 0
    for parity in (0, 1):
        seq = [data[i] for i in range(tail_start, len(data)) if i % 2 == parity]
        if not any(seq):
            continue
        k = 0
        cur = list(seq)
        while any(cur) and len(cur) > 1:
            if all(x == cur[0] for x in cur):
                break
            cur = [b - a for a, b in zip(cur, cur[1:])]
            k += 1
        best = max(best, k + 1)
    return best


# ---------------------------------------------------------------------------
# eta, theta, chi


@dataclass
class EtaValue:
    e: int
    value: Fraction | None
    defined: bool
    limit_consistent: bool | None = None

    def as_dict(self):
        return {"e": self.e, "defined": self.defined,
                "value": rational_to_json(self.value) if self.defined else None,
                "limit_consistent": self.limit_consistent}


def eta(fit: SeriesFit, e: int) -> EtaValue:
    """eta_e from the closed form: p(-1)/(2^c e!) when d = e, 0 when d < e; e >= c."""
    if e < fit.c:
        return EtaValue(e, None, False)
    if not fit.p:
        val = Fraction(0)
    elif fit.d == e:
        val = Fraction(peval(fit.p, -1), 2 ** fit.c * factorial(e))
    else:
        val = Fraction(0)
    return EtaValue(e, val, True, _limit_check(fit, e, val))


def _limit_check(fit: SeriesFit, e: int, val: Fraction) -> bool:
    """|S_n / n^e - eta| is nonincreasing along each parity on the tail."""
    data = fit.data
    start = max(fit.onset, 1)
    partial = []
    s = 0
    for i, b in enumerate(data):
        s += (-1) ** i * b
        partial.append(s)
    for parity in (0, 1):
        errs = [abs(Fraction(partial[n], n ** e) - val)
                for n in range(start, len(data)) if n % 2 == parity]
        if any(b > a for a, b in zip(errs, errs[1:])):
            return False
    return True


@dataclass
class ThetaValue:
    value: int
    spot: int
    periodic: bool
    equals_two_eta: bool

    def as_dict(self):
        return {"value": self.value, "spot": self.spot, "periodic": self.periodic,
                "equals_two_eta": self.equals_two_eta}


def theta(B, fit: SeriesFit, dim_Q: int) -> ThetaValue:
    """l(Tor_{2e+2}) - l(Tor_{2e+1}) on the 2-periodic tail of a hypersurface pair."""
    fR = B.finite_length_index
    if fR is INF:
        raise FitError("theta needs a finite finite-length index")
    lengths = B.lengths
    start = max(dim_Q, fR)
    spot = start if start % 2 == 1 else start + 1  # 2e+1
    if spot + 1 >= len(lengths):
        raise FitError("horizon too small for theta; increase it")
    periodic = all(lengths[i] == lengths[i + 2] for i in range(start, len(lengths) - 2))
    val = lengths[spot + 1] - lengths[spot]
    two_eta = 2 * eta(fit, 1).value if fit.c <= 1 else None
    return ThetaValue(val, spot, periodic, two_eta is not None and two_eta == val)


def serre_chi(lengths) -> int:
    """Alternating sum of Tor lengths over a regular ring."""
    if any(x is INF for x in lengths):
        raise ValueError("Serre's chi needs M ⊗ N of finite length")
    return sum((-1) ** i * x for i, x in enumerate(lengths))


@dataclass
class GulliksenValue:
    value: int
    rescaled: list
    eta_r: Fraction
    consistent: bool
    confidence: str

    def as_dict(self):
        return {"value": self.value, "rescaled_numerator": list(self.rescaled),
                "eta_r": rational_to_json(self.eta_r), "consistent": self.consistent,
                "confidence": self.confidence}


def gulliksen_chi(fit: SeriesFit, r: int) -> GulliksenValue:
    """p(-1) for the numerator over (1-t^2)^r; checks eta_r = p(-1)/(2^r r!)."""
    resc = _trim(_pmul(fit.p, _pmul(_ppow([1, -1], r - fit.c), _ppow([1, 1], r - fit.d))))
    val = peval(resc, -1)
    er = eta(fit, r).value
    ok = er == Fraction(val, 2 ** r * factorial(r))
    return GulliksenValue(val, resc, er, ok, fit.confidence)


# ---------------------------------------------------------------------------
# complexities


@dataclass
class ComplexityReport:
    lcx: int
    tcx: int
    cx: int
    lcx_growth: int
    confidences: dict
    equal: bool
    bound: int | None = None
    bound_ok: bool | None = None

    def as_dict(self):
        return {"lcx": self.lcx, "tcx": self.tcx, "cx": self.cx,
                "lcx_growth": self.lcx_growth, "confidences": dict(self.confidences),
                "equal": self.equal,
                "bound_min_cx": self.bound, "bound_ok": self.bound_ok}


def complexity_of(seq, r: int, dim_Q: int | None = None) -> tuple[int, str]:
    fit = fit_sequence(seq, r, dim_Q)
    return max(fit.c, fit.d), fit.confidence


def complexities(betas, mu_tor, mu_ext, r: int, dim_Q: int, cx_M=None, cx_N=None,
                 fit: SeriesFit | None = None) -> ComplexityReport:
    if fit is None:
        fit = fit_sequence(betas, r, dim_Q)
    lcx = fit.c
    tcx, ct = complexity_of(mu_tor, r, dim_Q)
    cx, ce = complexity_of(mu_ext, r, dim_Q)
    growth = growth_degree(betas, fit.onset)
    bound = None
    ok = None
    if cx_M is not None and cx_N is not None:
        bound = min(cx_M, cx_N)
        ok = tcx <= bound
    return ComplexityReport(lcx, tcx, cx, growth,
                            {"lcx": fit.confidence, "tcx": ct, "cx": ce},
                            lcx == tcx == cx, bound, ok)


# ---------------------------------------------------------------------------
# rigidity


@dataclass
class RigidityReport:
    predicted: bool
    windows: list
    violations: list
    cn_bound: int | None
    cn_violations: list
    critical: bool

    def as_dict(self):
        return {"predicted": self.predicted, "windows": self.windows,
                "violations": self.violations, "cn_bound": self.cn_bound,
                "cn_violations": self.cn_violations, "critical": self.critical}


def rigidity_check(zero_flags, r: int, eta_r, depth_R=None, depth_M=None,
                   fR=0) -> RigidityReport:
    """Scan for r consecutive vanishing Tor's and test what follows them.

    ``zero_flags[i]`` says Tor_i = 0.  With eta_r = 0 (and f_R finite) every
    window must be followed by vanishing to the horizon; the (r, n) form with
    n = depth R - depth M is checked on windows starting past n.
    """
    n = len(zero_flags)
    predicted = fR is not INF and eta_r is not None and eta_r == 0 and r >= 1
    windows, bad = [], []
    for s in range(0, n - r + 1):
        if all(zero_flags[s:s + r]):
            windows.append(s)
            tail_nonzero = [i for i in range(s + r, n) if not zero_flags[i]]
            if tail_nonzero:
                bad.append({"window": s, "nonzero_at": tail_nonzero[0]})
    cn = None
    cn_bad = []
    if depth_R is not None and depth_M is not None and depth_M is not INF:
        cn = depth_R - depth_M
        cn_bad = [b for b in bad if b["window"] > cn]
    critical = predicted and bool(bad)
    return RigidityReport(predicted, windows, bad, cn, cn_bad, critical)


# ---------------------------------------------------------------------------
# dimension inequality


@dataclass
class DimensionReport:
    dim_M: int
    dim_N: int
    dim_R: int
    r: int
    a: int
    below_bound: bool
    eta_a: Fraction | None
    passed: bool
    serre_question: dict

    def as_dict(self):
        return {"dim_M": self.dim_M, "dim_N": self.dim_N, "dim_R": self.dim_R, "r": self.r,
                "a": self.a, "below_bound": self.below_bound,
                "eta_a": rational_to_json(self.eta_a) if self.eta_a is not None else None,
                "passed": self.passed, "asymptotic_question": self.serre_question}


def dimension_inequality_check(dim_M, dim_N, dim_R, r, cx_M, cx_N, fit: SeriesFit,
                               tcx: int | None = None) -> DimensionReport:
    a = max(cx_M, cx_N)
    below = dim_M + dim_N < dim_R + a
    ev = eta(fit, a)
    val = ev.value if ev.defined else None
    passed = (not below) or (ev.defined and val == 0)
    evidence = {"holds_cx_M": dim_M + dim_N <= dim_R + cx_M}
    if tcx is not None:
        evidence["holds_tcx"] = dim_M + dim_N <= dim_R + tcx
    return DimensionReport(dim_M, dim_N, dim_R, r, a, below, val, passed, evidence)

