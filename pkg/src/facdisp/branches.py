"""Numerical dispersion-branch machinery: exact real-root isolation by Sturm
sequences, branch tracing by nearest-neighbor continuity, the closed-form
small-k branch expansions of the coupled plate model, the small-frequency
Laurent analysis, and log-log residual-order estimation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .models import MindlinParams
from .polyalg import MultiPoly, TruncSeries, sqrt_exact

# ---------------------------------------------------------------------------
# dense univariate polynomials over Q (internal helpers)
# ---------------------------------------------------------------------------


def _trim(c: list[Fraction]) -> list[Fraction]:
    while c and not c[-1]:
        c.pop()
    return c


def _derivative(c: list[Fraction]) -> list[Fraction]:
    return [c[i] * i for i in range(1, len(c))]


def _divmod_poly(a: list[Fraction], b: list[Fraction]):
    a = a[:]
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        factor = a[shift + len(b) - 1] * inv
        q[shift] = factor
        if factor:
            for i, bc in enumerate(b):
                a[shift + i] -= factor * bc
    return _trim(q), _trim(a)


def _gcd_poly(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(a[:]), _trim(b[:])
    while b:
        a, b = b, _divmod_poly(a, b)[1]
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _yun_squarefree(f: list[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Yun's squarefree decomposition: [(factor, multiplicity), ...]."""
    df = _derivative(f)
    g = _gcd_poly(f, df)
    if len(g) <= 1:
        return [(f, 1)]
    out = []
    b = _divmod_poly(f, g)[0]
    c = _divmod_poly(df, g)[0]
    d = _trim([x - y for x, y in _zip_pad(c, _derivative(b))])
    i = 1
    while len(b) > 1:
        a = _gcd_poly(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = _divmod_poly(b, a)[0]
        c = _divmod_poly(d, a)[0]
        d = _trim([x - y for x, y in _zip_pad(c, _derivative(b))])
        i += 1
    return out


def _zip_pad(a: list[Fraction], b: list[Fraction]):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else Fraction(0), b[i] if i < len(b) else Fraction(0))


def _int_coeffs(c: list[Fraction]) -> list[int]:
    """Scale to integer coefficients (positive overall factor; sign-preserving)."""
    if not c:
        return []
    lcm = 1
    for coef in c:
        lcm = lcm * coef.denominator // math.gcd(lcm, coef.denominator)
    return [int(coef * lcm) for coef in c]


def _sign_at(ic: list[int], num: int, den: int) -> int:
    """Sign of the integer-scaled polynomial at x = num/den (den > 0).

    Evaluates p(num/den) * den^deg by a denominator-clearing Horner scheme,
    so only integer arithmetic is involved.
    """
    acc = ic[-1]
    dp = 1
    for coef in reversed(ic[:-1]):
        dp *= den
        acc = acc * num + coef * dp
    return (acc > 0) - (acc < 0)


def _sturm_chain(c: list[Fraction]) -> list[list[int]]:
    chain = [_trim(c[:]), _trim(_derivative(c))]
    while len(chain[-1]) > 1:
        rem = _divmod_poly(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append([-x for x in rem])
    if chain and not chain[-1]:
        chain.pop()
    return [_int_coeffs(p) for p in chain if p]


def _variations(chain: list[list[int]], num: int, den: int) -> int:
    signs = [s for s in (_sign_at(p, num, den) for p in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def _root_bound(c: list[Fraction]) -> int:
    lead = abs(c[-1])
    m = max(abs(x) for x in c[:-1]) if len(c) > 1 else Fraction(0)
    return math.ceil(1 + m / lead)


def _isolate_squarefree(c: list[Fraction]):
    """Isolate all real roots of a squarefree polynomial.

    Returns (exact_roots, intervals) where intervals are dyadic triples
    (a, b, den) for the open-ish interval (a/den, b/den] holding exactly one
    root with nonzero endpoint signs; exact dyadic hits are reported directly.
    """
    chain = _sturm_chain(c)
    bound = _root_bound(c)
    ic = _int_coeffs(c)
    exact: set[Fraction] = set()
    intervals: list[tuple[int, int, int]] = []
    stack = [(-bound, bound, 1)]
    while stack:
        a, b, den = stack.pop()
        count = _variations(chain, a, den) - _variations(chain, b, den)
        if count == 0:
            continue
        if _sign_at(ic, b, den) == 0:
            exact.add(Fraction(b, den))
            if count == 1:
                continue
        elif count == 1 and _sign_at(ic, a, den) != 0:
            intervals.append((a, b, den))
            continue
        # split at the midpoint (a+b)/2, doubling the dyadic denominator
        mid = a + b
        stack.append((a * 2, mid, den * 2))
        stack.append((mid, b * 2, den * 2))
    return [float(r) for r in exact], intervals


def _refine(ic: list[int], a: int, b: int, den: int, tol: float) -> float:
    """Bisection inside (a/den, b/den); endpoint signs are nonzero and opposite."""
    sa = _sign_at(ic, a, den)
    while (b - a) / den > tol:
        mid = a + b
        a, b, den = a * 2, b * 2, den * 2
        sm = _sign_at(ic, mid, den)
        if sm == 0:
            return mid / den
        if sm == sa:
            a = mid
        else:
            b = mid
    return (a + b) / (2 * den)


def real_roots(p: MultiPoly, tol: float = 1e-12, var: str | None = None) -> list[float]:
    """All real roots of a univariate polynomial, repeated per multiplicity.

    Roots are isolated exactly by Sturm sequences on the rationalized
    coefficients of each squarefree factor, then refined by bisection to the
    absolute tolerance.  The zero polynomial and non-positive tolerances are
    rejected.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    coeffs = _trim([Fraction(x) for x in p.univariate_coefficients(var)])
    if not coeffs:
        raise ValueError("zero polynomial has no well-defined root set")
    if len(coeffs) == 1:
        return []
    roots: list[float] = []
    for factor, mult in _yun_squarefree(coeffs):
        if len(factor) <= 1:
            continue
        ic = _int_coeffs(factor)
        exact, intervals = _isolate_squarefree(factor)
        found = exact + [_refine(ic, a, b, den, tol) for a, b, den in intervals]
        for r in found:
            roots.extend([r] * mult)
    return sorted(roots)


# ---------------------------------------------------------------------------
# branch tracing
# ---------------------------------------------------------------------------


@dataclass
class BranchTrace:
    """One dispersion branch: ordered (k, omega) samples plus run metadata."""

    branch_id: int
    samples: list[tuple[float, float]] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def ks(self) -> list[float]:
        return [k for k, _ in self.samples]

    @property
    def omegas(self) -> list[float]:
        return [w for _, w in self.samples]

    def last_omega(self) -> float:
        return self.samples[-1][1]


def _monotone_match(prev: list[float], new: list[float]) -> list[tuple[int, int]]:
    """Min-total-distance order-preserving matching between two sorted lists.

    Matches min(len(prev), len(new)) pairs; order preservation is exactly the
    tie-break that keeps the previous step's branch ordering.
    """
    m, n = len(prev), len(new)
    small, large, swapped = (prev, new, False) if m <= n else (new, prev, True)
    ms, ns = len(small), len(large)
    INF = float("inf")
    cost = [[INF] * (ns + 1) for _ in range(ms + 1)]
    choice = [[0] * (ns + 1) for _ in range(ms + 1)]
    for j in range(ns + 1):
        cost[ms][j] = 0.0
    for i in range(ms - 1, -1, -1):
        for j in range(ns - 1, -1, -1):
            if ns - j < ms - i:
                continue
            take = abs(small[i] - large[j]) + cost[i + 1][j + 1]
            skip = cost[i][j + 1]
            if take <= skip:
                cost[i][j] = take
                choice[i][j] = 1
            else:
                cost[i][j] = skip
                choice[i][j] = 0
    pairs = []
    i = j = 0
    while i < ms and j < ns:
        if choice[i][j]:
            pairs.append((i, j) if not swapped else (j, i))
            i += 1
        j += 1
    return pairs


def trace_branches(
    dispersion: MultiPoly,
    kgrid: Sequence[float],
    tol: float = 1e-12,
    kvar: str = "k",
    wvar: str = "w",
    metadata: dict | None = None,
) -> list[BranchTrace]:
    """Thread the real roots in the frequency variable into continuous branches.

    At each grid point the roots are recomputed exactly; consecutive root sets
    are joined by the nearest-neighbor matching above.  Branches may begin or
    end where roots appear or disappear.
    """
    kgrid = list(kgrid)
    if not kgrid:
        raise ValueError("empty wavenumber grid")
    if any(b <= a for a, b in zip(kgrid, kgrid[1:])):
        raise ValueError("wavenumber grid must be strictly increasing")
    metadata = dict(metadata or {})
    traces: list[BranchTrace] = []
    active: list[BranchTrace] = []  # kept sorted by their latest frequency
    next_id = 0
    for k in kgrid:
        pk = dispersion.subs({kvar: Fraction(k)})
        roots = real_roots(pk, tol=tol, var=wvar)
        prev = [t.last_omega() for t in active]
        pairs = _monotone_match(prev, roots)
        matched_new = {j for _, j in pairs}
        surviving = []
        for i, j in pairs:
            active[i].samples.append((k, roots[j]))
            surviving.append(active[i])
        for j, w in enumerate(roots):
            if j not in matched_new:
                t = BranchTrace(next_id, [(k, w)], dict(metadata))
                next_id += 1
                traces.append(t)
                surviving.append(t)
        surviving.sort(key=lambda t: t.last_omega())
        active = surviving
    traces.sort(key=lambda t: t.branch_id)
    return traces


# ---------------------------------------------------------------------------
# closed-form branch expansions near the origin (coupled plate model)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesCoeffs:
    """Closed-form expansion coefficients of a branch near k=0.

    kind="lower": omega = c1 k^2 + c2 k^4 + c3 k^6 + O(k^8), values (c1,c2,c3).
    kind="upper": omega = w0 + d1 k^2 + d2 k^4 + O(k^6), values (w0,d1,d2).
    Values are exact Fractions when the square roots involved are rational,
    floats otherwise.
    """

    kind: str
    values: tuple
    params: MindlinParams

    def as_series(self, var: str = "k") -> TruncSeries:
        if self.kind == "lower":
            c1, c2, c3 = self.values
            return TruncSeries(var, {2: c1, 4: c2, 6: c3}, order=8)
        w0, d1, d2 = self.values
        return TruncSeries(var, {0: w0, 2: d1, 4: d2}, order=6)

    def evaluate(self, k: float) -> float:
        return self.as_series().evaluate(k)


def _sqrt_maybe(x: Fraction):
    r = sqrt_exact(x)
    return r if r is not None else math.sqrt(x)


def lower_series(p: MindlinParams) -> SeriesCoeffs:
    """Coefficients of the pinned parabolic branch: all proportional to sqrt(D/(rho h))."""
    if p.b <= 0:
        raise ValueError("the branch expansion is singular at b = 0")
    rho, h, D, kG, b = p.rho, p.h, p.D, p.kappa * p.G, p.b
    s = _sqrt_maybe(D / (rho * h))
    c1 = s / b
    c2 = -(12 * D + kG * h**3) / (24 * kG * b**3 * h) * s
    c3 = (4 * D + kG * h**3) * (36 * D + kG * h**3) / (384 * kG**2 * b**5 * h**2) * s
    return SeriesCoeffs("lower", (c1, c2, c3), p)


def upper_series(p: MindlinParams) -> SeriesCoeffs:
    """Coefficients of the lifted branch starting at the cutoff frequency w0."""
    if p.b <= 0:
        raise ValueError("the branch expansion is singular at b = 0")
    rho, h, D, kG, b = p.rho, p.h, p.D, p.kappa * p.G, p.b
    t = _sqrt_maybe(Fraction(3) / (kG * rho))
    w0 = 2 * b * kG / h * t
    d1 = (D + kG * h**3 / 12) / (b * h**2) * t
    d2 = -(144 * D**2 + 72 * D * kG * h**3 + kG**2 * h**6) / (576 * kG * b**3 * h**3) * t
    return SeriesCoeffs("upper", (w0, d1, d2), p)


def cutoff_frequency(p: MindlinParams) -> float:
    """Threshold frequency below which the upper branch has no real wavenumber."""
    return float(2 * p.b) * math.sqrt(float(3 * p.kappa * p.G / p.rho)) / float(p.h)


# ---------------------------------------------------------------------------
# Laurent analysis of S = k^2/omega^2 for small frequency
# ---------------------------------------------------------------------------


def laurent_PQR(p: MindlinParams):
    """The three parameter combinations entering the small-frequency series."""
    P = p.rho * p.h**3 * p.kappa * p.G / 12 + p.rho * p.D
    Q = p.rho * p.h**3 * p.kappa * p.G / 12 - p.rho * p.D
    R = 2 * p.b * p.kappa * p.G * _sqrt_maybe(p.D * p.rho * p.h)
    return P, Q, R


_LAURENT_MAX_ORDER = 5  # the omega^4 coefficient vanishes; omega^5 is the first unknown


def laurent_S(p: MindlinParams, sign: int, order: int = _LAURENT_MAX_ORDER) -> TruncSeries:
    """Truncated series of one root S_+/- of the quadratic in S = k^2/omega^2.

    Terms: +-R/(2 kappa G D) * 1/w, P/(2 kappa G D), +-Q^2/(4 kappa G D R) * w,
    -+Q^4/(16 kappa G D R^3) * w^3; restricted to w > 0 (the dispersion
    polynomials are even in the frequency).  Apart from the constant the
    expansion is odd, so the w^4 coefficient is an exact zero and the default
    truncation order 5 is the best supported by the printed terms.
    """
    if p.b <= 0:
        raise ValueError("the Laurent series is singular at b = 0")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if order > _LAURENT_MAX_ORDER:
        raise ValueError(
            f"requested order {order} exceeds achievable order {_LAURENT_MAX_ORDER}"
        )
    P, Q, R = laurent_PQR(p)
    kGD = p.kappa * p.G * p.D
    terms = {
        Fraction(-1): sign * R / (2 * kGD),
        Fraction(0): P / (2 * kGD),
        Fraction(1): sign * Q**2 / (4 * kGD * R),
        Fraction(3): -sign * Q**4 / (16 * kGD * R**3),
    }
    return TruncSeries("w", terms, order=order)


def laurent_quadratic_residual(p: MindlinParams, s: TruncSeries) -> TruncSeries:
    """Substitute an S-series into the defining quadratic; zero up to truncation order.

    The quadratic is kappa*G*D*S^2 - P*S + rho^2 h^3/12 - b^2 kappa G rho h / w^2.
    """
    P, _, _ = laurent_PQR(p)
    kGD = p.kappa * p.G * p.D
    const = TruncSeries(s.variable, {Fraction(0): Fraction(p.rho**2 * p.h**3, 12)}, None)
    coupling = TruncSeries(
        s.variable, {Fraction(-2): -(p.b**2) * p.kappa * p.G * p.rho * p.h}, None
    )
    return s * s * kGD - s * P + const + coupling


def asymptotic_slopes(p: MindlinParams) -> tuple[float, float]:
    """Large-k branch slopes; identical to the uncoupled (b=0) slopes."""
    s1 = math.sqrt(float(p.kappa * p.G / p.rho))
    s2 = math.sqrt(float(12 * p.D / (p.rho * p.h**3)))
    return s1, s2


def asymptotic_S_values(p: MindlinParams) -> tuple[Fraction, Fraction]:
    """Limits of S_+/- as the frequency grows: rho/(kappa G) and rho h^3/(12 D)."""
    return p.rho / (p.kappa * p.G), p.rho * p.h**3 / (12 * p.D)


# ---------------------------------------------------------------------------
# residual-order estimation
# ---------------------------------------------------------------------------


def residual_order(
    relation: Callable[[float, float], float],
    approx: Callable[[float], float],
    samples: Sequence[float],
) -> float | None:
    """Least-squares slope of log|relation(s, approx(s))| against log s.

    `samples` must be positive and span at least two decades.  Returns None
    when the residual vanishes identically at every sample (exact relation),
    which counts as a pass for any expected order.
    """
    samples = list(samples)
    if not samples or any(s <= 0 for s in samples):
        raise ValueError("samples must be positive")
    if max(samples) / min(samples) < 99.999:
        raise ValueError("samples must span at least two decades")
    pts = []
    for s in samples:
        r = abs(relation(s, approx(s)))
        if r:
            pts.append((math.log(s), math.log(r)))
    if not pts:
        return None
    if len(pts) < 2:
        raise ValueError("too few nonzero residuals for a slope estimate")
    n = len(pts)
    mx = sum(x for x, _ in pts) / n
    my = sum(y for _, y in pts) / n
    sxx = sum((x - mx) ** 2 for x, _ in pts)
    sxy = sum((x - mx) * (y - my) for x, y in pts)
    return sxy / sxx


def order_matches(slope: float | None, expected: float, tol: float = 0.3) -> bool:
    """Exact residuals (slope None) pass; otherwise |slope - expected| <= tol."""
    return slope is None or abs(slope - expected) <= tol


def log_samples(lo: float, hi: float, count: int) -> list[float]:
    """Logarithmically spaced positive samples, inclusive of both ends."""
    if lo <= 0 or hi <= lo or count < 2:
        raise ValueError("need 0 < lo < hi and at least two samples")
    ratio = (hi / lo) ** (1 / (count - 1))
    return [lo * ratio**i for i in range(count)]
