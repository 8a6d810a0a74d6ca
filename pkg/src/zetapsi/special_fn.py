"""Real-argument special functions: zeta and its derivatives, digamma,
trigamma/tetragamma, and the Stieltjes constants gamma_0, gamma_1.

Evaluation routes
-----------------
zeta, -1 < s < 1
    eta(s) / (1 - 2**(1-s)) with the alternating series accelerated; the
    denominator is formed with expm1 so nothing cancels next to the pole.
zeta, s > 1
    Dirichlet partial sum plus an Euler-Maclaurin tail.
digamma
    Upward recurrence to x >= X, then the Bernoulli asymptotic series.  X is
    picked from the tolerance.
polygamma
    Hurwitz-type sum over (x + n)**-(m+1) with an Euler-Maclaurin tail.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from .errors import (
    OutOfDisk,
    OutOfDomain,
    PoleAtOne,
    TooFarFromPole,
    TooManyTerms,
    UnsupportedIndex,
)
from .numerics import (
    DEFAULT_CONTEXT,
    Approx,
    PowerLog,
    PrecisionContext,
    alternating_terms_for,
    alternating_weights,
    bernoulli_mpf,
    em_correction,
    euler_maclaurin_tail,
    rounding_allowance,
    working,
)

EM_ORDER = 15
ASYMPTOTIC_TERMS = 15  # Bernoulli numbers up to B_30
LAURENT_BAND = 0.5


def pi(ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    with working(ctx):
        return Approx(+mpmath.pi, rounding_allowance(mpmath.pi))


def log_two_pi(ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    with working(ctx):
        v = mpmath.log(2 * mpmath.pi)
        return Approx(v, rounding_allowance(v, 2))


# ---------------------------------------------------------------------------
# Stieltjes constants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StieltjesConstants:
    gamma0: Approx
    gamma1: Approx

    def __post_init__(self):
        if abs(self.gamma0.value - mpf("0.577216")) >= mpf("1e-5"):
            raise ValueError("gamma0 is inconsistent with 0.577216")
        if not self.gamma1.value < 0:
            raise ValueError("gamma1 must be negative")


_stieltjes_cache: dict[tuple[int, int, float], Approx] = {}
_stieltjes_lock = threading.Lock()


def _stieltjes_compute(k: int, ctx: PrecisionContext) -> Approx:
    # gamma_k = sum_{n<=N} log^k n / n - log^{k+1} N / (k+1) - f(N)/2 - sum_j B_2j/(2j)! f^(2j-1)(N)
    f = PowerLog(1, [0] * k + [1])
    tol = ctx.tol
    N = 10
    while abs(em_correction(f, N, EM_ORDER + 1)) >= tol / 100:
        N *= 2
        if N > ctx.max_terms:
            raise TooManyTerms("Stieltjes base point did not settle")
    head = mpmath.fsum(f(n) for n in range(1, N + 1))
    L = mpmath.log(N)
    value = head - L ** (k + 1) / (k + 1) - f(N) / 2
    for j in range(1, EM_ORDER + 1):
        value -= em_correction(f, N, j)
    err = abs(em_correction(f, N, EM_ORDER + 1)) + rounding_allowance(head, N)
    return Approx(value, err)


def stieltjes_gamma(k: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    """Stieltjes constant gamma_k for k in {0, 1} (gamma_0 is Euler's constant)."""
    if k not in (0, 1):
        raise UnsupportedIndex(f"only gamma_0 and gamma_1 are available, not gamma_{k}")
    key = (k, ctx.dps, ctx.target_tol)
    with working(ctx):
        hit = _stieltjes_cache.get(key)
        if hit is not None:
            return hit
        value = _stieltjes_compute(k, ctx)
        with _stieltjes_lock:
            return _stieltjes_cache.setdefault(key, value)


def stieltjes_constants(ctx: PrecisionContext = DEFAULT_CONTEXT) -> StieltjesConstants:
    return StieltjesConstants(stieltjes_gamma(0, ctx), stieltjes_gamma(1, ctx))


# ---------------------------------------------------------------------------
# Zeta
# ---------------------------------------------------------------------------


def _check_zeta_domain(s) -> mpf:
    s = mpf(s)
    if s == 1:
        raise PoleAtOne()
    if s <= -1:
        raise OutOfDomain(f"zeta is only evaluated for s > -1 (got s={mpmath.nstr(s, 10)})")
    return s


def _eta_derivatives(s: mpf, kmax: int, ctx: PrecisionContext) -> list[Approx]:
    """eta^(j)(s) for j = 0..kmax from one set of accelerated-series weights."""
    tol = ctx.tol
    n = alternating_terms_for(tol) + 2 * kmax
    m = n + max(6, n // 4)
    logs = [mpmath.log(i) for i in range(1, m + 1)]
    pows = [mpmath.exp(-s * L) for L in logs]
    out = []
    for j in range(kmax + 1):
        coeffs = [p * (-L) ** j for p, L in zip(pows, logs)]
        e1 = mpmath.fsum(w * a for w, a in zip(alternating_weights(n), coeffs))
        e2 = mpmath.fsum(w * a for w, a in zip(alternating_weights(m), coeffs))
        scale = max(abs(a) for a in coeffs)
        out.append(Approx(e2, abs(e2 - e1) + rounding_allowance(scale, m)))
    return out


def _zeta_eta_path(s: mpf, kmax: int, ctx: PrecisionContext) -> list[Approx]:
    eta = _eta_derivatives(s, kmax, ctx)
    ln2 = mpmath.log(2)
    two = mpmath.exp((1 - s) * ln2)
    d = [Approx(-mpmath.expm1((1 - s) * ln2), rounding_allowance(1))]
    for j in range(1, kmax + 1):
        dj = -two * (-ln2) ** j
        d.append(Approx(dj, rounding_allowance(dj, 3)))
    z: list[Approx] = []
    for k in range(kmax + 1):
        acc = eta[k]
        for j in range(1, k + 1):
            acc = acc - math.comb(k, j) * d[j] * z[k - j]
        z.append(acc / d[0])
    return z


def _zeta_dirichlet_path(s: mpf, k: int, ctx: PrecisionContext) -> Approx:
    coeffs = [0] * k + [(-1) ** k]
    f = PowerLog(s, coeffs)
    N = 10
    head = mpmath.fsum(f(n) for n in range(2, N + 1)) + (1 if k == 0 else 0)
    tail = euler_maclaurin_tail(f, N, EM_ORDER, ctx)
    return Approx(head, rounding_allowance(head, N)) + tail


def zeta(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    """Riemann zeta function for real s > -1, s != 1."""
    with working(ctx):
        s = _check_zeta_domain(s)
        if s > 1:
            return _zeta_dirichlet_path(s, 0, ctx)
        return _zeta_eta_path(s, 0, ctx)[0]


def zeta_deriv(s, k: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    """k-th derivative of zeta (k = 1, 2, 3) for real s > -1, s != 1."""
    if k not in (1, 2, 3):
        raise UnsupportedIndex(f"derivative order must be 1, 2 or 3 (got {k})")
    with working(ctx):
        s = _check_zeta_domain(s)
        if s > 1:
            return _zeta_dirichlet_path(s, k, ctx)
        return _zeta_eta_path(s, k, ctx)[k]


def zeta_jet(s, kmax: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[Approx]:
    """[zeta(s), zeta'(s), ..., zeta^(kmax)(s)] sharing one series evaluation."""
    with working(ctx):
        s = _check_zeta_domain(s)
        if s > 1:
            return [_zeta_dirichlet_path(s, k, ctx) for k in range(kmax + 1)]
        return _zeta_eta_path(s, kmax, ctx)


def zeta_laurent(
    s,
    K: int = 1,
    consts: StieltjesConstants | None = None,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
) -> Approx:
    """Truncated Laurent expansion 1/(s-1) + gamma_0 - gamma_1 (s-1).

    The remainder is bounded by C |s-1|**(K+1); C is estimated from the
    discrepancy against :func:`zeta` at two probe points and doubled.
    """
    if K > 1 or K < 0:
        raise TooManyTerms(f"only K <= 1 is available (requested K={K})")
    with working(ctx):
        s = mpf(s)
        if s == 1:
            raise PoleAtOne()
        u = s - 1
        if abs(u) >= LAURENT_BAND:
            raise TooFarFromPole(f"|s-1| = {mpmath.nstr(abs(u), 5)} >= {LAURENT_BAND}")
        consts = consts or stieltjes_constants(ctx)

        def truncated(x):
            v = Approx.exact(1 / x) + consts.gamma0
            if K == 1:
                v = v - consts.gamma1 * x
            return v

        C = mpf(0)
        for probe in (mpf("0.25"), mpf("-0.25")):
            diff = abs(zeta(1 + probe, ctx).value - truncated(probe).value)
            C = max(C, diff / abs(probe) ** (K + 1))
        approx = truncated(u)
        return Approx(approx.value, approx.err + 2 * C * abs(u) ** (K + 1))


# ---------------------------------------------------------------------------
# Digamma and polygamma
# ---------------------------------------------------------------------------


def _asymptotic_threshold(tol) -> mpf:
    # first omitted term |B_{2K+2}| / ((2K+2) X^(2K+2)) must be below tol / 1000
    K1 = 2 * ASYMPTOTIC_TERMS + 2
    b = abs(bernoulli_mpf(K1))
    X = (b / (K1 * mpf(tol) / 1000)) ** (mpf(1) / K1)
    return max(mpf(10), mpmath.ceil(X))


def digamma(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    """Digamma function psi(x) for real x > 0."""
    with working(ctx):
        x = mpf(x)
        if x <= 0:
            raise OutOfDomain(f"digamma requires x > 0 (got x={mpmath.nstr(x, 10)})")
        X = _asymptotic_threshold(ctx.tol)
        shift = max(0, int(mpmath.ceil(X - x)))
        lift = mpmath.fsum(1 / (x + j) for j in range(shift))
        y = x + shift
        y2 = y * y
        series = mpmath.log(y) - 1 / (2 * y)
        p = y2
        for k in range(1, ASYMPTOTIC_TERMS + 1):
            series -= bernoulli_mpf(2 * k) / (2 * k * p)
            p *= y2
        K1 = 2 * ASYMPTOTIC_TERMS + 2
        trunc = abs(bernoulli_mpf(K1)) / (K1 * y ** K1)
        value = series - lift
        err = trunc + rounding_allowance(max(abs(series), abs(lift)), shift + 2 * ASYMPTOTIC_TERMS)
        return Approx(value, err)


def polygamma(m: int, x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    """psi^(m)(x) for m in {1, 2} and real x > 0."""
    if m not in (1, 2):
        raise UnsupportedIndex(f"polygamma order must be 1 or 2 (got {m})")
    with working(ctx):
        x = mpf(x)
        if x <= 0:
            raise OutOfDomain(f"polygamma requires x > 0 (got x={mpmath.nstr(x, 10)})")
        f = PowerLog(m + 1, [1], shift=x)
        total = euler_maclaurin_tail(f, 0, EM_ORDER, ctx) + f(0)
        sign = (-1) ** (m + 1) * math.factorial(m)
        return total * sign


_zeta_int_cache: dict[tuple[int, float], list[Approx]] = {}


def _zeta_integers(jmax: int, ctx: PrecisionContext) -> list[Approx]:
    key = (ctx.dps, ctx.target_tol)
    vals = _zeta_int_cache.setdefault(key, [Approx.exact(0), Approx.exact(0)])
    while len(vals) <= jmax:
        vals.append(zeta(len(vals), ctx))
    return vals


def psi_series(z, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    """psi(1 + z) = -gamma_0 + sum_{j>=2} (-1)**j zeta(j) z**(j-1) for |z| < 1."""
    with working(ctx):
        z = mpf(z)
        if abs(z) >= 1:
            raise OutOfDisk(f"|z| must be < 1 (got {mpmath.nstr(z, 10)})")
        tol = ctx.tol
        total = -stieltjes_gamma(0, ctx)
        if z == 0:
            return total
        az = abs(z)
        acc = mpf(0)
        zerr = mpf(0)
        j = 2
        while True:
            zj = _zeta_integers(j + 1, ctx)
            term = (-1) ** j * zj[j].value * z ** (j - 1)
            acc += term
            zerr += zj[j].err * az ** (j - 1)
            # zeta(i) <= zeta(j+1) for i > j, so the tail is geometric
            bound = zj[j + 1].value * az**j / (1 - az)
            if bound < tol:
                break
            if j > ctx.max_terms:
                raise TooManyTerms("psi series did not converge")
            j += 1
        return total + Approx(acc, bound + zerr + rounding_allowance(acc, j))
