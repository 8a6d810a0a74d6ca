"""Precision-aware numerical substrate.

All arithmetic is mpmath binary floating point.  Every public routine raises
the working precision to ``ctx.work_digits + GUARD_DIGITS`` for the duration of
the call and returns an :class:`Approx`, a value paired with a non-negative
error budget (truncation bound plus a rounding allowance).  Budgets are
heuristic forward estimates, not interval enclosures.

mpmath keeps its precision in a process-wide context object, so two threads
that evaluate at different ``work_digits`` concurrently will interfere.  Use
processes, or a single precision, for parallel work.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import mpmath
from mpmath import mp, mpf

from .errors import (
    AccelerationStalled,
    DepthExceeded,
    ExtrapolationDiverged,
    NoBracket,
    OrderUnavailable,
    TailNotConverged,
)

GUARD_DIGITS = 15


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrecisionContext:
    """Immutable numerical policy threaded through every evaluation."""

    work_digits: int = 50
    target_tol: float = 1e-30
    max_terms: int = 10**7
    quad_max_depth: int = 40

    def __post_init__(self):
        if int(self.work_digits) != self.work_digits or self.work_digits <= 0:
            raise ValueError("work_digits must be a positive integer")
        if not (self.target_tol > 0 and math.isfinite(self.target_tol)):
            raise ValueError("target_tol must be a positive finite real")
        if self.max_terms <= 0 or self.quad_max_depth <= 0:
            raise ValueError("max_terms and quad_max_depth must be positive")
        needed = 2 * -math.log10(self.target_tol)
        if self.work_digits + GUARD_DIGITS < needed:
            warnings.warn(
                f"work_digits={self.work_digits} is low for target_tol="
                f"{self.target_tol:g} (recommend >= {needed:.0f} effective digits)",
                RuntimeWarning,
                stacklevel=3,
            )

    @property
    def dps(self) -> int:
        """Internal decimal precision including guard digits."""
        return self.work_digits + GUARD_DIGITS

    @property
    def tol(self) -> mpf:
        return mpf(self.target_tol)

    def with_tol(self, target_tol: float) -> "PrecisionContext":
        return PrecisionContext(self.work_digits, target_tol, self.max_terms, self.quad_max_depth)

    def with_digits(self, work_digits: int) -> "PrecisionContext":
        return PrecisionContext(work_digits, self.target_tol, self.max_terms, self.quad_max_depth)

    def as_dict(self) -> dict:
        return {
            "work_digits": self.work_digits,
            "target_tol": self.target_tol,
            "max_terms": self.max_terms,
            "quad_max_depth": self.quad_max_depth,
        }


DEFAULT_CONTEXT = PrecisionContext()


def working(ctx: PrecisionContext):
    """Context manager raising mpmath precision to the context's internal level.

    Never lowers the precision of an enclosing computation.
    """
    return mp.workdps(max(ctx.dps, mp.dps))


def rounding_allowance(magnitude, n_ops: int = 1) -> mpf:
    """Rounding budget for ``n_ops`` operations on quantities of ``magnitude``."""
    return abs(mpf(magnitude)) * n_ops * mpf(10) ** (-(mp.dps - 2)) + mpf(10) ** (-(mp.dps - 2))


@dataclass(frozen=True)
class Approx:
    """A real value with a non-negative error budget."""

    value: mpf
    err: mpf = field(default_factory=lambda: mpf(0))

    def __post_init__(self):
        v = mpf(self.value)
        e = mpf(self.err)
        if not mpmath.isfinite(v):
            raise ArithmeticError(f"non-finite value {v}")
        if not mpmath.isfinite(e) or e < 0:
            raise ArithmeticError(f"invalid error budget {e}")
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "err", e)

    @classmethod
    def exact(cls, value) -> "Approx":
        return cls(mpf(value), mpf(0))

    @property
    def lower(self) -> mpf:
        return self.value - self.err

    @property
    def upper(self) -> mpf:
        return self.value + self.err

    def __float__(self) -> float:
        return float(self.value)

    def _coerce(self, other) -> "Approx":
        return other if isinstance(other, Approx) else Approx(mpf(other), mpf(0))

    def __add__(self, other):
        o = self._coerce(other)
        return Approx(self.value + o.value, self.err + o.err)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Approx(self.value - o.value, self.err + o.err)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Approx(-self.value, self.err)

    def __mul__(self, other):
        o = self._coerce(other)
        err = abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err
        return Approx(self.value * o.value, err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if abs(o.value) <= o.err:
            raise ZeroDivisionError("divisor interval contains zero")
        q = self.value / o.value
        err = (self.err + abs(q) * o.err) / (abs(o.value) - o.err)
        return Approx(q, err)

    def __repr__(self):
        return f"Approx({mpmath.nstr(self.value, 20)} ± {mpmath.nstr(self.err, 3)})"


@dataclass(frozen=True)
class GridSpec:
    """Equispaced abscissae on ``[lo + inset, hi - inset]``."""

    lo: float = 0.0
    hi: float = 1.0
    n_points: int = 10_000
    inset: float = 1e-6

    def __post_init__(self):
        if self.n_points < 2:
            raise ValueError("n_points must be >= 2")
        if not self.inset > 0:
            raise ValueError("inset must be positive")
        if not self.lo + self.inset < self.hi - self.inset:
            raise ValueError("grid is empty after applying the inset")

    def points(self) -> list[mpf]:
        a = mpf(self.lo) + mpf(self.inset)
        b = mpf(self.hi) - mpf(self.inset)
        step = (b - a) / (self.n_points - 1)
        pts = [a + i * step for i in range(self.n_points - 1)]
        pts.append(b)
        return pts


# ---------------------------------------------------------------------------
# Bernoulli numbers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_table(n_max: int) -> tuple[Fraction, ...]:
    # B_0..B_n_max from sum_{j<=m} C(m+1, j) B_j = 0, with B_1 = -1/2
    B = [Fraction(1)]
    for m in range(1, n_max + 1):
        acc = Fraction(0)
        binom = 1
        for j in range(m):
            acc += binom * B[j]
            binom = binom * (m + 1 - j) // (j + 1)
        B.append(-acc / (m + 1))
    return tuple(B)


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (convention B_1 = -1/2)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _bernoulli_table(max(30, n))[n]


def bernoulli_mpf(n: int) -> mpf:
    b = bernoulli(n)
    return mpf(b.numerator) / b.denominator


# Initialise the read-only cache before any concurrent access.
_bernoulli_table(30)


# ---------------------------------------------------------------------------
# Series
# ---------------------------------------------------------------------------


def sum_with_tail(
    term: Callable[[int], object],
    tail_bound: Callable[[int], object],
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    start: int = 1,
) -> Approx:
    """Sum ``term(n)`` for ``n >= start`` until ``tail_bound(N) < ctx.target_tol``.

    ``tail_bound(N)`` must bound ``|sum_{n>N} term(n)|`` and be non-increasing.
    """
    with working(ctx):
        tol = ctx.tol
        total = mpf(0)
        biggest = mpf(0)
        n = start
        while True:
            total += term(n)
            biggest = max(biggest, abs(total))
            tail = mpf(tail_bound(n))
            if tail < tol:
                break
            if n - start + 1 >= ctx.max_terms:
                raise TailNotConverged(
                    f"tail bound {mpmath.nstr(tail, 5)} still above {ctx.target_tol:g} "
                    f"after {ctx.max_terms} terms"
                )
            n += 1
        err = tail + rounding_allowance(biggest, n - start + 1)
        return Approx(+total, err)


@lru_cache(maxsize=64)
def _cvz_weights(n: int, prec: int) -> tuple[mpf, ...]:
    with mp.workprec(prec):
        d = (3 + mpmath.sqrt(8)) ** n
        d = (d + 1 / d) / 2
        b = mpf(-1)
        c = -d
        out = []
        for k in range(n):
            c = b - c
            out.append(c / d)
            b = (k + n) * (k - n) * b / ((k + mpf(0.5)) * (k + 1))
        return tuple(out)


def alternating_weights(n: int) -> tuple[mpf, ...]:
    """Weights w_k with ``sum_k w_k a_k ~ sum_{k>=0} (-1)^k a_k`` (Cohen, Rodriguez Villegas, Zagier).

    Cached per ``(n, precision)``.  The relative error for totally monotone
    ``a_k`` is about ``2 * 5.83**-n``.
    """
    return _cvz_weights(n, mp.prec)


def alternating_terms_for(tol) -> int:
    return int(math.ceil(-math.log(float(tol)) / math.log(3 + math.sqrt(8)))) + 4


def accelerated_alternating_sum(
    coeff: Callable[[int], object],
    ctx: PrecisionContext = DEFAULT_CONTEXT,
) -> Approx:
    """Accelerated value of ``sum_{n>=1} (-1)**(n-1) * coeff(n)``.

    The returned error is the distance between two estimates with different
    numbers of terms; if refining does not shrink that distance the series is
    not amenable to acceleration and AccelerationStalled is raised.
    """
    with working(ctx):
        tol = ctx.tol
        cache: list[mpf] = []

        def estimate(n):
            while len(cache) < n:
                cache.append(mpf(coeff(len(cache) + 1)))
            w = alternating_weights(n)
            return mpmath.fsum(wk * ak for wk, ak in zip(w, cache))

        n = alternating_terms_for(tol)
        prev_est = estimate(n)
        prev_diff = None
        while True:
            m = n + max(6, n // 4)
            est = estimate(m)
            diff = abs(est - prev_est)
            scale = max(abs(est), max(abs(a) for a in cache[:m]))
            rnd = rounding_allowance(scale, m)
            if diff <= tol or diff <= rnd:
                return Approx(est, diff + rnd)
            if prev_diff is not None and diff >= prev_diff:
                raise AccelerationStalled(
                    f"estimates stopped contracting at {m} terms (|diff|={mpmath.nstr(diff, 3)})"
                )
            if m > ctx.max_terms or m > 20000:
                raise AccelerationStalled(f"no convergence within {m} terms")
            prev_est, prev_diff, n = est, diff, m


# ---------------------------------------------------------------------------
# Euler-Maclaurin
# ---------------------------------------------------------------------------


class SmoothFunction:
    """A summand with analytic derivatives and a closed-form tail integral.

    Subclasses implement :meth:`derivative` (``k = 0`` is the value),
    :meth:`tail_integral` and set ``max_derivative``.
    """

    max_derivative: int = 0

    def __call__(self, x):
        return self.derivative(x, 0)

    def derivative(self, x, k: int):
        raise NotImplementedError

    def tail_integral(self, N):
        raise NotImplementedError


class PowerLog(SmoothFunction):
    """``f(x) = (x + shift)**(-a) * sum_i coeffs[i] * log(x + shift)**i``.

    The k-th derivative has the same shape with exponent ``a + k`` and a new
    polynomial in the logarithm, which is what makes Euler-Maclaurin cheap.
    ``tail_integral`` for ``a < 1`` returns the analytically continued value.
    """

    max_derivative = 10**6

    def __init__(self, a, coeffs: Sequence = (1,), shift=0):
        self.a = mpf(a)
        self.coeffs = [mpf(c) for c in coeffs]
        self.shift = mpf(shift)
        self._polys = [self.coeffs]

    def _poly(self, k: int) -> list[mpf]:
        while len(self._polys) <= k:
            j = len(self._polys) - 1
            p = self._polys[j]
            ex = self.a + j
            q = [-ex * c for c in p] + [mpf(0)]
            for i in range(1, len(p)):
                q[i - 1] += i * p[i]
            while len(q) > 1 and q[-1] == 0:
                q.pop()
            self._polys.append(q)
        return self._polys[k]

    def derivative(self, x, k: int):
        y = mpf(x) + self.shift
        L = mpmath.log(y)
        p = self._poly(k)
        acc = mpf(0)
        for c in reversed(p):
            acc = acc * L + c
        return acc * y ** (-(self.a + k))

    def tail_integral(self, N):
        y = mpf(N) + self.shift
        L = mpmath.log(y)
        am1 = self.a - 1
        if am1 == 0:
            raise OrderUnavailable("tail integral diverges for exponent 1")
        total = mpf(0)
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            # int_y^inf t^-a log^i t dt = y^(1-a) sum_j i!/(i-j)! log^(i-j) y / (a-1)^(j+1)
            s = mpf(0)
            fall = mpf(1)
            for j in range(i + 1):
                s += fall * L ** (i - j) / am1 ** (j + 1)
                fall *= i - j
            total += c * s
        return total * y ** (1 - self.a)


def em_correction(f: SmoothFunction, x, j: int) -> mpf:
    """The j-th Euler-Maclaurin correction B_2j/(2j)! f^(2j-1)(x)."""
    return bernoulli_mpf(2 * j) / mpmath.factorial(2 * j) * f.derivative(x, 2 * j - 1)


def euler_maclaurin_tail(
    f,
    N: int,
    order: int,
    ctx: PrecisionContext | None = None,
) -> Approx:
    """``sum_{n>N} f(n)`` via Euler-Maclaurin with ``order`` Bernoulli corrections.

    Without a context the formula is applied at ``N`` as is.  With a context,
    terms ``f(N+1), ..., f(M)`` are summed explicitly and the formula applied
    at ``M``, where ``M`` is the first base point whose first omitted
    correction falls below ``ctx.target_tol``.  The error is twice that omitted
    correction's magnitude: the remainder after ``order`` corrections is the
    next correction plus a smaller remainder of the same size once the
    derivatives have settled in sign.
    """
    if not isinstance(f, SmoothFunction):
        raise OrderUnavailable("no derivative table supplied for this summand")
    if order < 0 or 2 * order + 1 > f.max_derivative:
        raise OrderUnavailable(f"order {order} needs {2 * order + 1} derivatives")
    c = ctx or DEFAULT_CONTEXT
    with working(c):
        M = int(N)
        head = mpf(0)
        n_terms = 0

        def omitted(m):
            return 2 * abs(em_correction(f, m, order + 1))

        if ctx is not None:
            tol = ctx.tol
            step = 1
            while omitted(M) >= tol:
                for n in range(M + 1, M + step + 1):
                    head += f(n)
                n_terms += step
                M += step
                step = min(2 * step, 4096)
                if n_terms > ctx.max_terms:
                    raise TailNotConverged("Euler-Maclaurin base point did not settle")
        tail = f.tail_integral(M) - f(M) / 2
        for j in range(1, order + 1):
            tail -= em_correction(f, M, j)
        total = head + tail
        err = omitted(M) + rounding_allowance(max(abs(head), abs(tail)), n_terms + order + 2)
        return Approx(total, err)


# ---------------------------------------------------------------------------
# Quadrature (tanh-sinh)
# ---------------------------------------------------------------------------

_TS_TMAX = 8  # nodes beyond t = 8 sit within exp(-4600) of the endpoints


@lru_cache(maxsize=256)
def _ts_level(level: int, prec: int) -> tuple[tuple[mpf, mpf], ...]:
    """New tanh-sinh nodes at a refinement level as (complement, weight) pairs.

    ``complement`` is ``1 - x_k`` computed without cancellation; weights
    exclude the step size.
    """
    with mp.workprec(prec):
        h = mpf(2) ** -level
        if level == 0:
            ks = range(1, _TS_TMAX + 1)
        else:
            ks = range(1, _TS_TMAX * 2**level + 1, 2)
        half_pi = mpmath.pi / 2
        out = []
        for k in ks:
            t = k * h
            u = half_pi * mpmath.sinh(t)
            e = mpmath.exp(-2 * u)
            comp = 2 * e / (1 + e)
            w = half_pi * mpmath.cosh(t) * 4 * e / (1 + e) ** 2
            out.append((comp, w))
        return tuple(out)


def _ts_level_sum(f, a, b, level, scale_tol):
    half = (b - a) / 2
    acc = mpf(0)
    if level == 0:
        acc = mpmath.pi / 2 * f((a + b) / 2)
    quiet = 0
    for comp, w in _ts_level(level, mp.prec):
        d = half * comp
        contrib = w * (f(a + d) + f(b - d))
        acc += contrib
        if abs(contrib) < scale_tol:
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
    return acc


def _tanh_sinh(f, a, b, ctx: PrecisionContext):
    tol = ctx.tol
    eps = mpf(10) ** (-mp.dps)
    h = mpf(1)
    raw = _ts_level_sum(f, a, b, 0, eps)
    estimate = raw * h * (b - a) / 2
    prev_diff = None
    for level in range(1, ctx.quad_max_depth + 1):
        h = mpf(2) ** -level
        scale_tol = eps * (abs(raw) + eps)
        raw += _ts_level_sum(f, a, b, level, scale_tol)
        new = raw * h * (b - a) / 2
        diff = abs(new - estimate)
        estimate = new
        if level >= 3 and (diff < tol * mpf("1e-3") or diff <= rounding_allowance(new, 10)):
            return estimate, diff + rounding_allowance(new, 2 ** (level + 4))
        # once converging, the error roughly squares per level
        if level >= 4 and prev_diff is not None and diff < tol and diff ** 2 / prev_diff < tol * mpf("1e-3"):
            return estimate, diff + rounding_allowance(new, 2 ** (level + 4))
        prev_diff = diff
        if level >= 12:
            break
    raise DepthExceeded(
        f"tanh-sinh did not reach {ctx.target_tol:g} on [{mpmath.nstr(a, 8)}, {mpmath.nstr(b, 8)}]"
        f" (last difference {mpmath.nstr(diff, 3)})"
    )


def adaptive_quadrature(
    f: Callable,
    a,
    b,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    breakpoints: Iterable = (),
    left_power: int = 1,
) -> Approx:
    """Integrate ``f`` over ``[a, b]`` by tanh-sinh with level refinement.

    Endpoint singularities that are integrable (algebraic or logarithmic) are
    handled by the rule itself.  ``left_power = k > 1`` additionally maps
    ``t = a + (b - a) u**k`` to soften a strong singularity at ``a``.
    ``breakpoints`` split the interval at interior points of non-smoothness.
    """
    with working(ctx):
        a = mpf(a)
        b = mpf(b)
        if a == b:
            return Approx.exact(0)
        if b < a:
            r = adaptive_quadrature(f, b, a, ctx, breakpoints, left_power)
            return -r
        if left_power != 1:
            k = int(left_power)
            width = b - a
            inner = lambda u: f(a + width * u**k) * k * u ** (k - 1) * width  # noqa: E731
            knots = [mpf(0)] + sorted(((mpf(p) - a) / width) ** (mpf(1) / k) for p in breakpoints if a < p < b) + [mpf(1)]
            g = inner
        else:
            knots = [a] + sorted(mpf(p) for p in breakpoints if a < p < b) + [b]
            g = f
        value = mpf(0)
        err = mpf(0)
        n = len(knots) - 1
        with warnings.catch_warnings():
            # splitting the budget is internal; the caller's context was already checked
            warnings.simplefilter("ignore", RuntimeWarning)
            sub = ctx.with_tol(ctx.target_tol / n) if n > 1 else ctx
        for lo, hi in zip(knots[:-1], knots[1:]):
            v, e = _tanh_sinh(g, mpf(lo), mpf(hi), sub)
            value += v
            err += e
        return Approx(value, err)


# ---------------------------------------------------------------------------
# Root finding and extrapolation
# ---------------------------------------------------------------------------


def brent_root(f: Callable, a, b, tol, max_iter: int = 500) -> mpf:
    """Brent's method on a sign-changing bracket; the result stays inside ``[a, b]``."""
    a = mpf(a)
    b = mpf(b)
    lo, hi = min(a, b), max(a, b)
    tol = mpf(tol)
    fa = mpf(f(a))
    fb = mpf(f(b))
    if fa == 0:
        return a
    if fb == 0:
        return b
    if fa * fb > 0:
        raise NoBracket(f"f has the same sign at both ends of [{a}, {b}]")
    c, fc = a, fa
    d = e = b - a
    eps = mpf(10) ** (-mp.dps)
    for _ in range(max_iter):
        if fb * fc > 0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2 * eps * abs(b) + tol / 2
        xm = (c - b) / 2
        if abs(xm) <= tol1 or fb == 0:
            return min(max(b, lo), hi)
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2 * xm * s
                q = 1 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2 * xm * q * (q - r) - (b - a) * (r - 1))
                q = (q - 1) * (r - 1) * (s - 1)
            if p > 0:
                q = -q
            p = abs(p)
            if 2 * p < min(3 * xm * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = xm
        else:
            d = e = xm
        a, fa = b, fb
        b = b + d if abs(d) > tol1 else b + (tol1 if xm > 0 else -tol1)
        fb = mpf(f(b))
    return min(max(b, lo), hi)


def extrapolate_to_zero(hs: Sequence, values: Sequence, order: int | None = None) -> Approx:
    """Polynomial (Richardson/Neville) extrapolation of ``values(h)`` to ``h = 0``.

    Uses the last ``order + 1`` samples (all of them by default).  The error
    estimate is the change between the two highest-order extrapolants.
    """
    hs = [mpf(h) for h in hs]
    ys = [mpf(y) for y in values]
    if len(hs) != len(ys) or len(hs) < 2:
        raise ValueError("need at least two samples")
    k = len(hs) if order is None else order + 1
    hs, ys = hs[-k:], ys[-k:]
    # Neville table evaluated at 0; keep the top entries of the last two columns
    table = list(ys)
    tops = [table[-1]]
    for m in range(1, k):
        table = [
            (hs[i + m] * table[i] - hs[i] * table[i + 1]) / (hs[i + m] - hs[i])
            for i in range(k - m)
        ]
        tops.append(table[-1])
    best = tops[-1]
    err = abs(tops[-1] - tops[-2])
    if not mpmath.isfinite(best) or not mpmath.isfinite(err):
        raise ExtrapolationDiverged("non-finite extrapolant")
    return Approx(best, err)
