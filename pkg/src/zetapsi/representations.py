"""Integral representations of zeta, psi and F = zeta(s) - psi(1-s).

Two building blocks carry everything here:

``sawtooth_integral``
    int_1^inf ({t} - 1/2) t**-a P(log t) dt for a polynomial P.  Each unit
    interval is integrated exactly from elementary antiderivatives of
    t**-b log**i t; past a cut-off N the remaining integral is expanded by
    repeatedly integrating the periodic Bernoulli functions by parts.

``unit_log_integral``
    int_0^1 t**(1-s) log(t)**j / (1 - t) dt by tanh-sinh quadrature.  The
    t**-s log**j t singular part of the original (0,1) integrands integrates
    in closed form to (-1)**j j! / (1-s)**(j+1) and cancels the pole terms
    1/(s-1), 1/(s-1)**2, 2/(s-1)**3 exactly, so it is removed before any
    arithmetic happens.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import mpmath
from mpmath import mp, mpf

from .errors import DepthExceeded, OutOfDomain, PoleAtOne
from .numerics import (
    DEFAULT_CONTEXT,
    Approx,
    PowerLog,
    PrecisionContext,
    _ts_level,
    adaptive_quadrature,
    bernoulli_mpf,
    rounding_allowance,
    working,
)
from .special_fn import stieltjes_gamma

SAWTOOTH_TERMS = 15


@dataclass(frozen=True)
class FractionalPartIntegrand:
    """Integrand family ({t} - 1/2) * Q_k(s, log t) / t**(s+1) of F^(k)."""

    s: mpf
    derivative_order: int = 0

    def __post_init__(self):
        if self.derivative_order not in (0, 1, 2):
            raise ValueError("derivative_order must be 0, 1 or 2")
        if not 0 < self.s < 1:
            raise OutOfDomain("s must lie in (0, 1)")

    def log_poly(self) -> list[mpf]:
        """Coefficients of Q_k in powers of log t."""
        s = mpf(self.s)
        if self.derivative_order == 0:
            return [mpf(1)]
        if self.derivative_order == 1:
            return [mpf(-1), s]  # s log t - 1
        return [mpf(0), mpf(2), -s]  # (2 - s log t) log t

    def __call__(self, t):
        t = mpf(t)
        L = mpmath.log(t)
        q = mpf(0)
        for c in reversed(self.log_poly()):
            q = q * L + c
        return (mpmath.frac(t) - mpf(1) / 2) * q / t ** (self.s + 1)


def _antiderivative_poly(b, L_coeffs: Sequence) -> list[mpf]:
    """Polynomial Q in log t with d/dt [t**(1-b) Q(log t)] = t**-b P(log t), b != 1."""
    one_minus_b = 1 - b
    out = [mpf(0)] * len(L_coeffs)
    for i, c in enumerate(L_coeffs):
        if c == 0:
            continue
        fall = mpf(1)
        for j in range(i + 1):
            out[i - j] += c * (-1) ** j * fall / one_minus_b ** (j + 1)
            fall *= i - j
    return out


def _horner(coeffs: Sequence, x) -> mpf:
    acc = mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


_int_logs: dict[tuple[int, int], mpf] = {}


def _log_int(n: int) -> mpf:
    key = (n, mpmath.mp.prec)
    v = _int_logs.get(key)
    if v is None:
        v = _int_logs[key] = mpmath.log(n)
    return v


def sawtooth_tail(a, coeffs: Sequence, N: int) -> tuple[mpf, mpf]:
    """int_N^inf ({t} - 1/2) f(t) dt for f = t**-a P(log t).

    Returns (value, magnitude of the first omitted term).
    """
    f = PowerLog(a, coeffs)
    total = mpf(0)
    for k in range(1, SAWTOOTH_TERMS + 1):
        total -= bernoulli_mpf(2 * k) / mpmath.factorial(2 * k) * f.derivative(N, 2 * k - 2)
    k = SAWTOOTH_TERMS + 1
    omitted = abs(bernoulli_mpf(2 * k) / mpmath.factorial(2 * k) * f.derivative(N, 2 * k - 2))
    return total, omitted


def sawtooth_head(a, coeff_sets: Sequence[Sequence], N: int) -> list[tuple[mpf, mpf]]:
    """int_1^N ({t} - 1/2) t**-a P(log t) dt for each P, from exact per-interval antiderivatives.

    On [n, n+1] the integrand is (t - n - 1/2) t**-a P(log t); with A1, A0 the
    antiderivatives of t**(1-a) P and t**-a P the piece is
    [A1 - (n + 1/2) A0] evaluated between n and n+1.  Returns (value, largest
    antiderivative magnitude) per polynomial, the latter for rounding budgets.
    """
    a = mpf(a)
    # A1(t) = t**(2-a) q1(log t), A0(t) = t**(1-a) q0(log t)
    polys = [(_antiderivative_poly(a - 1, c), _antiderivative_poly(a, c)) for c in coeff_sets]
    totals = [mpf(0)] * len(polys)
    bigs = [mpf(0)] * len(polys)
    prev = [(_horner(q1, 0), _horner(q0, 0)) for q1, q0 in polys]
    for n in range(1, N):
        m = n + 1
        L = _log_int(m)
        p = mpmath.exp((1 - a) * L)
        mid = n + mpf(1) / 2
        for i, (q1, q0) in enumerate(polys):
            A0 = p * _horner(q0, L)
            A1 = m * p * _horner(q1, L)
            A1_prev, A0_prev = prev[i]
            totals[i] += (A1 - A1_prev) - mid * (A0 - A0_prev)
            bigs[i] = max(bigs[i], abs(A1), m * abs(A0))
            prev[i] = (A1, A0)
    return list(zip(totals, bigs))


def sawtooth_integrals(a, coeff_sets: Sequence[Sequence], ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[Approx]:
    """int_1^inf ({t} - 1/2) t**-a P(log t) dt for several P sharing one exponent a.

    Requires a > 0 and a not in {1, 2}.
    """
    with working(ctx):
        a = mpf(a)
        tol = ctx.tol
        N = 32
        while True:
            tails = [sawtooth_tail(a, c, N) for c in coeff_sets]
            if all(om < tol / 100 for _, om in tails):
                break
            N *= 2
            if N > ctx.max_terms:
                raise OutOfDomain("sawtooth tail expansion does not converge")
        heads = sawtooth_head(a, coeff_sets, N)
        return [
            Approx(h + t, om + rounding_allowance(big, 4 * N))
            for (h, big), (t, om) in zip(heads, tails)
        ]


def sawtooth_integral(a, coeffs: Sequence, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    """int_1^inf ({t} - 1/2) t**-a P(log t) dt for real a > 0, a != 1, 2."""
    return sawtooth_integrals(a, [coeffs], ctx)[0]


_node_logs: dict[tuple[mpf, int], tuple[mpf, mpf]] = {}


def _node_data(t) -> tuple[mpf, mpf]:
    # quadrature nodes on [0, 1] repeat across calls; memoise log t and 1/(1-t)
    key = (t, mpmath.mp.prec)
    v = _node_logs.get(key)
    if v is None:
        v = _node_logs[key] = (mpmath.log(t), 1 / (1 - t))
    return v


class _UnitKernel:
    """t**(1-s) log(t)**j / (1-t) with the power memoised per node, so the
    j = 1 and j = 2 integrals at one s cost a single exponential per node."""

    def __init__(self, s):
        self.e = 1 - mpf(s)
        self._pow: dict[mpf, mpf] = {}

    def integrand(self, j: int):
        limit = mpf(-1) if j == 1 else mpf(0)

        def f(t):
            if t == 1:
                return limit
            if t == 0:
                return mpf(0)
            L, inv = _node_data(t)
            p = self._pow.get(t)
            if p is None:
                p = self._pow[t] = mpmath.exp(self.e * L)
            return p * L**j * inv

        return f


def unit_log_integral(s, j: int, ctx: PrecisionContext = DEFAULT_CONTEXT, kernel: _UnitKernel | None = None) -> Approx:
    """int_0^1 t**(1-s) log(t)**j / (1 - t) dt for j in {1, 2}, s < 2."""
    if j not in (1, 2):
        raise ValueError("j must be 1 or 2")
    with working(ctx):
        kernel = kernel or _UnitKernel(s)
        return adaptive_quadrature(kernel.integrand(j), 0, 1, ctx)


@lru_cache(maxsize=64)
def _unit_nodes(level: int, prec: int) -> tuple[tuple[mpf, mpf, mpf, mpf, mpf], ...]:
    """Tanh-sinh nodes on [0, 1] at one level as (w, log t, 1/(1-t)) for the
    left and right node of each pair, with negligible weights dropped."""
    with mpmath.workprec(prec):
        cut = mpf(2) ** -(prec + 40)
        rows = []
        if level == 0:
            half = mpf(1) / 2
            L = mpmath.log(half)
            rows.append((mpmath.pi / 4, L, mpf(2), L, mpf(2)))
        for comp, w in _ts_level(level, prec):
            if w < cut:
                break
            d = comp / 2
            rows.append((w, mpmath.log(d), 1 / (1 - d), mpmath.log1p(-d), 1 / d))
        return tuple(rows)


def unit_log_integrals(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple[Approx, Approx]:
    """(int_0^1 t**(1-s) log(t) / (1-t) dt, int_0^1 t**(1-s) log(t)**2 / (1-t) dt)
    from one tanh-sinh pass sharing t**(1-s) between the two integrands."""
    with working(ctx):
        e = 1 - mpf(s)
        if not e > -1:
            raise OutOfDomain("the integrals need s < 2")
        tol = ctx.tol
        h = mpf(1)
        raw1 = raw2 = mpf(0)
        prev = None
        for level in range(0, ctx.quad_max_depth + 1):
            a1 = a2 = mpf(0)
            for w, La, ia, Lb, ib in _unit_nodes(level, mp.prec):
                pa = mpmath.exp(e * La) * ia * La
                pb = mpmath.exp(e * Lb) * ib * Lb
                a1 += w * (pa + pb)
                a2 += w * (pa * La + pb * Lb)
            raw1 += a1
            raw2 += a2
            if level > 0:
                h /= 2
            est = (raw1 * h / 2, raw2 * h / 2)
            if prev is not None and level >= 3:
                d = max(abs(est[0] - prev[0]), abs(est[1] - prev[1]))
                slack = max(rounding_allowance(est[0], 10), rounding_allowance(est[1], 10))
                if d < tol * mpf("1e-3") or d <= slack:
                    n_nodes = 2 ** (level + 4)
                    return tuple(
                        Approx(v, d + rounding_allowance(v, n_nodes)) for v in est
                    )
            prev = est
        raise DepthExceeded(f"kernel integrals did not reach {ctx.target_tol:g} at s={mpmath.nstr(mpf(s), 8)}")


def _harmonic_integral(x, ctx: PrecisionContext) -> Approx:
    """int_0^1 (1 - t**x) / (1 - t) dt for x > 0 (equals psi(x+1) + gamma_0)."""
    x = mpf(x)

    def integrand(t):
        u = 1 - t
        if u == 0:
            return x
        if t == 0:
            return mpf(1)
        return -mpmath.expm1(x * mpmath.log(t)) / u

    return adaptive_quadrature(integrand, 0, 1, ctx)


# ---------------------------------------------------------------------------
# Public representations
# ---------------------------------------------------------------------------


def _check_open_unit(s) -> mpf:
    s = mpf(s)
    if not 0 < s < 1:
        raise OutOfDomain(f"s must lie in (0, 1) (got s={mpmath.nstr(s, 10)})")
    return s


def zeta_via_stieltjes_integral(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    """zeta(s) = 1/(s-1) + 1/2 - s int_1^inf ({t} - 1/2) t**-(s+1) dt, s > -1."""
    with working(ctx):
        s = mpf(s)
        if s == 1:
            raise PoleAtOne()
        if s <= -1:
            raise OutOfDomain(f"representation valid for s > -1 (got s={mpmath.nstr(s, 10)})")
        base = Approx(1 / (s - 1) + mpf(1) / 2, rounding_allowance(1 / (s - 1)))
        if s == 0:
            return base
        return base - s * sawtooth_integral(s + 1, [1], ctx)


def digamma_via_integral(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    """psi(x) = -gamma_0 + int_0^1 (1 - t**(x-1)) / (1 - t) dt, x > 0.

    For x < 1 the t**(x-1) endpoint singularity is integrated in closed form
    (it contributes -1/x) and the regular remainder is integrated numerically.
    """
    with working(ctx):
        x = mpf(x)
        if x <= 0:
            raise OutOfDomain(f"digamma requires x > 0 (got x={mpmath.nstr(x, 10)})")
        g0 = stieltjes_gamma(0, ctx)
        if x == 1:
            return -g0
        if x < 1:
            return _harmonic_integral(x, ctx) - g0 - Approx(1 / x, rounding_allowance(1 / x))
        return _harmonic_integral(x - 1, ctx) - g0


def F_direct(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    """F(s) from the two integral representations.

    1/2 - s*S0 + 1/(s-1) - int_0^1 (1 - t**-s)/(1-t) dt + gamma_0, where the
    (0,1) integral equals -1/(1-s) + int_0^1 (1 - t**(1-s))/(1-t) dt, so the
    two pole terms cancel identically.
    """
    with working(ctx):
        s = _check_open_unit(s)
        S0 = sawtooth_integral(s + 1, [1], ctx)
        R0 = _harmonic_integral(1 - s, ctx)
        return Approx.exact(mpf(1) / 2) - s * S0 - R0 + stieltjes_gamma(0, ctx)


def F_prime_integral(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    """F'(s) = int_1^inf ({t}-1/2)(s log t - 1) t**-(s+1) dt - 1/(s-1)**2
    - int_0^1 t**-s log t / (1-t) dt."""
    with working(ctx):
        s = _check_open_unit(s)
        S1 = sawtooth_integral(s + 1, FractionalPartIntegrand(s, 1).log_poly(), ctx)
        return S1 - unit_log_integral(s, 1, ctx)


def J_integral(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    """J(s) = int_1^inf ({t}-1/2)(2 - s log t) log t / t**(s+1) dt."""
    with working(ctx):
        s = _check_open_unit(s)
        return sawtooth_integral(s + 1, FractionalPartIntegrand(s, 2).log_poly(), ctx)


def P_integral(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    """P(s) = 2/(s-1)**3 + int_0^1 t**-s log(t)**2 / (1-t) dt (poles cancelled)."""
    with working(ctx):
        s = _check_open_unit(s)
        return unit_log_integral(s, 2, ctx)


@dataclass(frozen=True)
class SecondDerivativeParts:
    J: Approx
    P: Approx

    @property
    def total(self) -> Approx:
        return self.J + self.P


def F_second_parts(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> SecondDerivativeParts:
    with working(ctx):
        return SecondDerivativeParts(J_integral(s, ctx), P_integral(s, ctx))


def F_second_integral(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    """F''(s) = J(s) + P(s)."""
    return F_second_parts(s, ctx).total


def F_derivatives_integral(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple[Approx, SecondDerivativeParts]:
    """(F'(s), parts of F''(s)) with the shared powers computed once."""
    with working(ctx):
        s = _check_open_unit(s)
        S1, J = sawtooth_integrals(
            s + 1,
            [FractionalPartIntegrand(s, 1).log_poly(), FractionalPartIntegrand(s, 2).log_poly()],
            ctx,
        )
        R1, R2 = unit_log_integrals(s, ctx)
        return S1 - R1, SecondDerivativeParts(J, R2)


def cubic_kernel_identity(
    f: Callable,
    df: Callable,
    d2f: Callable,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
) -> tuple[Approx, Approx]:
    """Both sides of the cubic-kernel integration-by-parts identity on [0, 1].

    LHS = int_0^1 (u - 1/2) f(u) du
    RHS = (f(1) - f(0))/8 - (f'(1) + f'(0))/48 + int_0^1 (u - 1/2)**3 / 6 f''(u) du
    """
    with working(ctx):
        half = mpf(1) / 2
        lhs = adaptive_quadrature(lambda u: (u - half) * f(u), 0, 1, ctx)
        boundary = (mpf(f(1)) - mpf(f(0))) / 8 - (mpf(df(1)) + mpf(df(0))) / 48
        kernel = adaptive_quadrature(lambda u: (u - half) ** 3 / 6 * d2f(u), 0, 1, ctx)
        rhs = kernel + Approx(boundary, rounding_allowance(boundary, 6))
        return lhs, rhs


def truncation_remainder(s, order: int, T: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple[Approx, mpf]:
    """Remainder of the [1, inf) integral of order ``order`` cut at ``T``, and the bound
    1/2 max(1, s log T + 1) T**-s / s that it should stay below."""
    with working(ctx):
        s = _check_open_unit(s)
        coeffs = FractionalPartIntegrand(s, order).log_poly()
        tail, omitted = sawtooth_tail(s + 1, coeffs, T)
        bound = max(mpf(1), s * mpmath.log(T) + 1) * T ** (-s) / (2 * s)
        return Approx(tail, omitted), bound
