"""Two-sided linear bounds for F(s) = zeta(s) - psi(1-s) on (0, 1).

Lower bound ``s < F(s)``, upper bound ``F(s) < b' s + b`` with
``b' = gamma_0 + 1/2`` and ``b = gamma_0 - 1/2``, plus the equivalent form
with ``pi cot(pi s)`` obtained from the digamma reflection identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpf

from .errors import NoBracket, OutOfDomain, ViolationFound
from .numerics import (
    DEFAULT_CONTEXT,
    Approx,
    GridSpec,
    PrecisionContext,
    brent_root,
    extrapolate_to_zero,
    rounding_allowance,
    working,
)
from .report import BoundEntry, CertificateReport
from .representations import F_derivatives_integral, F_direct, F_prime_integral, F_second_integral
from .special_fn import digamma, polygamma, stieltjes_gamma, zeta, zeta_jet

CITE_COR = "s < zeta(s) - psi(1-s) < (gamma_0 + 1/2) s + gamma_0 - 1/2"
CITE_CONJ = "pi cot(pi s) + s < zeta(s) - psi(s) < pi cot(pi s) + b's + b"


@dataclass(frozen=True)
class LinearBound:
    slope: Approx
    intercept: Approx

    def __post_init__(self):
        if abs((self.slope - self.intercept).value - 1) > self.slope.err + self.intercept.err + mpf(10) ** -40:
            raise ValueError("slope - intercept must equal 1")

    @classmethod
    def from_context(cls, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "LinearBound":
        g0 = stieltjes_gamma(0, ctx)
        half = Approx.exact(mpf(1) / 2)
        return cls(g0 + half, g0 - half)

    def __call__(self, s) -> Approx:
        return self.slope * Approx.exact(s) + self.intercept


@dataclass(frozen=True)
class MinimumReport:
    s0: mpf
    G_at_s0: Approx
    bracket: tuple[mpf, mpf]


def _check(s) -> mpf:
    s = mpf(s)
    if not 0 < s < 1:
        raise OutOfDomain(f"s must lie in (0, 1) (got s={mpmath.nstr(s, 10)})")
    return s


def F(s, ctx: PrecisionContext = DEFAULT_CONTEXT, path: str = "composition") -> Approx:
    """F(s) = zeta(s) - psi(1-s); ``path='direct'`` uses the integral representations."""
    with working(ctx):
        s = _check(s)
        if path == "direct":
            return F_direct(s, ctx)
        return zeta(s, ctx) - digamma(1 - s, ctx)


def F_prime(s, ctx: PrecisionContext = DEFAULT_CONTEXT, path: str = "composition") -> Approx:
    """F'(s) = zeta'(s) + psi'(1-s)."""
    with working(ctx):
        s = _check(s)
        if path == "direct":
            return F_prime_integral(s, ctx)
        return zeta_jet(s, 1, ctx)[1] + polygamma(1, 1 - s, ctx)


def F_second(s, ctx: PrecisionContext = DEFAULT_CONTEXT, path: str = "composition") -> Approx:
    """F''(s) = zeta''(s) - psi''(1-s)."""
    with working(ctx):
        s = _check(s)
        if path == "direct":
            return F_second_integral(s, ctx)
        return zeta_jet(s, 2, ctx)[2] - polygamma(2, 1 - s, ctx)


def F_derivatives(s, ctx: PrecisionContext = DEFAULT_CONTEXT, path: str = "composition") -> tuple[Approx, Approx]:
    """(F'(s), F''(s)) sharing the zeta jet or the integral workspace."""
    with working(ctx):
        s = _check(s)
        if path == "direct":
            d1, parts = F_derivatives_integral(s, ctx)
            return d1, parts.total
        jet = zeta_jet(s, 2, ctx)
        return jet[1] + polygamma(1, 1 - s, ctx), jet[2] - polygamma(2, 1 - s, ctx)


def G(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    return F(s, ctx) - Approx.exact(s)


def G_prime(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Approx:
    return F_prime(s, ctx) - Approx.exact(1)


def _worst(entries):
    return min(entries, key=lambda x: x[1].value)


def verify_bounds(grid: GridSpec, ctx: PrecisionContext = DEFAULT_CONTEXT) -> CertificateReport:
    """Check ``s + err < F(s)`` and ``F(s) + err < b's + b`` at every abscissa.

    Raises ViolationFound (carrying the report) at the first failing point.
    """
    if grid.lo < 0 or grid.hi > 1:
        raise OutOfDomain("grid must lie inside (0, 1)")
    with working(ctx):
        line = LinearBound.from_context(ctx)
        lower, upper = [], []
        for s in grid.points():
            f = F(s, ctx)
            lo = f - Approx.exact(s)
            up = line(s) - f
            lower.append((s, lo))
            upper.append((s, up))
            for label, slack in (("lower", lo), ("upper", up)):
                if not slack.value - slack.err > 0:
                    raise ViolationFound(
                        f"{label} bound violated at s={mpmath.nstr(s, 12)}: slack "
                        f"{mpmath.nstr(slack.value, 5)} with local err {mpmath.nstr(slack.err, 3)}",
                        s=s,
                        slack=slack.value,
                        err=slack.err,
                    )
        s_lo, w_lo = _worst(lower)
        s_up, w_up = _worst(upper)
        entries = (
            BoundEntry(
                "lower_slack_min", w_lo, ">", 0,
                f"{CITE_COR}; worst at s={mpmath.nstr(s_lo, 8)} of {grid.n_points} points",
            ),
            BoundEntry(
                "upper_slack_min", w_up, ">", 0,
                f"{CITE_COR}; worst at s={mpmath.nstr(s_up, 8)} of {grid.n_points} points",
            ),
        )
        return CertificateReport(entries, ctx)


def worst_slacks(report: CertificateReport) -> tuple[Approx, Approx]:
    return report.entry("lower_slack_min").computed, report.entry("upper_slack_min").computed


def find_minimum(ctx: PrecisionContext = DEFAULT_CONTEXT, bracket=(mpf("0.01"), mpf("0.99"))) -> MinimumReport:
    """Locate the unique zero of G'(s) = F'(s) - 1 and return G there."""
    with working(ctx):
        a, b = mpf(bracket[0]), mpf(bracket[1])
        ga = G_prime(a, ctx).value
        gb = G_prime(b, ctx).value
        if not (ga < 0 < gb):
            raise NoBracket(
                f"G' does not change sign from - to + on [{a}, {b}]"
                f" (G'(a)={mpmath.nstr(ga, 5)}, G'(b)={mpmath.nstr(gb, 5)})"
            )
        tol = max(ctx.tol, mpf(10) ** -(ctx.work_digits // 2))
        s0 = brent_root(lambda x: G_prime(x, ctx).value, a, b, tol)
        return MinimumReport(s0, G(s0, ctx), (a, b))


def reflection_equivalence(s, ctx: PrecisionContext = DEFAULT_CONTEXT, tol=mpf("1e-12")) -> BoundEntry:
    """|pi cot(pi s) - (psi(1-s) - psi(s))| must vanish."""
    with working(ctx):
        s = _check(s)
        lhs = mpmath.pi * mpmath.cot(mpmath.pi * s)
        rhs = digamma(1 - s, ctx) - digamma(s, ctx)
        diff = rhs - Approx(lhs, rounding_allowance(lhs, 4))
        residual = Approx(abs(diff.value), diff.err)
        return BoundEntry(
            f"reflection@{mpmath.nstr(s, 8)}", residual, "=", 0,
            "reflection: pi cot(pi s) = psi(1-s) - psi(s)", tol=tol,
        )


def conjecture_original_form(grid: GridSpec, ctx: PrecisionContext = DEFAULT_CONTEXT) -> CertificateReport:
    """Check the cot form directly, without using the reflection identity."""
    if grid.lo < 0 or grid.hi > 1:
        raise OutOfDomain("grid must lie inside (0, 1)")
    with working(ctx):
        line = LinearBound.from_context(ctx)
        lower, upper = [], []
        for s in grid.points():
            c = mpmath.pi * mpmath.cot(mpmath.pi * s)
            cot = Approx(c, rounding_allowance(c, 4))
            middle = zeta(s, ctx) - digamma(s, ctx)
            lo = middle - cot - Approx.exact(s)
            up = cot + line(s) - middle
            lower.append((s, lo))
            upper.append((s, up))
            for label, slack in (("lower", lo), ("upper", up)):
                if not slack.value - slack.err > 0:
                    raise ViolationFound(
                        f"conjecture {label} bound violated at s={mpmath.nstr(s, 12)}",
                        s=s, slack=slack.value, err=slack.err,
                    )
        s_lo, w_lo = _worst(lower)
        s_up, w_up = _worst(upper)
        entries = (
            BoundEntry("conjecture_lower_slack_min", w_lo, ">", 0,
                       f"{CITE_CONJ}; worst at s={mpmath.nstr(s_lo, 8)}"),
            BoundEntry("conjecture_upper_slack_min", w_up, ">", 0,
                       f"{CITE_CONJ}; worst at s={mpmath.nstr(s_up, 8)}"),
        )
        return CertificateReport(entries, ctx)


def endpoint_limits(ctx: PrecisionContext = DEFAULT_CONTEXT, ks=range(2, 7)) -> tuple[Approx, Approx]:
    """Extrapolate F(eps) and F(1 - eps) to eps = 0 over eps = 10**-k."""
    with working(ctx):
        eps = [mpf(10) ** -k for k in ks]
        left = extrapolate_to_zero(eps, [F(e, ctx).value for e in eps])
        right = extrapolate_to_zero(eps, [F(1 - e, ctx).value for e in eps])
        return left, right


def sharpness_check(ctx: PrecisionContext = DEFAULT_CONTEXT) -> BoundEntry:
    """The chord b's + b touches F at both ends: gaps shrink to zero."""
    with working(ctx):
        line = LinearBound.from_context(ctx)
        gaps = []
        for k in range(2, 7):
            s = 1 - mpf(10) ** -k
            gaps.append((line(s) - F(s, ctx)).value)
        monotone = all(g1 > g2 > 0 for g1, g2 in zip(gaps, gaps[1:]))
        left, right = endpoint_limits(ctx)
        left_gap = abs(left.value - line.intercept.value)
        right_gap = abs(right.value - (line.slope + line.intercept).value)
        small = gaps[2] < mpf("1e-3") and left_gap < mpf("1e-8") and right_gap < mpf("1e-8")
        value = Approx(max(gaps[-1], left_gap, right_gap), left.err + right.err)
        return BoundEntry(
            "sharpness_gap", value, "→", 0,
            "endpoint sharpness: lim F(s) = lim (b's + b) = 2 gamma_0; gaps at s = 1 - 10^-k, k = 2..6"
            f" = {[mpmath.nstr(g, 4) for g in gaps]}",
            tol=mpf("1e-5"),
            passed=bool(monotone and small and value.value < mpf("1e-5")),
        )


def uniqueness_probe(n_points: int = 100, ctx: PrecisionContext = DEFAULT_CONTEXT) -> int:
    """Number of sign changes of G' on a uniform grid of (0, 1)."""
    with working(ctx):
        pts = GridSpec(0, 1, n_points, 1e-3).points()
        vals = [G_prime(s, ctx).value for s in pts]
        return sum(1 for a, b in zip(vals, vals[1:]) if (a < 0) != (b < 0))
