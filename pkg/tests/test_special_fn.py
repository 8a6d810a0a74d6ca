import random
import threading

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mpf

import oracles
from zetapsi.errors import OutOfDisk, OutOfDomain, PoleAtOne, TooFarFromPole, TooManyTerms, UnsupportedIndex
from zetapsi.numerics import PrecisionContext, working
from zetapsi.representations import zeta_via_stieltjes_integral
from zetapsi.special_fn import (
    StieltjesConstants,
    digamma,
    log_two_pi,
    pi,
    polygamma,
    psi_series,
    stieltjes_constants,
    stieltjes_gamma,
    zeta,
    zeta_deriv,
    zeta_jet,
    zeta_laurent,
)
from zetapsi.numerics import Approx

TIGHT = mpf("1e-40")


@pytest.fixture(autouse=True)
def _wide_test_arithmetic():
    # reference arithmetic in the test bodies must not round at 15 digits
    with mpmath.workdps(oracles.ORACLE_DPS):
        yield


def agrees(approx, ref, slack=TIGHT):
    return abs(approx.value - ref) <= approx.err + slack


# --- constants -------------------------------------------------------------


def test_named_constants(ctx):
    assert agrees(pi(ctx), oracles.with_dps(lambda: mpmath.pi)())
    assert agrees(log_two_pi(ctx), oracles.with_dps(lambda: mpmath.log(2 * mpmath.pi))())


def test_stieltjes_values(ctx):
    g0 = stieltjes_gamma(0, ctx)
    g1 = stieltjes_gamma(1, ctx)
    assert agrees(g0, oracles.with_dps(lambda: mpmath.euler)())
    assert agrees(g1, oracles.GAMMA1)
    assert abs(g0.value - mpf("0.5772156649")) < mpf("1e-10")
    assert abs(g1.value - mpf("-0.0728158455")) < mpf("1e-10")
    assert g0.err < mpf("1e-30") and g1.err < mpf("1e-30")


def test_stieltjes_rejects_higher_index(ctx):
    with pytest.raises(UnsupportedIndex):
        stieltjes_gamma(3, ctx)
    with pytest.raises(UnsupportedIndex):
        stieltjes_gamma(2, ctx)


def test_stieltjes_record_invariants(ctx):
    c = stieltjes_constants(ctx)
    assert abs(c.gamma0.value - mpf("0.577216")) < mpf("1e-5")
    assert c.gamma1.value < 0
    with pytest.raises(ValueError):
        StieltjesConstants(Approx.exact(mpf("0.5")), c.gamma1)
    with pytest.raises(ValueError):
        StieltjesConstants(c.gamma0, Approx.exact(mpf("0.01")))


def test_stieltjes_concurrent_first_access():
    c = PrecisionContext(work_digits=33, target_tol=1e-21)
    results = []

    def worker():
        results.append(stieltjes_gamma(1, c))

    threads = [threading.Thread(target=worker) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(results) == 4
    assert all(r is results[0] for r in results)


# --- zeta ----------------------------------------------------------------------


def test_zeta_examples(ctx):
    assert zeta(0, ctx).value == mpf(-1) / 2 or agrees(zeta(0, ctx), mpf(-1) / 2)
    assert agrees(zeta(2, ctx), oracles.oracle_zeta(2))
    assert agrees(zeta(mpf("0.5"), ctx), oracles.ZETA_HALF)
    assert abs(zeta(mpf("0.5"), ctx).value - mpf("-1.4603545088")) < mpf("1e-10")


def test_zeta_domain(ctx):
    with pytest.raises(PoleAtOne, match="pole at s=1"):
        zeta(1, ctx)
    for bad in (-1, -2.5):
        with pytest.raises(OutOfDomain):
            zeta(bad, ctx)


@given(st.floats(-0.99, 6.0).filter(lambda s: abs(s - 1) > 1e-9))
def test_zeta_matches_oracle(s):
    c = PrecisionContext()
    r = zeta(s, c)
    assert agrees(r, oracles.oracle_zeta(s), r.err * 0 + mpf("1e-38") * max(1, abs(r.value)))
    assert r.err < mpf("1e-25") * max(1, abs(r.value))


@pytest.mark.parametrize("s", ["0.999", "1.001", "0.96", "1.04", "1.0000001"])
def test_zeta_next_to_the_pole(ctx, s):
    r = zeta(mpf(s), ctx)
    assert agrees(r, oracles.oracle_zeta(mpf(s)), mpf("1e-35") * abs(r.value))


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("s", ["-0.5", "0.0", "0.3", "0.97", "1.02", "2.5", "4"])
def test_zeta_derivatives_match_oracle(ctx, s, k):
    r = zeta_deriv(mpf(s), k, ctx)
    ref = oracles.oracle_zeta(mpf(s), k)
    assert agrees(r, ref, mpf("1e-35") * max(1, abs(ref)))


def test_zeta_derivative_examples(ctx):
    d0 = zeta_deriv(0, 1, ctx)
    assert agrees(d0, -log_two_pi(ctx).value / 2, mpf("1e-38"))
    assert abs(d0.value + mpf("0.9189385332")) < mpf("1e-10")
    s = mpf("2.5")
    assert zeta_deriv(s, 1, ctx).value < 0
    assert zeta_deriv(s, 2, ctx).value > 0
    assert zeta_deriv(s, 3, ctx).value < 0


def test_zeta_derivative_finite_part_at_one(ctx):
    g1 = stieltjes_gamma(1, ctx).value
    with working(ctx):
        for u in (mpf("1e-4"), mpf("-1e-4")):
            finite = zeta_deriv(1 + u, 1, ctx).value + 1 / u**2
            # zeta'(s) + 1/(s-1)^2 = -gamma_1 + gamma_2 (s-1) + ...
            assert abs(finite + g1) < mpf("1e-5")


def test_zeta_derivative_order_validation(ctx):
    with pytest.raises(UnsupportedIndex):
        zeta_deriv(2, 4, ctx)
    with pytest.raises(PoleAtOne):
        zeta_deriv(1, 1, ctx)


def test_zeta_jet_consistent_with_single_derivatives(ctx):
    for s in (mpf("0.4"), mpf("2.2")):
        jet = zeta_jet(s, 2, ctx)
        assert abs(jet[0].value - zeta(s, ctx).value) <= jet[0].err + zeta(s, ctx).err + TIGHT
        assert abs(jet[2].value - zeta_deriv(s, 2, ctx).value) <= 2 * jet[2].err + TIGHT


def test_zeta_sign_facts_on_two_three(ctx):
    pts = [2 + mpf(i) / 51 for i in range(1, 51)]
    rows = [zeta_jet(s, 3, ctx) for s in pts]
    for z in rows:
        assert z[0].value > 0 and z[1].value < 0 and z[2].value > 0 and z[3].value < 0
    for a, b in zip(rows, rows[1:]):
        assert b[0].value < a[0].value
        assert b[1].value > a[1].value
        assert b[2].value < a[2].value


def test_zeta_two_paths_agree(ctx):
    for i in range(1, 10):
        s = mpf(i) / 10
        a = zeta(s, ctx)
        b = zeta_via_stieltjes_integral(s, ctx)
        assert abs(a.value - b.value) <= a.err + b.err + TIGHT


# --- Laurent expansion ---------------------------------------------------------


def test_laurent_examples(ctx):
    up = zeta_laurent(mpf("1.001"), ctx=ctx)
    down = zeta_laurent(mpf("0.999"), ctx=ctx)
    assert abs(up.value - mpf("1000.5772888")) < mpf("1e-6")
    assert abs(down.value - mpf("-999.4228568")) < mpf("1e-6")
    for s, r in ((mpf("1.001"), up), (mpf("0.999"), down)):
        assert abs(r.value - oracles.oracle_zeta(s)) <= r.err


def test_laurent_contract(ctx):
    with pytest.raises(TooManyTerms):
        zeta_laurent(mpf("1.01"), K=5, ctx=ctx)
    with pytest.raises(TooFarFromPole):
        zeta_laurent(mpf("1.5"), ctx=ctx)
    with pytest.raises(PoleAtOne):
        zeta_laurent(1, ctx=ctx)


@pytest.mark.parametrize("u", ["1e-2", "1e-3", "1e-4", "-1e-2", "-1e-3", "-1e-4"])
def test_laurent_within_remainder_bound(ctx, u):
    s = 1 + mpf(u)
    lau = zeta_laurent(s, ctx=ctx)
    z = zeta(s, ctx)
    assert abs(z.value - lau.value) <= lau.err + z.err


# --- digamma / polygamma ---------------------------------------------------


def test_digamma_examples(ctx):
    g0 = stieltjes_gamma(0, ctx)
    assert agrees(digamma(1, ctx), -g0.value, g0.err)
    assert agrees(digamma(2, ctx), 1 - g0.value, g0.err)
    half = digamma(mpf("0.5"), ctx)
    assert agrees(half, oracles.oracle_digamma(mpf("0.5")))
    assert abs(half.value + mpf("1.9635100260")) < mpf("1e-10")


def test_digamma_domain(ctx):
    for bad in (0, -1, -0.5):
        with pytest.raises(OutOfDomain):
            digamma(bad, ctx)


@given(st.floats(1e-6, 1e6))
def test_digamma_matches_oracle(x):
    r = digamma(x, PrecisionContext())
    assert agrees(r, oracles.oracle_digamma(x), mpf("1e-38") * max(1, abs(r.value)))


def test_digamma_recurrence_random(ctx):
    rng = random.Random(20240601)
    with working(ctx):
        for _ in range(100):
            x = mpf(rng.uniform(0.001, 10))
            a, b = digamma(x + 1, ctx), digamma(x, ctx)
            assert abs(a.value - b.value - 1 / x) <= a.err + b.err + mpf("1e-45") / x


def test_digamma_reflection_random(ctx):
    rng = random.Random(7)
    with working(ctx):
        for _ in range(100):
            s = mpf(rng.uniform(0.01, 0.99))
            lhs = digamma(1 - s, ctx).value - digamma(s, ctx).value
            assert abs(lhs - mpmath.pi * mpmath.cot(mpmath.pi * s)) < mpf("1e-12")


def test_digamma_derivative_consistency(ctx):
    h = mpf("1e-6")
    with working(ctx):
        for x in (mpf("0.3"), mpf("1.7"), mpf("12.5")):
            fd = (digamma(x + h, ctx).value - digamma(x - h, ctx).value) / (2 * h)
            exact = polygamma(1, x, ctx).value
            # O(h^2) truncation: psi'''(x) h^2 / 6
            assert abs(fd - exact) < 10 * h**2 * abs(oracles.oracle_polygamma(3, x))


def test_polygamma_examples(ctx):
    assert agrees(polygamma(1, 1, ctx), oracles.oracle_zeta(2))
    two = polygamma(2, 1, ctx)
    assert agrees(two, -2 * oracles.oracle_zeta(3))
    assert abs(two.value + mpf("2.4041138063")) < mpf("1e-10")
    half = polygamma(1, mpf("0.5"), ctx)
    assert agrees(half, oracles.with_dps(lambda: mpmath.pi**2 / 2)())


@given(st.sampled_from([1, 2]), st.floats(1e-4, 1e4))
def test_polygamma_matches_oracle(m, x):
    r = polygamma(m, x, PrecisionContext())
    ref = oracles.oracle_polygamma(m, x)
    assert agrees(r, ref, mpf("1e-38") * abs(ref))


def test_polygamma_contract(ctx):
    with pytest.raises(UnsupportedIndex):
        polygamma(3, 1, ctx)
    with pytest.raises(OutOfDomain):
        polygamma(1, 0, ctx)


# --- psi series ------------------------------------------------------------


def test_psi_series_examples(ctx):
    g0 = stieltjes_gamma(0, ctx).value
    assert psi_series(0, ctx).value == -g0
    up = psi_series(mpf("0.5"), ctx)
    assert agrees(up, digamma(mpf("1.5"), ctx).value, digamma(mpf("1.5"), ctx).err + TIGHT)
    assert abs(up.value - mpf("0.0364899740")) < mpf("1e-10")
    down = psi_series(mpf("-0.5"), ctx)
    assert agrees(down, oracles.oracle_digamma(mpf("0.5")))


def test_psi_series_disk(ctx):
    for bad in (1, -1, 1.5):
        with pytest.raises(OutOfDisk):
            psi_series(bad, ctx)


@given(st.floats(-0.9, 0.9))
def test_psi_series_matches_digamma(z):
    c = PrecisionContext(work_digits=30, target_tol=1e-20)
    r = psi_series(z, c)
    assert agrees(r, oracles.oracle_digamma(1 + mpf(z)), mpf("1e-25"))


# --- error-budget honesty ---------------------------------------------------


@given(st.floats(0.02, 0.98))
def test_budget_honesty_under_tightening(s):
    c = PrecisionContext(work_digits=50, target_tol=1e-20)
    tight = c.with_tol(1e-21)
    for fn in (lambda x, cc: zeta(x, cc), lambda x, cc: digamma(1 - mpf(x), cc),
               lambda x, cc: zeta_deriv(x, 2, cc), lambda x, cc: polygamma(2, 1 - mpf(x), cc)):
        a, b = fn(s, c), fn(s, tight)
        assert abs(a.value - b.value) <= a.err + mpf("1e-45")
