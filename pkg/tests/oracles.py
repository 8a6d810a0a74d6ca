"""Independent reference values.

Everything here uses mpmath's own special functions at a precision well above
the package's working precision; nothing imports the package.  The frozen
constants were produced by these oracles and are kept as regression values.
"""

from __future__ import annotations

import mpmath
from mpmath import mpf

ORACLE_DPS = 80

# frozen from the oracle run (see oracle_* functions below)
with mpmath.workdps(50):
    GAMMA1 = mpf("-0.07281584548367672486058637587490131913774")
    A0 = mpf("0.7259955336435536946920854302404075493575")  # pi^2/6 - log(2 pi)/2
    A1 = mpf("1.717749912331903161333001542520926508357")  # pi^2/6 - gamma_1
    F_HALF = mpf("0.5031555172118366665514771804834575547259")  # zeta(1/2) - psi(1/2)
    ZETA_HALF = mpf("-1.460354508809586812889499152515298012467")
    P_HALF = mpf("0.8287966442343199955963342611602998707098")  # sum_{n>=2} 2/(n - 1/2)^3
    F2_HALF = mpf("0.8204396303056585729050277552153370855242")
    J_HALF = mpf("-0.008357013928661422691306505944962785185594")
    S0 = mpf("0.4849928917177314227877996277022712451062")
    G_AT_S0 = mpf("0.003064692242258825780953224533350711045895")
    SIGMA_HEAD_200 = mpf("40.69167312147061377617737110514099117489")
    SIGMA_TAIL_200 = mpf("0.005114336147931682872987866550754391672353")
    I2_ENVELOPE = mpf("7.765791764448160379408650755413990332363")
    I2_AT_ZERO = mpf("0.8295432501295307310793642883126408452844")
    P_LOWER = mpf("0.40411380631918857079947632302289998153")


def with_dps(fn):
    def wrapper(*args, **kwargs):
        with mpmath.workdps(ORACLE_DPS):
            return +fn(*args, **kwargs)

    return wrapper


@with_dps
def oracle_zeta(s, k: int = 0):
    return mpmath.zeta(mpf(s), 1, k)


@with_dps
def oracle_digamma(x):
    return mpmath.digamma(mpf(x))


@with_dps
def oracle_polygamma(m: int, x):
    return mpmath.polygamma(m, mpf(x))


@with_dps
def oracle_F(s):
    s = mpf(s)
    return mpmath.zeta(s) - mpmath.digamma(1 - s)


@with_dps
def oracle_F_prime(s):
    s = mpf(s)
    return mpmath.zeta(s, 1, 1) + mpmath.polygamma(1, 1 - s)


@with_dps
def oracle_F_second(s):
    s = mpf(s)
    return mpmath.zeta(s, 1, 2) - mpmath.polygamma(2, 1 - s)


@with_dps
def oracle_P(s):
    # sum_{n>=2} 2/(n-s)^3 = 2 * Hurwitz zeta(3, 2-s)
    return 2 * mpmath.zeta(3, 2 - mpf(s))


@with_dps
def oracle_gamma1():
    return mpmath.stieltjes(1)


@with_dps
def oracle_I2(s):
    """g1(1) + 2 sum_{n>=2} g1(n) via Hurwitz-free derivatives of zeta."""
    s = mpf(s)
    z = [mpmath.zeta(s + 2, 1, k) for k in range(3)]
    return 4 * z[0] - 2 + (8 * s + 4) * z[1] + 2 * s * (s + 1) * z[2]


@with_dps
def oracle_sigma_head(N: int):
    return mpmath.fsum(
        (6 * mpmath.log(n + 1) ** 2 + 22 * mpmath.log(n + 1) + 12) / mpf(n) ** 3 for n in range(1, N + 1)
    )


@with_dps
def oracle_J(s):
    """J = F'' - P using mpmath's derivatives as the reference."""
    return oracle_F_second(s) - oracle_P(s)
