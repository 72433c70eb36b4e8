"""Arbitrary-precision elliptic kernel.

Complete elliptic integrals by arithmetic-geometric mean, Jacobi sn/cn/dn by
descending Landen transformation, Jacobi theta functions (with first
z-derivatives) by truncated q-series, and Jacobi's Zeta function as the
logarithmic derivative of theta_4.  All routines take an explicit
:class:`~sixvertex.precision.Precision`; there is no module-level precision
state.

The nome convention throughout is q = exp(-pi*K'/K).  The dual nome under a
modular transformation, exp(-2*gamma) when q = exp(-pi^2/(2*gamma)), shows up
in the low-temperature series of :mod:`sixvertex.asymptotics` but no general
modular-transformation facility is provided here.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf, sqrt, sin, cos, asin, exp, log, pi, quad

from .errors import DomainError
from .precision import Precision, rounded

GUARD_HALF = 16


@dataclass(frozen=True)
class EllipticData:
    """Modulus/period bundle: k, k', K(k), K'(k) and the nome q."""

    k: object
    kprime: object
    bigK: object
    bigKprime: object
    q: object


def _check_modulus(k, strict_upper=True):
    if k < 0 or (k >= 1 if strict_upper else k > 1):
        raise DomainError(f"modulus k={k} outside [0, 1)")


def elliptic_K(k, p: Precision):
    """Complete elliptic integral of the first kind, by AGM iteration."""
    _check_modulus(k)
    with p.work():
        a, b = mpf(1), sqrt(1 - mpf(k) ** 2)
        tol = mpf(2) ** (-(p.bits + GUARD_HALF))
        while abs(a - b) > tol:
            a, b = (a + b) / 2, sqrt(a * b)
        out = pi / (2 * a)
    return rounded(out, p)


def elliptic_E(k, p: Precision):
    """Complete elliptic integral of the second kind.

    AGM with the classical deficit series E = K * (1 - sum 2**(n-1) c_n**2),
    c_0 = k.  Needed for the Legendre relation and for the quadrature-free
    consistency route to Jacobi's Zeta.
    """
    _check_modulus(k)
    with p.work():
        a, b, c = mpf(1), sqrt(1 - mpf(k) ** 2), mpf(k)
        deficit = c ** 2 / 2
        tol = mpf(2) ** (-(p.bits + GUARD_HALF))
        n = 0
        while abs(c) > tol:
            a, b, c = (a + b) / 2, sqrt(a * b), (a - b) / 2
            n += 1
            deficit += mpf(2) ** (n - 1) * c ** 2
        out = (pi / (2 * a)) * (1 - deficit)
    return rounded(out, p)


def jacobi_sn_cn_dn(u, k, p: Precision):
    """Jacobi elliptic functions on the real axis.

    Descending Landen transformation (AGM backward recursion for the
    amplitude), which stays well conditioned up to u = K.
    """
    _check_modulus(k)
    with p.work():
        u = mpf(u)
        k = mpf(k)
        if k == 0:
            return rounded(sin(u), p), rounded(cos(u), p), rounded(mpf(1), p)
        a = [mpf(1)]
        c = [k]
        b = sqrt(1 - k ** 2)
        tol = mpf(2) ** (-(p.bits + GUARD_HALF))
        while abs(c[-1]) > tol:
            a_prev = a[-1]
            a.append((a_prev + b) / 2)
            c.append((a_prev - b) / 2)
            b = sqrt(a_prev * b)
        n = len(a) - 1
        phi = mpf(2) ** n * a[n] * u
        for i in range(n, 0, -1):
            phi = (phi + asin(c[i] / a[i] * sin(phi))) / 2
        sn = sin(phi)
        cn = cos(phi)
        dn = sqrt(1 - k ** 2 * sn ** 2)
    return rounded(sn, p), rounded(cn, p), rounded(dn, p)


def theta(j, z, q, p: Precision, derivative=0):
    """Jacobi theta function theta_j(z, q), j in 1..4.

    derivative=1 returns the z-derivative (term-wise differentiated series).
    The series is truncated once the term bound drops below 2**(-bits-8);
    terms decay super-geometrically in n so this bound is rigorous.
    """
    if j not in (1, 2, 3, 4):
        raise DomainError(f"theta index {j} not in 1..4")
    if derivative not in (0, 1):
        raise DomainError("derivative flag must be 0 or 1")
    if not (0 <= q < 1):
        raise DomainError(f"nome q={q} outside [0, 1)")
    with p.work():
        z = mpf(z)
        q = mpf(q)
        tol = p.tail_tol()
        if j in (3, 4):
            total = mpf(1) if derivative == 0 else mpf(0)
            n = 1
        else:
            total = mpf(0)
            n = 0
        while True:
            if j in (1, 2):
                mag = 2 * q ** ((n + mpf(1) / 2) ** 2)
                sign = (-1) ** n if j == 1 else 1
                m = 2 * n + 1
                osc = sin(m * z) if j == 1 else cos(m * z)
                dosc = m * cos(m * z) if j == 1 else -m * sin(m * z)
            else:
                mag = 2 * q ** (n ** 2)
                sign = (-1) ** n if j == 4 else 1
                m = 2 * n
                osc = cos(m * z)
                dosc = -m * sin(m * z)
            total += sign * mag * (osc if derivative == 0 else dosc)
            if mag * max(m, 1) < tol and n >= 2:
                break
            n += 1
        out = total
    return rounded(out, p)


def jacobi_zeta(u, k, p: Precision):
    """Jacobi Zeta Z(u, k) = d/du log theta_4(pi*u/(2K), q).

    The theta series is differentiated term by term, so no finite
    differences enter.
    """
    _check_modulus(k)
    with p.work():
        if k == 0:
            return rounded(mpf(0), p)
        K = elliptic_K(k, Precision(p.bits + GUARD_HALF))
        Kp = elliptic_K(sqrt(1 - mpf(k) ** 2), Precision(p.bits + GUARD_HALF))
        q = exp(-pi * Kp / K)
        v = pi * mpf(u) / (2 * K)
        out = (pi / (2 * K)) * theta(4, v, q, p, derivative=1) / theta(4, v, q, p)
    return rounded(out, p)


def jacobi_zeta_from_E(u, k, p: Precision):
    """Independent route to Z(u, k): E(u) - u*E/K with E(u) = int_0^u dn^2.

    Used as a cross-check oracle against :func:`jacobi_zeta`; the incomplete
    integral is done by quadrature, so this is slower but shares no code with
    the theta-series route.
    """
    _check_modulus(k)
    with p.work():
        u = mpf(u)
        K = elliptic_K(k, Precision(p.bits + GUARD_HALF))
        E = elliptic_E(k, Precision(p.bits + GUARD_HALF))
        pp = Precision(p.bits + GUARD_HALF)
        Eu = quad(lambda w: jacobi_sn_cn_dn(w, k, pp)[2] ** 2, [0, u])
        out = Eu - u * E / K
    return rounded(out, p)


def elliptic_data_from_gamma(gamma, p: Precision):
    """Elliptic data for nome q = exp(-pi^2/(2*gamma)).

    The modulus comes from theta quotients (k = theta_2^2/theta_3^2 at z=0);
    K and K' then follow from the AGM.  By construction K'/K = pi/(2*gamma),
    which the test suite verifies as a round trip.
    """
    if gamma <= 0:
        raise DomainError("gamma must be positive")
    with p.work():
        gamma = mpf(gamma)
        q = exp(-pi ** 2 / (2 * gamma))
        pp = Precision(p.bits + GUARD_HALF)
        k = theta(2, 0, q, pp) ** 2 / theta(3, 0, q, pp) ** 2
        kprime = theta(4, 0, q, pp) ** 2 / theta(3, 0, q, pp) ** 2
        bigK = elliptic_K(k, pp)
        bigKprime = elliptic_K(kprime, pp)
        data = EllipticData(
            k=rounded(k, p),
            kprime=rounded(kprime, p),
            bigK=rounded(bigK, p),
            bigKprime=rounded(bigKprime, p),
            q=rounded(q, p),
        )
    return data


def theta1_prime_zero(q, p: Precision):
    """theta_1'(0, q), the z-derivative of theta_1 at the origin."""
    return theta(1, 0, q, p, derivative=1)
