"""Bulk free energies and their analytic cross-checks.

f = lim log(tau_N/c_N)/N^2 per phase; F = -log(a*b) - f is the physical free
energy; z_limit = lim Z_N^(1/N^2) = a*b*exp(f).

Two series evaluations of the af free energy are provided: a small-gamma
expansion around the d-phase form (nome q) and a low-temperature expansion in
the dual nome exp(-2*gamma).  Both expansions circulate with the correction
series carrying the opposite sign; the signs used here are fixed against the
closed theta-function form and exact finite-N data, which the test suite
pins down.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from mpmath import mp, mpf, cos, sin, exp, log, pi, sinh, cosh, tan

from ..errors import CutoffTooSmallError, PhaseDomainError
from ..exactcore import PHASE_AF, PHASE_D, PHASE_FE, PhaseParams, weights_from
from ..precision import Precision, rounded
from ..specfun import elliptic_data_from_gamma, theta, theta1_prime_zero
from .geometry import endpoints


@dataclass(frozen=True)
class FreeEnergy:
    """f (determinant normalization), F = -log(ab) - f, and lim Z^(1/N^2)."""

    f: object
    F: object
    z_limit: object


def _f_value(params: PhaseParams, p: Precision):
    t, g = mpf(params.t), mpf(params.gamma)
    if params.phase == PHASE_FE:
        return -log(sinh(t - abs(g)))
    if params.phase == PHASE_D:
        return log((pi / (2 * g)) / cos(pi * t / (2 * g)))
    pp = Precision(p.bits + 32)
    ell = elliptic_data_from_gamma(g, pp)
    return log((pi / (2 * g)) * theta1_prime_zero(ell.q, pp)
               / theta(2, pi * mpf(params.zeta) / 2, ell.q, pp))


def bulk_f(params: PhaseParams, p: Precision = Precision()) -> FreeEnergy:
    """Phase-resolved bulk free energy.

    fe: exp(f) = 1/sinh(t - |gamma|)
    d:  exp(f) = (pi/2gamma)/cos(pi t/2gamma)
    af: exp(f) = (pi/2gamma) * theta_1'(0)/theta_2(pi zeta/2),
        nome q = exp(-pi^2/(2 gamma))
    """
    with p.work():
        f = _f_value(params, p)
        w = weights_from(params, Precision(p.bits + 32))
        ab = mpf(w.a) * mpf(w.b)
        F = -log(ab) - f
        z_limit = ab * exp(f)
    return FreeEnergy(rounded(f, p), rounded(F, p), rounded(z_limit, p))


def dfdzeta(params: PhaseParams, p: Precision = Precision()):
    """The free-energy derivative, via endpoints and via the closed form.

    Returns (endpoint_form, closed_form).  d and af differentiate with
    respect to zeta; fe differentiates with respect to the shifted t (its f
    does not depend on zeta separately).  The two returns are analytically
    equal; their numerical difference is a cross-check of the geometry
    against the theta/trig derivative of f.
    """
    geom = endpoints(params, Precision(p.bits + 32))
    with p.work():
        if params.phase == PHASE_FE:
            t_e = mpf(params.t) - abs(mpf(params.gamma))
            ep = -(mpf(geom.alpha) + mpf(geom.beta)) / 2
            closed = -cosh(t_e) / sinh(t_e)
        elif params.phase == PHASE_D:
            ep = (mpf(geom.alpha) + mpf(geom.beta)) / 4
            closed = (pi / 2) * tan(pi * mpf(params.zeta) / 2)
        else:
            ep = (mpf(geom.alpha) + mpf(geom.alpha_prime)
                  + mpf(geom.beta_prime) + mpf(geom.beta)) / 4
            pp = Precision(p.bits + 32)
            z2 = pi * mpf(params.zeta) / 2
            q = geom.elliptic.q
            closed = -(pi / 2) * theta(2, z2, q, pp, derivative=1) \
                / theta(2, z2, q, pp)
    return rounded(ep, p), rounded(closed, p)


def f_small_gamma(params: PhaseParams, m_max: int, p: Precision = Precision()):
    """Small-gamma expansion of the af free energy around the d-phase form.

    f = log[(pi/2g)/cos(pi t/2g)]
        - 2 sum_{m>=1} (1/m) q^{2m}/(1-q^{2m}) (1 - (-1)^m cos(m pi t/g)),
    q = exp(-pi^2/(2g)).  Returns (f_series, f_sing_leading) where
    f_sing_leading = -4 exp(-pi^2/g) cos^2(pi t/2g) is the leading term of
    the series (the singular part of f across the d/af boundary).

    Raises CutoffTooSmallError when the truncated tail is not provably below
    2^(-bits/2).
    """
    if params.phase != PHASE_AF:
        raise PhaseDomainError("small-gamma expansion applies to af only")
    with p.work():
        t, g = mpf(params.t), mpf(params.gamma)
        q = exp(-pi ** 2 / (2 * g))
        total = log((pi / (2 * g)) / cos(pi * t / (2 * g)))
        for m in range(1, m_max + 1):
            total -= 2 * (mpf(1) / m) * q ** (2 * m) / (1 - q ** (2 * m)) \
                * (1 - (-1) ** m * cos(m * pi * t / g))
        tail = 4 * q ** (2 * (m_max + 1)) / ((m_max + 1) * (1 - q ** 2) ** 2)
        if tail > mpf(2) ** (-p.bits // 2):
            raise CutoffTooSmallError(
                f"series tail bound {mp.nstr(tail, 5)} above 2^(-bits/2); "
                f"raise m_max beyond {m_max}")
        sing = -4 * exp(-pi ** 2 / g) * cos(pi * t / (2 * g)) ** 2
    return rounded(total, p), rounded(sing, p)


def F_modular(params: PhaseParams, m_max: int, p: Precision = Precision()):
    """Physical af free energy F = -log(ab) - f in the dual nome exp(-2g):

    F = -g/2 - t^2/(2g) - log sinh(g+t) + t
        - 2 sum_{m>=1} (1/m) [exp(-2mg)/sinh(2mg)] sinh^2(m(g-t)).

    Converges for |t| < gamma; ideal for large gamma where the direct theta
    series is slow.  Tail-bounded like :func:`f_small_gamma`.
    """
    if params.phase != PHASE_AF:
        raise PhaseDomainError("modular-series free energy applies to af only")
    with p.work():
        t, g = mpf(params.t), mpf(params.gamma)
        total = -g / 2 - t ** 2 / (2 * g) - log(sinh(g + t)) + t
        for m in range(1, m_max + 1):
            total -= 2 * (mpf(1) / m) * (exp(-2 * m * g) / sinh(2 * m * g)) \
                * sinh(m * (g - t)) ** 2
        # term_m <= exp(-2m(g+t)) / (m (1 - exp(-4g))); geometric tail bound
        ratio = exp(-2 * (g + t))
        tail = ratio ** (m_max + 1) \
            / ((m_max + 1) * (1 - ratio) * (1 - exp(-4 * g)))
        if tail > mpf(2) ** (-p.bits // 2):
            raise CutoffTooSmallError(
                f"series tail bound {mp.nstr(tail, 5)} above 2^(-bits/2); "
                f"raise m_max beyond {m_max}")
    return rounded(total, p)


def _second_derivative(fun, x0, h):
    return (-fun(x0 + 2 * h) + 16 * fun(x0 + h) - 30 * fun(x0)
            + 16 * fun(x0 - h) - fun(x0 - 2 * h)) / (12 * h ** 2)


def _first_derivative(fun, x0, h):
    return (-fun(x0 + 2 * h) + 8 * fun(x0 + h)
            - 8 * fun(x0 - h) + fun(x0 - 2 * h)) / (12 * h)


def ode_check(params: PhaseParams, p: Precision = Precision(), n: int = 6,
              theta_factor: bool = True):
    """Residual of the closed-form free energies against f'' = exp(2f).

    fe/d: relative residual of f''(t) - exp(2f) with 5-point differences
    (the closed forms satisfy the equation exactly, so the residual measures
    the stencil).

    af: the bulk f alone does not satisfy the equation.  With
    theta_factor=True (default) the full asymptotic form
    A_N(t) = c_N exp(N^2 f) theta_4((pi/2)(1+t/g) N) is substituted into the
    bilinear identity A_N A_N'' - A_N'^2 = A_{N+1} A_{N-1} at size n and the
    relative residual returned; with theta_factor=False the naive pointwise
    ODE residual of the bulk f is returned (expected to be far above the
    fe/d residuals -- that failure is the point).
    """
    pw = Precision(p.bits + 32)
    h = mpf(2) ** (-(p.bits // 5))
    with pw.work():
        t0, g = mpf(params.t), mpf(params.gamma)
        if params.phase in (PHASE_FE, PHASE_D):
            if params.phase == PHASE_FE:
                fun = lambda tt: -log(sinh(tt - abs(g)))
            else:
                fun = lambda tt: log((pi / (2 * g)) / cos(pi * tt / (2 * g)))
            resid = (_second_derivative(fun, t0, h) - exp(2 * fun(t0))) \
                / exp(2 * fun(t0))
            return rounded(abs(resid), p)

        ell = elliptic_data_from_gamma(g, pw)
        q = mpf(ell.q)
        th1p = theta1_prime_zero(q, pw)

        def f_of_t(tt):
            return log((pi / (2 * g)) * th1p / theta(2, pi * tt / (2 * g), q, pw))

        if not theta_factor:
            resid = (_second_derivative(f_of_t, t0, h) - exp(2 * f_of_t(t0))) \
                / exp(2 * f_of_t(t0))
            return rounded(abs(resid), p)

        if n < 1:
            raise ValueError("n must be >= 1")

        def big_a(N, tt):
            cn = mpf(1)
            for i in range(N):
                cn *= factorial(i)
            cn = cn ** 2
            arg = (pi / 2) * (1 + tt / g) * N
            return cn * exp(N * N * f_of_t(tt)) * theta(4, arg, q, pw)

        a_mid = big_a(n, t0)
        d1 = _first_derivative(lambda tt: big_a(n, tt), t0, h)
        d2 = _second_derivative(lambda tt: big_a(n, tt), t0, h)
        rhs = big_a(n + 1, t0) * big_a(n - 1, t0)
        resid = (a_mid * d2 - d1 ** 2 - rhs) / rhs
        return rounded(abs(resid), p)
