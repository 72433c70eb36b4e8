"""Exact finite-size machinery for the six-vertex model with domain wall
boundary conditions.

The N x N partition function is a Hankel determinant of derivatives of a
single generating function phi(t).  Everything here is exact at finite N:
Boltzmann weights, the integer-coefficient derivative recurrence, the scaled
determinant tau_N / c_N with c_N = (prod_{n<N} n!)^2, the partition function
Z_N = (a*b)^(N^2) * tau_N / c_N, independent discrete-sum and Laplace-moment
cross-checks, and the bilinear (Toda-type) residual in t.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

from mpmath import mp, mpf, sin, cos, sinh, cosh, exp, log, pi, quad

from .errors import (
    CutoffTooSmallError,
    PhaseDomainError,
    PrecisionExhaustedError,
    QuadratureError,
)
from .precision import Precision, rounded

PHASE_FE = "fe"
PHASE_D = "d"
PHASE_AF = "af"
PHASES = (PHASE_FE, PHASE_D, PHASE_AF)


@dataclass(frozen=True)
class PhaseParams:
    """Validated phase point.  zeta = t/gamma; delta is the anisotropy."""

    phase: str
    t: object
    gamma: object
    zeta: object
    delta: object


@dataclass(frozen=True)
class Weights:
    a: object
    b: object
    c: object


def phase_params(phase, t, gamma, p: Precision = Precision()) -> PhaseParams:
    """Build a PhaseParams, enforcing the defining inequalities.

    fe: |gamma| < t;  d: |t| < gamma and 0 < gamma < pi/2;  af: |t| < gamma,
    gamma > 0.  The error message names the violated inequality.
    """
    phase = phase.lower()
    if phase not in PHASES:
        raise PhaseDomainError(f"unknown phase {phase!r}, expected one of {PHASES}")
    with p.work():
        t = mpf(t)
        gamma = mpf(gamma)
        if phase == PHASE_FE:
            if not abs(gamma) < t:
                raise PhaseDomainError("fe phase requires |gamma| < t")
            delta = cosh(2 * gamma)
        elif phase == PHASE_D:
            if not (0 < gamma < pi / 2):
                raise PhaseDomainError("d phase requires 0 < gamma < pi/2")
            if not abs(t) < gamma:
                raise PhaseDomainError("d phase requires |t| < gamma")
            delta = -cos(2 * gamma)
        else:
            if not gamma > 0:
                raise PhaseDomainError("af phase requires gamma > 0")
            if not abs(t) < gamma:
                raise PhaseDomainError("af phase requires |t| < gamma")
            delta = -cosh(2 * gamma)
        zeta = t / gamma
    return PhaseParams(phase, rounded(t, p), rounded(gamma, p),
                       rounded(zeta, p), rounded(delta, p))


def weights_from(params: PhaseParams, p: Precision = Precision()) -> Weights:
    """Boltzmann weights (a, b, c) of the phase parameterization."""
    with p.work():
        t, g = mpf(params.t), mpf(params.gamma)
        if params.phase == PHASE_FE:
            a, b, c = sinh(t - g), sinh(t + g), sinh(2 * g)
        elif params.phase == PHASE_D:
            a, b, c = sin(g - t), sin(g + t), sin(2 * g)
        else:
            a, b, c = sinh(g - t), sinh(g + t), sinh(2 * g)
    return Weights(rounded(a, p), rounded(b, p), rounded(c, p))


# ---------------------------------------------------------------------------
# Derivatives of phi(t)
#
# phi splits into two cotangent-type terms whose derivatives obey an exact
# integer-coefficient polynomial recurrence:
#   d/dx coth x = 1 - coth^2 x      (hyperbolic phases)
#   d/dx cot x  = -1 - cot^2 x      (trigonometric phase)
# so phi^(n)(t) = P_n(w+) +/- P_n(w-) with w staged once per phase point.
# ---------------------------------------------------------------------------


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_diff(a):
    return [i * c for i, c in enumerate(a)][1:] or [0]


def derivative_polys(order_max: int, trig: bool):
    """P_0..P_order_max with P_0(w)=w and P_{n+1} = P_n'(w) * (±1 - w^2).

    trig=False gives the coth chain (1 - w^2), trig=True the cot chain
    (-1 - w^2).  Coefficients are exact Python ints.
    """
    chain = [-1, 0, -1] if trig else [1, 0, -1]
    polys = [[0, 1]]
    for _ in range(order_max):
        polys.append(_poly_mul(_poly_diff(polys[-1]), chain))
    return polys


def _poly_eval(coeffs, w):
    acc = mpf(0)
    for c in reversed(coeffs):
        acc = acc * w + c
    return acc


@dataclass(frozen=True)
class DerivativeTable:
    """phi and its t-derivatives at one phase point.

    rep holds the exact integer-coefficient polynomials; values[n] is
    phi^(n)(t) at working precision.
    """

    params: PhaseParams
    order_max: int
    rep: tuple
    values: tuple


def phi_derivatives(params: PhaseParams, order_max: int,
                    p: Precision = Precision()) -> DerivativeTable:
    """Exact derivative table of phi(t) up to order_max.

    fe: phi = coth(t-gamma) - coth(t+gamma)
    af: phi = coth(gamma-t) + coth(gamma+t)
    d:  phi = cot(gamma-t) + cot(gamma+t)
    The minus-argument branch picks up (-1)^n per derivative order.
    """
    if order_max < 0:
        raise ValueError("order_max must be >= 0")
    trig = params.phase == PHASE_D
    polys = derivative_polys(order_max, trig)
    with p.work():
        t, g = mpf(params.t), mpf(params.gamma)
        if params.phase == PHASE_FE:
            w_first = cosh(t - g) / sinh(t - g)
            w_second = cosh(t + g) / sinh(t + g)
            signs = lambda n: -1          # phi = coth(t-g) - coth(t+g)
            flip = lambda n: 1            # both arguments advance with +t
        elif params.phase == PHASE_AF:
            w_first = cosh(g + t) / sinh(g + t)
            w_second = cosh(g - t) / sinh(g - t)
            signs = lambda n: 1
            flip = lambda n: (-1) ** n    # d/dt acts on (gamma - t)
        else:
            w_first = cos(g + t) / sin(g + t)
            w_second = cos(g - t) / sin(g - t)
            signs = lambda n: 1
            flip = lambda n: (-1) ** n
        values = []
        for n in range(order_max + 1):
            first = _poly_eval(polys[n], w_first)
            second = _poly_eval(polys[n], w_second)
            values.append(rounded(first + signs(n) * flip(n) * second, p))
    return DerivativeTable(params, order_max, tuple(tuple(c) for c in polys),
                           tuple(values))


# ---------------------------------------------------------------------------
# Scaled Hankel determinant
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TauValue:
    """tau_N / c_N at one phase point, with its logarithm."""

    n: int
    scaled_tau: object
    log_scaled: object


def c_factor(N: int) -> int:
    """c_N = (prod_{n=0}^{N-1} n!)^2 as an exact integer."""
    prod = 1
    for n in range(N):
        prod *= factorial(n)
    return prod * prod


def _det_pivoted(rows, p: Precision):
    """Determinant by partially pivoted elimination with a cancellation
    sentinel: the run aborts if the largest intermediate exceeds the pivot
    product by 2**(bits-32) (Hankel matrices can cancel catastrophically)."""
    n = len(rows)
    sign = 1
    max_mag = max(abs(x) for row in rows for x in row)
    for col in range(n):
        piv_row = max(range(col, n), key=lambda r: abs(rows[r][col]))
        if rows[piv_row][col] == 0:
            return mpf(0)
        if piv_row != col:
            rows[col], rows[piv_row] = rows[piv_row], rows[col]
            sign = -sign
        piv = rows[col][col]
        for r in range(col + 1, n):
            factor = rows[r][col] / piv
            if factor:
                row_r, row_c = rows[r], rows[col]
                for cidx in range(col, n):
                    row_r[cidx] -= factor * row_c[cidx]
                    mag = abs(row_r[cidx])
                    if mag > max_mag:
                        max_mag = mag
    det = mpf(sign)
    for i in range(n):
        det *= rows[i][i]
    if det and max_mag / abs(det) > mpf(2) ** (p.bits - 32):
        raise PrecisionExhaustedError(
            f"determinant cancellation ratio {mp.nstr(max_mag / abs(det), 5)} "
            f"exceeds 2**(bits-32); increase Precision.bits")
    return det


def tau_scaled(params: PhaseParams, N: int, p: Precision = Precision(),
               table: DerivativeTable | None = None) -> TauValue:
    """tau_N / c_N as the determinant of phi^(i+k-2)/((i-1)!(k-1)!).

    Dividing row i by (i-1)! and column k by (k-1)! keeps the matrix entries
    of comparable size and cancels c_N exactly against the raw Hankel
    determinant.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    order = 2 * N - 2
    if table is None or table.order_max < order or table.params != params:
        table = phi_derivatives(params, order, Precision(p.bits + 64))
    with mp.workprec(p.bits + 64):
        rows = []
        for i in range(N):
            fact_i = mpf(factorial(i))
            rows.append([mpf(table.values[i + k]) / (fact_i * factorial(k))
                         for k in range(N)])
        det = _det_pivoted(rows, p)
        logdet = log(det)
    return TauValue(N, rounded(det, p), rounded(logdet, p))


def partition_Z(params: PhaseParams, N: int, p: Precision = Precision(),
                table: DerivativeTable | None = None):
    """Z_N = (a*b)^(N^2) * tau_N / c_N."""
    w = weights_from(params, Precision(p.bits + 64))
    tv = tau_scaled(params, N, p, table=table)
    with p.work():
        out = (mpf(w.a) * mpf(w.b)) ** (N * N) * mpf(tv.scaled_tau)
    return rounded(out, p)


# ---------------------------------------------------------------------------
# Discrete-sum cross-check (fe / af phases carry a discrete measure)
# ---------------------------------------------------------------------------


def tau_discrete_sum(params: PhaseParams, N: int, cutoff: int,
                     p: Precision = Precision()):
    """Unscaled tau_N as an explicit N-fold sum over distinct integer modes.

    fe: tau_N = 2^(N^2+N) * sum_{0<=l_1<...<l_N<=cutoff} D(l)^2
                  exp(-2t sum l_i) prod sinh(2 gamma l_i)
    af: tau_N = 2^(N^2)  * sum_{-cutoff<=l_1<...<l_N<=cutoff} D(l)^2
                  prod exp(2 t l_i - 2 gamma |l_i|)

    The sum runs over strictly increasing tuples; symmetry of the squared
    Vandermonde D(l)^2 supplies the N! that relabels them.  The prefactors
    follow from the mode expansion of phi (the N=1 case telescopes to
    phi(t), which the tests pin down).  Raises CutoffTooSmallError unless a
    geometric tail bound certifies relative accuracy 2**(-bits/2).
    """
    if params.phase not in (PHASE_FE, PHASE_AF):
        raise PhaseDomainError("discrete sum exists in fe/af phases only")
    if N < 1:
        raise ValueError("N must be >= 1")
    with p.work():
        t, g = mpf(params.t), mpf(params.gamma)
        if params.phase == PHASE_FE:
            modes = range(0, cutoff + 1)
            weight = {l: 4 * exp(-2 * t * l) * sinh(2 * g * l) for l in modes}
            pref = mpf(2) ** (N * N + N) / mpf(4) ** N
        else:
            modes = range(-cutoff, cutoff + 1)
            weight = {l: 2 * exp(2 * t * l - 2 * g * abs(l)) for l in modes}
            pref = mpf(2) ** (N * N) / mpf(2) ** N
        total = mpf(0)
        shell_abs = {}
        for tup in itertools.combinations(modes, N):
            van = 1
            for i in range(N):
                for j in range(i + 1, N):
                    van *= tup[j] - tup[i]
            term = mpf(van * van)
            for l in tup:
                term *= weight[l]
            total += term
            shell = max(abs(l) for l in tup)
            shell_abs[shell] = shell_abs.get(shell, mpf(0)) + abs(term)
        total *= pref
        # geometric continuation of the outermost shells bounds the tail
        tops = sorted(shell_abs)[-2:]
        if len(tops) < 2 or shell_abs[tops[-1]] == 0:
            raise CutoffTooSmallError("cutoff too small to estimate a tail")
        ratio = shell_abs[tops[-1]] / shell_abs[tops[-2]]
        if ratio >= 1:
            raise CutoffTooSmallError(
                f"shell sums not yet decaying at cutoff={cutoff}")
        tail = pref * shell_abs[tops[-1]] * ratio / (1 - ratio)
        if not abs(total) > 0 or tail / abs(total) > mpf(2) ** (-p.bits // 2):
            raise CutoffTooSmallError(
                f"tail bound {mp.nstr(tail, 5)} exceeds 2^(-bits/2) of the sum; "
                f"raise cutoff above {cutoff}")
        out = total
    return rounded(out, p)


# ---------------------------------------------------------------------------
# Bilinear (Toda) residual
# ---------------------------------------------------------------------------


def _scaled_toda_factor(N: int):
    """c_{N+1} c_{N-1} / c_N^2 from the exact integer factorials (= N^2)."""
    num = c_factor(N + 1) * c_factor(N - 1)
    den = c_factor(N) ** 2
    assert num % den == 0
    return num // den


def toda_residual(params: PhaseParams, N: int, p: Precision = Precision()):
    """Relative residual of the bilinear identity at fixed gamma.

    With s_N = tau_N / c_N the identity reads
        s_N s_N'' - (s_N')^2 = d_N s_{N+1} s_{N-1},   d_N = c_{N+1}c_{N-1}/c_N^2,
    and s_0 = 1 by the tau_0 = 1 convention.  Derivatives in t use 5-point
    central differences at step h = 2^(-bits/5), balancing h^4 truncation
    against 2^(-bits)/h^2 roundoff; the achievable residual scale is
    therefore ~2^(-3*bits/5).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    pw = Precision(p.bits + 64)
    h = mpf(2) ** (-(p.bits // 5))
    for _ in range(4):
        try:
            with pw.work():
                offsets = [mpf(params.t) + i * h for i in (-2, -1, 0, 1, 2)]
            stencil = [phase_params(params.phase, t_off, params.gamma, pw)
                       for t_off in offsets]
            break
        except PhaseDomainError:
            h /= 4
    else:
        raise PhaseDomainError("differentiation stencil leaves the phase region")

    def s(prm, n):
        if n == 0:
            return mpf(1)
        return mpf(tau_scaled(prm, n, pw).scaled_tau)

    with pw.work():
        vals = [s(prm, N) for prm in stencil]
        d1 = (-vals[4] + 8 * vals[3] - 8 * vals[1] + vals[0]) / (12 * h)
        d2 = (-vals[4] + 16 * vals[3] - 30 * vals[2] + 16 * vals[1] - vals[0]) \
            / (12 * h ** 2)
        center = stencil[2]
        lhs = vals[2] * d2 - d1 ** 2
        rhs = _scaled_toda_factor(N) * s(center, N + 1) * s(center, N - 1)
        resid = abs(lhs - rhs) / abs(rhs)
    return rounded(resid, p)


# ---------------------------------------------------------------------------
# Laplace-moment check (d phase carries a smooth measure)
# ---------------------------------------------------------------------------


def laplace_moment_check(params: PhaseParams, i_max: int,
                         p: Precision = Precision()):
    """Max | quadrature moment - phi^(i) | for i = 0..i_max (d phase).

    The smooth measure has density sinh(lambda(pi-2 gamma)/2)/sinh(lambda pi/2);
    moments are integrated over the whole line with exponential tails and
    compared against the exact derivative table.
    """
    if params.phase != PHASE_D:
        raise PhaseDomainError("Laplace-moment check applies to the d phase")
    table = phi_derivatives(params, i_max, Precision(p.bits + 32))
    with p.work():
        t, g = mpf(params.t), mpf(params.gamma)

        def density(lam):
            if lam == 0:
                return (pi - 2 * g) / pi
            return sinh(lam * (pi - 2 * g) / 2) / sinh(lam * pi / 2)

        worst = mpf(0)
        for i in range(i_max + 1):
            val, err = quad(lambda lam: lam ** i * exp(t * lam) * density(lam),
                            [mp.ninf, 0, mp.inf], error=True)
            if err > mpf(2) ** (-p.bits // 2):
                raise QuadratureError(
                    f"moment {i} quadrature stalled at error {mp.nstr(err, 5)}",
                    achieved=err)
            worst = max(worst, abs(val - mpf(table.values[i])))
    return rounded(worst, p)
