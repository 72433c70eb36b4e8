"""Command-line front end.

Subcommands
-----------
exact    rows (N, log(tau_N/c_N), Z_N, log Z_N / N^2) over an N range
check    named cross-checks (toda | oracle | identities | laplace |
         derivative | ode) with pass/fail and measured residuals
bulk     free energy, z_limit and endpoints over a parameter grid
density  (mu, rho) samples with saturated intervals annotated
fit      theta-modulated ratios r_N and their spread (af), or the
         smooth-correction exponent report (d)

Parameters are decimal strings parsed directly at the requested binary
precision (no double round-trip).  Output is CSV (default) or JSON on stdout
or --out; identical configurations produce byte-identical output.  Exit
codes: 0 success / all checks pass, 1 computational failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from mpmath import mp, mpf, sqrt, pi

from . import asymptotics
from .errors import SixVertexError, PhaseDomainError
from .exactcore import (PHASES, laplace_moment_check, partition_Z,
                        phase_params, tau_scaled, toda_residual, weights_from)
from .oracle import Z_bruteforce
from .precision import Precision
from .specfun import (elliptic_E, elliptic_K, elliptic_data_from_gamma,
                      jacobi_sn_cn_dn, jacobi_zeta, theta, theta1_prime_zero)

ENV_BITS = "SIXVERTEX_BITS"


def _default_bits():
    try:
        return int(os.environ.get(ENV_BITS, "256"))
    except ValueError:
        return 256


def _digits(bits):
    return max(17, int(bits * 0.30103) - 2)


def _fmt(x, bits):
    with mp.workprec(bits + 32):
        return mp.nstr(mpf(x), _digits(bits))


def _carry(x, bits):
    """Serialize a value for a worker round-trip without digit loss."""
    with mp.workprec(bits + 32):
        return mp.nstr(mpf(x), _digits(bits) + 12)


def parse_int_range(text):
    """'5' -> [5];  '1..10' -> [1,...,10]."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def parse_grid(text, bits):
    """'0.3' -> [0.3];  'a..b..step' -> inclusive decimal grid."""
    with mp.workprec(bits + 32):
        parts = text.split("..")
        if len(parts) == 1:
            return [mpf(parts[0])]
        if len(parts) != 3:
            raise ValueError(f"grid must be 'value' or 'start..stop..step', got {text!r}")
        start, stop, step = (mpf(s) for s in parts)
        if step <= 0:
            raise ValueError("grid step must be positive")
        out = []
        x = start
        while x <= stop + step / 2:
            out.append(x)
            x += step
        return out


def _emit(rows, header, args, meta=None):
    if args.format == "json":
        payload = {"meta": meta or {}, "columns": header,
                   "rows": [dict(zip(header, r)) for r in rows]}
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params_from_args(args, p):
    with mp.workprec(p.bits + 32):
        if getattr(args, "zeta", None) is not None:
            t = mpf(args.zeta) * mpf(args.gamma)
        else:
            t = mpf(args.t if args.t is not None else "0")
        return phase_params(args.phase, t, mpf(args.gamma), p)


# ---------------------------------------------------------------------------
# workers (top level so ProcessPoolExecutor can pickle them)
# ---------------------------------------------------------------------------


def _exact_row(job):
    phase, t, gamma, n, bits = job
    p = Precision(bits)
    prm = phase_params(phase, t, gamma, p)
    tv = tau_scaled(prm, n, p)
    z = partition_Z(prm, n, p)
    with p.work():
        logz_n2 = mp.log(z) / n ** 2
    return (n, _fmt(tv.log_scaled, bits), _fmt(z, bits), _fmt(logz_n2, bits))


def _bulk_row(job):
    phase, t, gamma, bits = job
    p = Precision(bits)
    prm = phase_params(phase, t, gamma, p)
    fe = asymptotics.bulk_f(prm, p)
    geom = asymptotics.endpoints(prm, p)
    ep = [geom.alpha, geom.alpha_prime, geom.beta_prime, geom.beta]
    eps = [("" if e is None else _fmt(e, bits)) for e in ep]
    return (_fmt(prm.zeta, bits), _fmt(prm.t, bits), _fmt(fe.f, bits),
            _fmt(fe.z_limit, bits), *eps)


def _density_row(job):
    phase, t, gamma, mu, bits = job
    p = Precision(bits)
    prm = phase_params(phase, t, gamma, p)
    geom = asymptotics.endpoints(prm, p)
    rho = asymptotics.rho_at(prm, geom, mu, p)
    return (_fmt(mu, bits), _fmt(rho, bits))


def _map_jobs(fn, jobs, n_workers):
    if n_workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n_workers) as ex:
        return list(ex.map(fn, jobs))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_exact(args):
    p = Precision(args.bits)
    prm = _params_from_args(args, p)   # validate before fanning out
    t_str, g_str = _carry(prm.t, args.bits), _carry(prm.gamma, args.bits)
    ns = parse_int_range(args.n)
    rows = _map_jobs(_exact_row, [(prm.phase, t_str, g_str, n, args.bits)
                                  for n in ns], args.jobs)
    rows.sort(key=lambda r: r[0])
    header = ["N", "log_tau_scaled", "Z", "log_Z_over_N2"]
    meta = {"phase": prm.phase, "t": _fmt(prm.t, args.bits),
            "gamma": _fmt(prm.gamma, args.bits), "bits": args.bits,
            "note": "log_tau_scaled = log(tau_N/c_N), c_N = (prod n!)^2"}
    _emit(rows, header, args, meta)
    return 0


def cmd_bulk(args):
    p = Precision(args.bits)
    zetas = parse_grid(args.zeta if args.zeta is not None else args.t, args.bits)
    with mp.workprec(args.bits + 32):
        g = mpf(args.gamma)
        if args.zeta is not None:
            ts = [z * g for z in zetas]
        else:
            ts = zetas
    jobs = [(args.phase, _carry(t, args.bits), _carry(g, args.bits), args.bits)
            for t in ts]
    for job in jobs:
        phase_params(job[0], job[1], job[2], p)   # validate all up front
    rows = _map_jobs(_bulk_row, jobs, args.jobs)
    header = ["zeta", "t", "f", "z_limit", "alpha", "alpha_prime",
              "beta_prime", "beta"]
    meta = {"phase": args.phase, "gamma": _fmt(g, args.bits), "bits": args.bits,
            "note": "f = lim log(tau_N/c_N)/N^2; z_limit = a*b*exp(f)"}
    _emit(rows, header, args, meta)
    return 0


def cmd_density(args):
    p = Precision(args.bits)
    prm = _params_from_args(args, p)
    geom = asymptotics.endpoints(prm, p)
    prof = asymptotics.density(prm, geom, 2, p)   # support/saturation only
    (lo, hi) = prof.support
    with p.work():
        step = (mpf(hi) - mpf(lo)) / args.grid
        mus = [_carry(mpf(lo) + (i + mpf(1) / 2) * step, args.bits)
               for i in range(args.grid)]
    jobs = [(prm.phase, _carry(prm.t, args.bits), _carry(prm.gamma, args.bits),
             mu, args.bits) for mu in mus]
    rows = _map_jobs(_density_row, jobs, args.jobs)
    header = ["mu", "rho"]
    meta = {
        "phase": prm.phase, "t": _fmt(prm.t, args.bits),
        "gamma": _fmt(prm.gamma, args.bits), "bits": args.bits,
        "support": [_fmt(lo, args.bits), _fmt(hi, args.bits)],
        "saturated_intervals": [[_fmt(a, args.bits), _fmt(b, args.bits)]
                                for (a, b) in prof.saturated_intervals],
        "bound": "inf" if prof.bound == mp.inf else _fmt(prof.bound, args.bits),
    }
    if args.format == "csv":
        # annotate saturation in-band for plot-ready CSV
        sat = prof.saturated_intervals
        rows = [(mu, rho,
                 int(any(mpf(a) <= mpf(mu) <= mpf(b) for (a, b) in sat)))
                for (mu, rho) in rows]
        header = ["mu", "rho", "saturated"]
    _emit(rows, header, args, meta)
    return 0


def cmd_fit(args):
    p = Precision(args.bits)
    prm = _params_from_args(args, p)
    ns = parse_int_range(args.n)
    taus = [tau_scaled(prm, n, p) for n in ns]
    if prm.phase == "af":
        ratios, spread = asymptotics.subleading_AF_fit(taus, prm, p)
        rows = [(n, _fmt(r, args.bits)) for n, r in zip(ns, ratios)]
        header = ["N", "r_N"]
        meta = {"phase": prm.phase, "t": _fmt(prm.t, args.bits),
                "gamma": _fmt(prm.gamma, args.bits), "bits": args.bits,
                "spread_top_half": _fmt(spread, args.bits),
                "note": "r_N = log(tau_N/c_N) - N^2 f - log theta4((pi/2)(1+zeta)N)"}
    elif prm.phase == "d":
        kappa, const, resid = asymptotics.smooth_fit_D(taus, prm, p)
        fe = asymptotics.bulk_f(prm, p)
        with p.work():
            rows = [(n, _fmt(mpf(tv.log_scaled) - n ** 2 * mpf(fe.f), args.bits))
                    for n, tv in zip(ns, taus)]
        header = ["N", "r_N"]
        meta = {"phase": prm.phase, "t": _fmt(prm.t, args.bits),
                "gamma": _fmt(prm.gamma, args.bits), "bits": args.bits,
                "kappa_fit": repr(kappa),
                "const_fit": repr(const), "max_fit_residual": repr(resid),
                "note": "r_N = log(tau_N/c_N) - N^2 f; kappa reported, not asserted"}
    else:
        raise PhaseDomainError("fit supports the af and d phases")
    _emit(rows, header, args, meta)
    return 0


def _check_report(names_vals_tols):
    rows = []
    ok = True
    for name, val, tol in names_vals_tols:
        passed = abs(val) < tol
        ok = ok and passed
        rows.append((name, mp.nstr(abs(mpf(val)), 8), mp.nstr(mpf(tol), 5),
                     "pass" if passed else "FAIL"))
    return rows, ok


def cmd_check(args):
    p = Precision(args.bits)
    checks = []
    if args.target == "toda":
        prm = _params_from_args(args, p)
        tol = mpf(2) ** (-p.bits // 2 + 16)
        for n in parse_int_range(args.n):
            checks.append((f"toda_residual_N{n}", toda_residual(prm, n, p), tol))
    elif args.target == "oracle":
        tol = mpf(2) ** (-p.bits // 2)
        with p.work():
            points = [("fe", mpf("1.5"), mpf("0.4")), ("d", mpf("0.3"), mpf("1.0")),
                      ("af", mpf("0.3"), mpf("1.0"))]
        for n in parse_int_range(args.n):
            for phase, t, g in points:
                prm = phase_params(phase, t, g, p)
                w = weights_from(prm, p)
                zdet = partition_Z(prm, n, p)
                zbf = Z_bruteforce(n, w.a, w.b, w.c, p)
                with p.work():
                    rel = (zdet - zbf) / zbf
                checks.append((f"oracle_{phase}_N{n}", rel, tol))
    elif args.target == "identities":
        checks = _identity_checks(p)
    elif args.target == "laplace":
        prm = phase_params("d", args.t or "0.3", args.gamma or "1.0", p)
        checks.append(("laplace_moments_max_err",
                       laplace_moment_check(prm, args.imax, p), mpf("1e-10")))
    elif args.target == "derivative":
        prm = _params_from_args(args, p)
        ep, closed = asymptotics.dfdzeta(prm, p)
        with p.work():
            checks.append(("dfdzeta_endpoint_vs_closed", ep - closed, mpf("1e-8")))
        if prm.phase == "af":
            geom = asymptotics.endpoints(prm, p)
            checks.append(("chemical_potential_residual",
                           asymptotics.chemb_residual(prm, geom, p), mpf("1e-8")))
    elif args.target == "ode":
        prm = _params_from_args(args, p)
        if prm.phase == "af":
            checks.append(("toda_of_theta_ansatz",
                           asymptotics.ode_check(prm, p, n=args.ansatz_n),
                           mpf("1e-6")))
        else:
            checks.append(("f_second_derivative_vs_exp2f",
                           asymptotics.ode_check(prm, p), mpf("1e-10")))
    rows, ok = _check_report(checks)
    header = ["check", "measured", "tolerance", "status"]
    meta = {"target": args.target, "bits": args.bits}
    _emit(rows, header, args, meta)
    return 0 if ok else 1


def _identity_checks(p):
    """The specfun identity suite at precision p (bound 2^(-bits+8))."""
    import random
    rng = random.Random(20260809)
    tol = mpf(2) ** (-p.bits + 8)
    out = []
    with p.work():
        # Jacobi identities at sampled (u, k)
        for i in range(4):
            k = mpf(rng.uniform(0.05, 0.95))
            K = elliptic_K(k, p)
            u = mpf(rng.uniform(0, 1)) * K
            sn, cn, dn = jacobi_sn_cn_dn(u, k, p)
            out.append((f"sn2+cn2-1_sample{i}", sn ** 2 + cn ** 2 - 1, tol))
            out.append((f"dn2+k2sn2-1_sample{i}", dn ** 2 + k ** 2 * sn ** 2 - 1, tol))
        # Legendre relation
        k = mpf("0.77")
        kp = sqrt(1 - k ** 2)
        E, Ep = elliptic_E(k, p), elliptic_E(kp, p)
        K, Kp = elliptic_K(k, p), elliptic_K(kp, p)
        out.append(("legendre_relation", E * Kp + Ep * K - K * Kp - pi / 2, tol))
        # theta_1'(0) = theta_2 theta_3 theta_4 (0)
        for q in ("0.001", "0.01", "0.1", "0.3"):
            q = mpf(q)
            lhs = theta1_prime_zero(q, p)
            rhs = theta(2, 0, q, p) * theta(3, 0, q, p) * theta(4, 0, q, p)
            out.append((f"theta1prime_q{q}", (lhs - rhs) / rhs, tol))
        # Zeta oddness / periodicity / quarter-period zero
        k = mpf("0.6")
        K = elliptic_K(k, p)
        u = mpf("0.37") * K
        out.append(("zeta_odd", jacobi_zeta(u, k, p) + jacobi_zeta(-u, k, p), tol))
        out.append(("zeta_period_2K",
                    jacobi_zeta(u + 2 * K, k, p) - jacobi_zeta(u, k, p), tol))
        out.append(("zeta_at_K", jacobi_zeta(K, k, p), tol))
        # nome round trip
        for gs in ("0.2", "1", "5"):
            ed = elliptic_data_from_gamma(mpf(gs), p)
            out.append((f"KprimeK_gamma{gs}",
                        ed.bigKprime / ed.bigK - pi / (2 * mpf(gs)),
                        mpf(2) ** (-p.bits // 2)))
    return out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(
        prog="sixvertex",
        description="Six-vertex model with domain wall boundary conditions: "
                    "exact determinants, enumeration checks, asymptotics.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, phase=True, nrange=None):
        sp.add_argument("--bits", type=int, default=_default_bits(),
                        help=f"binary precision (default 256 or ${ENV_BITS})")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", help="write output to this path instead of stdout")
        sp.add_argument("--jobs", type=int, default=1,
                        help="worker processes for grids/ranges")
        sp.add_argument("--config", help="JSON file with defaults for these flags")
        if phase:
            # not argparse-required so that --config can supply them
            sp.add_argument("--phase", choices=PHASES)
            sp.add_argument("--gamma", help="gamma as a decimal string")
            grp = sp.add_mutually_exclusive_group()
            grp.add_argument("--t", help="t as a decimal string")
            grp.add_argument("--zeta", help="zeta = t/gamma as a decimal string")
        if nrange:
            sp.add_argument("--n", default=nrange, help="N or N range 'lo..hi'")

    sp = sub.add_parser("exact", help="exact finite-N determinant data")
    common(sp, nrange="1..8")
    sp.set_defaults(fn=cmd_exact)

    sp = sub.add_parser("check", help="named cross-checks with pass/fail")
    sp.add_argument("target", choices=("toda", "oracle", "identities",
                                       "laplace", "derivative", "ode"))
    sp.add_argument("--imax", type=int, default=6,
                    help="laplace: highest moment checked")
    sp.add_argument("--ansatz-n", type=int, default=6,
                    help="ode (af): lattice size for the bilinear substitution")
    common(sp, phase=False, nrange="1..5")
    sp.add_argument("--phase", choices=PHASES, default="af")
    sp.add_argument("--gamma", default="1.0")
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--t")
    grp.add_argument("--zeta")
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("bulk", help="bulk free energy over a parameter grid")
    common(sp)
    sp.set_defaults(fn=cmd_bulk)

    sp = sub.add_parser("density", help="limiting eigenvalue density profile")
    common(sp)
    sp.add_argument("--grid", type=int, default=100, help="number of samples")
    sp.set_defaults(fn=cmd_density)

    sp = sub.add_parser("fit", help="subleading-correction ratios and spread")
    common(sp, nrange="2..16")
    sp.set_defaults(fn=cmd_fit)
    return ap


def _inject_config(argv):
    """Expand --config FILE into synthetic flags placed before the explicit
    ones, so explicit flags keep precedence (argparse takes the last value)."""
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config")
    known, _ = probe.parse_known_args(argv)
    if not known.config:
        return argv
    with open(known.config, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a JSON object")
    sub_idx = next((i for i, tok in enumerate(argv) if not tok.startswith("-")),
                   None)
    if sub_idx is None:
        return argv
    explicit = {tok.split("=", 1)[0] for tok in argv if tok.startswith("--")}
    mutex = {"--t", "--zeta"}
    flags = []
    for key, value in cfg.items():
        flag = "--" + str(key).replace("_", "-")
        if flag in explicit:
            continue
        if flag in mutex and (explicit & mutex):
            continue
        flags.append(f"{flag}={value}")
    return argv[:sub_idx + 1] + flags + argv[sub_idx + 1:]


_VALUE_FLAGS = ("--t", "--zeta", "--gamma", "--n")


def _join_negative_values(argv):
    """Merge '--t -0.3' into '--t=-0.3' so argparse does not mistake negative
    decimal values (or grids like -0.9..0.9..0.1) for option names."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) \
                and argv[i + 1].startswith("-") and len(argv[i + 1]) > 1 \
                and (argv[i + 1][1].isdigit() or argv[i + 1][1] == "."):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    argv = _join_negative_values(list(argv))
    ap = build_parser()
    try:
        argv = _inject_config(argv)
        args = ap.parse_args(argv)
        if args.command != "check":
            for name in ("phase", "gamma"):
                if getattr(args, name, None) is None:
                    print(f"invalid input: --{name} is required "
                          f"(flag or config file)", file=sys.stderr)
                    return 2
        return args.fn(args)
    except (PhaseDomainError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except SixVertexError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
