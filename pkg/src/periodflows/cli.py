"""Command-line verification harness.

Subcommands (exit codes: 0 pass, 1 verification failure, 2 bad input):

    verify ramanujan --order N
    verify periods --tau RE,IM --cutoff R --terms N
    verify flows --g G --trials T --seed S
    verify all [--order N] [--seed S]
    eval phi1 --tau RE,IM --terms N
    check symplectic --matrix M.json
    leaf sample --delta D.json|identity --grid "a..b:n" [--g G] --out F.csv

Global flags: --seed, --tol, --out, --format. Output is deterministic for a
fixed configuration: floats are serialized with 17 significant digits and no
timestamps or timings are embedded.
"""

from __future__ import annotations

import argparse
import itertools
import re
import sys

import numpy as np

from . import derham, elliptic, flows, qseries, sympgrp
from . import siegel as siegel_mod
from .numerics import matrix_from_json, matrix_to_json, maxabs
from .sympgrp import NotInGSpError, TWO_PI_I


class BadInputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# deterministic serialization (17 significant digits)
# ---------------------------------------------------------------------------

def _fmt_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        return '"%s"' % x
    s = format(float(x), ".17g")
    return s


def render_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            '%s  "%s": %s' % (pad, k, render_json(v, indent + 1))
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n%s}" % pad
    if isinstance(obj, (list, tuple)):
        inner = ", ".join(render_json(v, indent + 1) for v in obj)
        return "[" + inner + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return "[%s, %s]" % (_fmt_float(obj.real), _fmt_float(obj.imag))
    if isinstance(obj, str):
        return '"%s"' % obj.replace("\\", "\\\\").replace('"', '\\"')
    raise TypeError(f"cannot serialize {type(obj)}")


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def parse_complex(s: str) -> complex:
    """Parse '0.5+2i' style complex numbers ('i' or 'j' notation)."""
    t = s.strip().replace(" ", "").replace("i", "j")
    if not t:
        raise BadInputError("empty complex literal")
    try:
        return complex(t)
    except ValueError:
        t2 = re.sub(r"(?<![0-9.)])j", "1j", t)
        try:
            return complex(t2)
        except ValueError as exc:
            raise BadInputError(f"cannot parse complex number {s!r}") from exc


def parse_tau_arg(s: str) -> complex:
    """--tau RE,IM or a single complex literal."""
    if "," in s:
        re_s, im_s = s.split(",", 1)
        try:
            return complex(float(re_s), float(im_s))
        except ValueError as exc:
            raise BadInputError(f"cannot parse tau {s!r}") from exc
    return parse_complex(s)


def parse_grid(spec: str, g: int):
    """Mini-language 'a..b:n' per coordinate, ';'-separated.

    One range: tau = z * 1_g sweeping the range. g(g+1)/2 ranges: Cartesian
    product over the upper-triangle coordinates in row-major order.
    """
    ranges = []
    for part in spec.split(";"):
        m = re.fullmatch(r"(.+?)\.\.(.+?):(\d+)", part.strip())
        if not m:
            raise BadInputError(f"bad grid range {part!r}; expected 'a..b:n'")
        a, b, n = parse_complex(m.group(1)), parse_complex(m.group(2)), int(m.group(3))
        if n < 1:
            raise BadInputError("grid needs at least one point")
        pts = [a + (b - a) * (k / (n - 1) if n > 1 else 0.0) for k in range(n)]
        ranges.append(pts)
    n_coords = g * (g + 1) // 2
    taus = []
    if len(ranges) == 1:
        for z in ranges[0]:
            taus.append(z * np.eye(g, dtype=np.complex128))
    elif len(ranges) == n_coords:
        pairs = [(k, l) for k in range(g) for l in range(k, g)]
        for combo in itertools.product(*ranges):
            tau = np.zeros((g, g), dtype=np.complex128)
            for (k, l), z in zip(pairs, combo):
                tau[k, l] = z
                tau[l, k] = z
            taus.append(tau)
    else:
        raise BadInputError(
            f"grid needs 1 or {n_coords} ranges for g={g}, got {len(ranges)}"
        )
    return taus


# ---------------------------------------------------------------------------
# verification suites (shared by `verify all` and the acceptance tests)
# ---------------------------------------------------------------------------

def ramanujan_suite(order: int) -> dict:
    r = qseries.ramanujan_residuals(order)
    zero = all(s.is_zero() for s in r)
    return {
        "order": order,
        "residuals": "zero" if zero else "nonzero",
        "passed": zero,
    }


def gauss_manin_suite(g_list=(1, 2, 3), step: float = 1e-5, tol: float = 1e-7) -> dict:
    """FD check of the frame-family derivative structure for each g.

    For every direction (i, j): d omega_i = eta_j, d omega_j = eta_i,
    d omega_k = 0 otherwise, d eta_k = 0.
    """
    worst = 0.0
    for g in g_list:
        rng = np.random.default_rng(1000 + g)
        tau = siegel_mod.random_siegel_point(g, rng)
        frame = derham.canonical_frame(tau)
        for i in range(1, g + 1):
            for j in range(i, g + 1):
                d_om, d_et = derham.gauss_manin_fd(derham.canonical_frame, tau, i, j, step)
                for k in range(1, g + 1):
                    if k == i:
                        target = frame.eta[j - 1]
                    elif k == j:
                        target = frame.eta[i - 1]
                    else:
                        target = 0 * frame.eta[k - 1]
                    worst = max(worst, (d_om[k - 1] - target).norm())
                    worst = max(worst, d_et[k - 1].norm())
    return {"g": list(g_list), "step": step, "max_residual": worst, "passed": worst <= tol}


def elliptic_suite(taus=(1j, 2j, 0.5 + 2j), cutoff: int = 400, order: int = 120,
                   tol: float = 1e-6) -> dict:
    reports = []
    worst = 0.0
    for tau in taus:
        rep = elliptic.period_identity_report(tau, cutoff, order)
        resid = max(
            rep["e2_residual"], rep["e4_residual"], rep["e6_residual"],
            rep["multiplier_residual"], rep["tau_residual"],
        )
        worst = max(worst, resid)
        reports.append({
            "tau": complex(tau),
            "e2_residual": rep["e2_residual"],
            "e4_residual": rep["e4_residual"],
            "e6_residual": rep["e6_residual"],
            "multiplier_residual": rep["multiplier_residual"],
            "tau_residual": rep["tau_residual"],
        })
    return {"cutoff": cutoff, "order": order, "points": reports,
            "max_residual": worst, "passed": worst <= tol}


def flows_suite(g_list=(1, 2, 3), trials: int = 10, seed: int = 20240901,
                tol: float = 1e-9) -> dict:
    """Seeded leaf/flow identities: factorization through the leaf parabolic,
    integer equivariance (representative and coset level), the parabolic
    round trip, the FD generator check, endpoint agreement of the
    integrator, and translation invariance."""
    rng = np.random.default_rng(seed)
    res = {k: 0.0 for k in
           ("leaf_factorization", "equivariance", "parabolic_round_trip",
            "generator_fd", "integrator_endpoint")}
    coset_ok = True
    translation_ok = True
    for g in g_list:
        for _ in range(trials):
            tau = siegel_mod.random_siegel_point(g, rng)
            delta = sympgrp.random_symplectic_word(g, rng, 3)
            if flows.cocycle_det_scale(delta, tau) > 1e-3:
                lhs = flows.leaf_point(delta, tau)
                rhs = flows.unipotent(tau) @ sympgrp.parabolic_mirror(
                    flows.leaf_parabolic(delta, tau))
                res["leaf_factorization"] = max(res["leaf_factorization"], maxabs(lhs - rhs))
            gamma = sympgrp.random_integer_symplectic(g, rng)
            if flows.cocycle_det_scale(delta @ gamma, tau) > 1e-3:
                r, ok = flows.equivariance_residual(delta, gamma, tau)
                res["equivariance"] = max(res["equivariance"], r)
                coset_ok = coset_ok and ok
            p = sympgrp.random_parabolic(g, rng)
            d2 = flows.parabolic_to_leaf(tau, p)
            p_back = flows.leaf_parabolic(d2, tau)
            res["parabolic_round_trip"] = max(
                res["parabolic_round_trip"],
                maxabs(p_back.a - p.a), maxabs(p_back.b - p.b))
            k = int(rng.integers(1, g + 1))
            l = int(rng.integers(k, g + 1))
            res["generator_fd"] = max(res["generator_fd"],
                                      flows.generator_direction_residual(tau, k, l))
            m0 = flows.unipotent(tau)
            t = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            end_rk = flows.rk4_flow(m0, k, l, t, int(rng.integers(1, 16)))
            t_mat = t * sympgrp.symmetric_unit(k, l, g)
            end_exact = flows.exact_flow(m0, t_mat)
            scale = max(1.0, maxabs(end_exact))
            res["integrator_endpoint"] = max(
                res["integrator_endpoint"], maxabs(end_rk - end_exact) / scale)
            n_int = rng.integers(-3, 4, size=(g, g)).astype(np.complex128)
            n_int = n_int + n_int.T
            translation_ok = translation_ok and flows.translation_invariant(tau, n_int)
            translation_ok = translation_ok and not flows.translation_invariant(
                tau, n_int + 0.25 * sympgrp.symmetric_unit(1, 1, g))
    ident_max = max(res[k] for k in ("leaf_factorization", "equivariance",
                                     "parabolic_round_trip", "generator_fd"))
    passed = (ident_max <= tol and res["integrator_endpoint"] <= 1e-12
              and coset_ok and translation_ok)
    out = {"g": list(g_list), "trials": trials, "seed": seed}
    out.update(res)
    out.update({"coset_checks": coset_ok, "translation_checks": translation_ok,
                "passed": passed})
    return out


def verify_all(order: int = 200, seed: int = 20240901, tol_override: float | None = None) -> dict:
    report = {
        "ramanujan": ramanujan_suite(order),
        "gauss_manin": gauss_manin_suite(),
        "elliptic": elliptic_suite(),
        "flows": flows_suite(seed=seed),
    }
    if tol_override is not None:
        report["gauss_manin"]["passed"] = report["gauss_manin"]["max_residual"] <= tol_override
        report["elliptic"]["passed"] = report["elliptic"]["max_residual"] <= tol_override
        report["flows"]["passed"] = report["flows"]["passed"] and max(
            report["flows"][k] for k in
            ("leaf_factorization", "equivariance", "parabolic_round_trip",
             "generator_fd", "integrator_endpoint")) <= tol_override
    report["passed"] = all(report[k]["passed"] for k in
                           ("ramanujan", "gauss_manin", "elliptic", "flows"))
    return report


# ---------------------------------------------------------------------------
# subcommand drivers
# ---------------------------------------------------------------------------

def _cmd_verify_ramanujan(args) -> int:
    rep = ramanujan_suite(args.order)
    _emit(render_json({"order": rep["order"], "residuals": rep["residuals"]}),
          args.out)
    return 0 if rep["passed"] else 1


def _cmd_verify_periods(args) -> int:
    tau = parse_tau_arg(args.tau)
    rep = elliptic.period_identity_report(tau, args.cutoff, args.terms)
    tol = args.tol if args.tol is not None else 1e-6
    resid = max(rep["e2_residual"], rep["e4_residual"], rep["e6_residual"],
                rep["multiplier_residual"], rep["tau_residual"])
    out = {
        "tau": rep["tau"],
        "cutoff": rep["cutoff"],
        "order": rep["order"],
        "e2_residual": rep["e2_residual"],
        "e4_residual": rep["e4_residual"],
        "e6_residual": rep["e6_residual"],
        "multiplier_residual": rep["multiplier_residual"],
        "tau_residual": rep["tau_residual"],
        "g2_bound": rep["g2_bound"],
        "g3_bound": rep["g3_bound"],
        "class_sign": rep["class_sign"],
        "tolerance": tol,
        "passed": resid <= tol,
    }
    _emit(render_json(out), args.out)
    return 0 if out["passed"] else 1


def _cmd_verify_flows(args) -> int:
    tol = args.tol if args.tol is not None else 1e-9
    g_list = tuple(range(1, args.g + 1)) if args.g else (1, 2, 3)
    rep = flows_suite(g_list=g_list, trials=args.trials, seed=args.seed, tol=tol)
    _emit(render_json(rep), args.out)
    return 0 if rep["passed"] else 1


def _cmd_verify_all(args) -> int:
    rep = verify_all(order=args.order, seed=args.seed, tol_override=args.tol)
    _emit(render_json(rep), args.out)
    return 0 if rep["passed"] else 1


def _cmd_eval_phi1(args) -> int:
    tau = parse_tau_arg(args.tau)
    pt, bounds = qseries.eisenstein_point(tau, args.terms)
    out = {
        "tau": tau,
        "terms": args.terms,
        "e2": pt.e2,
        "e4": pt.e4,
        "e6": pt.e6,
        "tail_bounds": bounds,
        "chart_ok": pt.chart_ok,
    }
    _emit(render_json(out), args.out)
    return 0


def _cmd_check_symplectic(args) -> int:
    import json as _json

    try:
        with open(args.matrix) as fh:
            m = matrix_from_json(_json.load(fh))
    except (OSError, ValueError, _json.JSONDecodeError) as exc:
        raise BadInputError(f"cannot read matrix: {exc}") from exc
    tol = args.tol if args.tol is not None else 1e-10
    if m.shape[0] != m.shape[1] or m.shape[0] % 2:
        raise BadInputError("matrix must be square of even dimension")
    diag = sympgrp.symplectic_diagnostics(m)
    ok = sympgrp.is_symplectic(m, tol)
    try:
        nu = sympgrp.gsp_multiplier(m, tol)
    except NotInGSpError:
        nu = None
    out = {
        "symplectic": ok,
        "nu": nu,
        "residuals": {k: diag[k] for k in ("mjmt", "ab_t", "cd_t", "adbc")},
    }
    _emit(render_json(out), args.out)
    return 0


def _cmd_leaf_sample(args) -> int:
    import json as _json

    if args.delta == "identity":
        g = args.g or 1
        delta = np.eye(2 * g, dtype=np.complex128)
    else:
        try:
            with open(args.delta) as fh:
                delta = matrix_from_json(_json.load(fh))
        except (OSError, ValueError, _json.JSONDecodeError) as exc:
            raise BadInputError(f"cannot read delta: {exc}") from exc
        if delta.shape[0] % 2 or delta.shape[0] != delta.shape[1]:
            raise BadInputError("delta must be square of even dimension")
        g = delta.shape[0] // 2
        if args.g and args.g != g:
            raise BadInputError(f"--g {args.g} disagrees with delta size {delta.shape}")
    taus = parse_grid(args.grid, g)
    try:
        samples = flows.leaf_samples(delta, taus)
    except ValueError as exc:
        raise BadInputError(str(exc)) from exc
    if args.format == "json":
        rows = [{"tau": matrix_to_json(t), "state": matrix_to_json(s)} for t, s in samples]
        _emit(render_json({"g": g, "count": len(rows), "samples": rows}), args.out)
        return 0
    header = []
    for i in range(g):
        for j in range(g):
            header += [f"tau_{i}{j}_re", f"tau_{i}{j}_im"]
    for i in range(2 * g):
        for j in range(2 * g):
            header += [f"s_{i}{j}_re", f"s_{i}{j}_im"]
    lines = [",".join(header)]
    for tau, state in samples:
        vals = []
        for z in list(tau.ravel()) + list(state.ravel()):
            vals += [format(z.real, ".17g"), format(z.imag, ".17g")]
        lines.append(",".join(vals))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="periodflows",
        description="verification suites and data emitters for symplectic period geometry",
    )
    parser.add_argument("--seed", type=int, default=20240901, help="RNG seed (determinism contract)")
    parser.add_argument("--tol", type=float, default=None, help="tolerance override")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default=None)
    top = parser.add_subparsers(dest="group", required=True)

    ver = top.add_parser("verify", help="run a verification suite")
    ver_sub = ver.add_subparsers(dest="action", required=True)
    p = ver_sub.add_parser("ramanujan", help="exact residuals of the differential system")
    p.add_argument("--order", type=int, default=200)
    p.set_defaults(func=_cmd_verify_ramanujan)
    p = ver_sub.add_parser("periods", help="lattice-sum vs q-series period identities")
    p.add_argument("--tau", required=True, help="RE,IM or complex literal")
    p.add_argument("--cutoff", type=int, default=400)
    p.add_argument("--terms", type=int, default=120)
    p.set_defaults(func=_cmd_verify_periods)
    p = ver_sub.add_parser("flows", help="leaf and flow identities")
    p.add_argument("--g", type=int, default=None)
    p.add_argument("--trials", type=int, default=10)
    p.set_defaults(func=_cmd_verify_flows)
    p = ver_sub.add_parser("all", help="every suite in order")
    p.add_argument("--order", type=int, default=200)
    p.set_defaults(func=_cmd_verify_all)

    ev = top.add_parser("eval", help="evaluate analytic data")
    ev_sub = ev.add_subparsers(dest="action", required=True)
    p = ev_sub.add_parser("phi1", help="the solution triple (E2, E4, E6)")
    p.add_argument("--tau", required=True)
    p.add_argument("--terms", type=int, default=120)
    p.set_defaults(func=_cmd_eval_phi1)

    chk = top.add_parser("check", help="predicates on matrix files")
    chk_sub = chk.add_subparsers(dest="action", required=True)
    p = chk_sub.add_parser("symplectic", help="symplectic/GSp membership with diagnostics")
    p.add_argument("--matrix", required=True, help="matrix JSON path")
    p.set_defaults(func=_cmd_check_symplectic)

    leaf = top.add_parser("leaf", help="leaf data emitters")
    leaf_sub = leaf.add_subparsers(dest="action", required=True)
    p = leaf_sub.add_parser("sample", help="sample a twisted leaf over a tau grid")
    p.add_argument("--delta", required=True, help="matrix JSON path or 'identity'")
    p.add_argument("--grid", required=True, help="'a..b:n' ranges, ';'-separated")
    p.add_argument("--g", type=int, default=None)
    p.set_defaults(func=_cmd_leaf_sample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.format is None:
        args.format = "csv" if (args.group, args.action) == ("leaf", "sample") else "json"
    try:
        return args.func(args)
    except BadInputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
