"""Command-line front end.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage error,
3 I/O error.  Errors are reported as one JSON object on stderr.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import analysis, arith, gfun, levy, sampler, xi
from .errors import FormatError, ValidationError, ZetaIddError
from .zeros_io import default_zero_path, load_zero_file, tail_bound

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
COMMANDS = ("eval", "compare", "verify-fourier", "check-cf", "levy", "sample", "report")
NEEDS_ZEROS = {"compare", "check-cf", "levy", "sample", "report"}
JSON_ONLY = {"check-cf", "report"}
DIRICHLET_LIMIT = 10**8
DEFAULT_Z = (2j, 1 + 2j, -3 + 1.5j)
DISCLAIMER = ("Finite-truncation checks can neither confirm nor refute the Riemann Hypothesis; "
              "they only describe the truncated objects at the stated heights.")


class UsageError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    command: str
    zeros_path: Optional[str] = None
    t_min: float = 0.0
    t_max: float = 15.0
    steps: int = 151
    z_points: List[complex] = field(default_factory=lambda: list(DEFAULT_Z))
    n: int = 100_000
    seed: int = 0
    out_format: str = "csv"
    out_path: str = "-"
    t_upper: float = 15.0
    scheme: str = "adaptive_simpson"

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError("BAD_COMMAND", f"unknown command {self.command}")
        if self.steps < 1:
            raise UsageError("BAD_STEPS", "--steps must be >= 1")
        if self.command in ("eval", "compare") and max(abs(self.t_min), abs(self.t_max)) > gfun.T_MAX:
            raise UsageError("T_RANGE", f"|t| must be <= {gfun.T_MAX} for the explicit route")
        if self.command in NEEDS_ZEROS and not self.zeros_path:
            raise UsageError("ZEROS_REQUIRED", f"{self.command} needs --zeros or $ZETA_IDD_ZEROS")
        if self.out_format not in ("csv", "json"):
            raise UsageError("BAD_FORMAT", "--format must be csv or json")
        if self.command in JSON_ONLY and self.out_format != "json":
            raise UsageError("FORMAT_UNSUPPORTED", f"{self.command} writes JSON only")
        if self.n < 1:
            raise UsageError("BAD_N", "--n must be positive")

    def tgrid(self):
        if self.steps == 1:
            return np.array([self.t_min])
        return np.linspace(self.t_min, self.t_max, self.steps)


def parse_complex(text: str) -> complex:
    """Accept ``a+bi``, ``a-bi``, ``bi`` or ``a`` (``j`` works too)."""
    s = text.strip().replace("j", "i").replace(" ", "")
    try:
        if s.endswith("i"):
            body = s[:-1]
            # split at the last sign that is not part of an exponent
            for k in range(len(body) - 1, 0, -1):
                if body[k] in "+-" and body[k - 1] not in "eE":
                    re_part, im_part = body[:k], body[k:]
                    break
            else:
                re_part, im_part = "0", body
            if im_part in ("", "+", "-"):
                im_part += "1"
            return complex(float(re_part), float(im_part))
        return complex(float(s), 0.0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from None


def fmt(x) -> str:
    return f"{x:.17g}"


@contextlib.contextmanager
def _open_out(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _write_csv(stream, header, rows):
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(r if isinstance(r, str) else fmt(r) for r in row) + "\n")


def _write_json(stream, obj):
    json.dump(obj, stream, indent=2, sort_keys=True, allow_nan=False)
    stream.write("\n")


def _zeros(cfg):
    return load_zero_file(cfg.zeros_path) if cfg.zeros_path else None


def _max_abs_t(cfg):
    return max(abs(cfg.t_min), abs(cfg.t_max)) if cfg.steps > 1 else abs(cfg.t_min)


# --- suites (shared by the single commands and `report`) -------------------

def compare_suite(zeros, ts):
    table = arith.table_for_t(float(np.max(np.abs(ts))) if len(ts) else 0.0)
    ge = [gfun.g_explicit(t, table).value for t in ts]
    gz = gfun.g_zero_sum_array(ts, zeros)
    bound = tail_bound(zeros).bound
    resid = np.abs(np.array(ge) - gz)
    rows = [(t, a, b, r, bound, "pass" if r <= bound else "fail")
            for t, a, b, r in zip(ts.tolist(), ge, gz.tolist(), resid.tolist())]
    summary = {"max_residual": float(resid.max()) if resid.size else 0.0, "tail_bound": bound,
               "truncation_height": zeros.height, "points": int(len(ts)),
               "passed": bool(np.all(resid <= bound))}
    return rows, summary


def fourier_suite(z_points, t_upper, scheme):
    cfg = analysis.QuadratureConfig(t_upper=t_upper, scheme=scheme)
    table = arith.cached_table(max(DIRICHLET_LIMIT, math.floor(math.exp(t_upper)) + 1))
    return [analysis.fourier_g(z, cfg, table) for z in z_points]


def xi_suite(zeros, points=None):
    """Dirichlet vs Hadamard on a 5 x 4 grid with Re(s) in [1.2, 3], |Im(s)| <= 5."""
    if points is None:
        points = [complex(a, b) for a in np.linspace(1.2, 3.0, 5) for b in (-5.0, -1.5, 1.5, 5.0)]
    table = arith.cached_table(DIRICHLET_LIMIT)
    rows = []
    for s in points:
        d = xi.xi_log_deriv_dirichlet(s, table, max_remainder=None)
        h = xi.xi_log_deriv_hadamard_s(s, zeros)
        rows.append({"s": [s.real, s.imag], "dirichlet": [d.real, d.imag],
                     "hadamard": [h.real, h.imag], "rel_error": abs(d - h) / abs(d)})
    tol = 1e-4 if len(zeros) >= 10_000 else 1e-3
    worst = max(r["rel_error"] for r in rows)
    at_half = xi.xi_log_deriv_hadamard(0j, zeros)
    return {"points": rows, "max_rel_error": worst, "tolerance": tol,
            "value_at_half": abs(at_half), "passed": worst <= tol and abs(at_half) <= 1e-12}


def cf_suite(zeros, ts):
    grid = np.linspace(-8.0, 8.0, 64)
    boch = analysis.bochner_check(grid, analysis.zero_sum_provider(zeros))
    scan_z = analysis.cf_scan(ts, "zero_sum", zeros=zeros)
    table = arith.table_for_t(float(np.max(np.abs(ts))) if len(ts) else 0.0)
    scan_e = analysis.cf_scan(ts, "explicit", table=table)
    out = {"bochner": boch.to_json(), "cf_scan_zero_sum": scan_z.to_json(),
           "cf_scan_explicit": scan_e.to_json(), "truncation_height": zeros.height}
    out["passed"] = boch.passed and scan_z.passed and scan_e.passed
    return out


def levy_suite(zeros, ts):
    measure = levy.build_levy_measure(zeros)
    adm = levy.admissibility(measure)
    gz = gfun.g_zero_sum_array(ts, zeros)
    expo = np.array([levy.characteristic_exponent(measure, t) for t in ts.tolist()])
    consistency = float(np.max(np.abs(expo - gz))) if len(ts) else 0.0
    summary = {"admissibility": adm.to_json(), "symmetric": measure.is_symmetric(),
               "exponent_vs_zero_sum": consistency, "atoms": len(measure),
               "truncation_height": measure.truncation_height}
    summary["passed"] = adm.passed and summary["symmetric"] and consistency <= 1e-12
    return measure, summary


def sampler_suite(zeros, n, seed):
    measure = levy.build_levy_measure(zeros)
    batch = sampler.sample(measure, n, seed)
    rep = sampler.ecf_compare(batch, zeros, np.linspace(-10.0, 10.0, 21))
    zero_frac = float(np.count_nonzero(batch.values == 0.0)) / n
    expected = math.exp(-measure.total_mass)
    return {"n": n, "seed": seed, "ecf": rep.to_json(), "zero_fraction": zero_frac,
            "expected_zero_fraction": expected,
            "passed": rep.passed and abs(zero_frac - expected) <= max(0.002, 4 * math.sqrt(expected * (1 - expected) / n))}


# --- commands ---------------------------------------------------------------

def cmd_eval(cfg, out):
    ts = cfg.tgrid()
    zeros = _zeros(cfg)
    table = arith.table_for_t(_max_abs_t(cfg))
    rows = []
    for t in ts.tolist():
        ge = gfun.g_explicit(t, table).value
        if zeros is not None:
            ev = gfun.g_zero_sum(t, zeros)
            rows.append((t, ge, ev.value, ev.tail_bound))
        else:
            rows.append((t, ge, "", ""))
    if cfg.out_format == "csv":
        _write_csv(out, ("t", "g_explicit", "g_zero_sum", "tail_bound"), rows)
    else:
        _write_json(out, [dict(zip(("t", "g_explicit", "g_zero_sum", "tail_bound"),
                                   [None if v == "" else v for v in r])) for r in rows])
    return True


def cmd_compare(cfg, out):
    rows, summary = compare_suite(_zeros(cfg), cfg.tgrid())
    if cfg.out_format == "csv":
        _write_csv(out, ("t", "g_explicit", "g_zero_sum", "residual", "tail_bound", "status"), rows)
    else:
        _write_json(out, {"summary": summary, "rows": [
            dict(zip(("t", "g_explicit", "g_zero_sum", "residual", "tail_bound", "status"), r)) for r in rows]})
    return summary["passed"]


def cmd_verify_fourier(cfg, out):
    results = fourier_suite(cfg.z_points, cfg.t_upper, cfg.scheme)
    if cfg.out_format == "csv":
        _write_csv(out, ("z_re", "z_im", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_error",
                         "truncation_estimate", "quad_error", "status"),
                   [(r.z.real, r.z.imag, r.lhs.real, r.lhs.imag, r.rhs.real, r.rhs.imag, r.abs_error,
                     r.truncation_estimate, r.quad_error, "pass" if r.passed else "fail") for r in results])
    else:
        _write_json(out, [r.to_json() for r in results])
    return all(r.passed for r in results)


def cmd_check_cf(cfg, out):
    res = cf_suite(_zeros(cfg), cfg.tgrid())
    res["disclaimer"] = DISCLAIMER
    _write_json(out, res)
    return res["passed"]


def cmd_levy(cfg, out):
    measure, summary = levy_suite(_zeros(cfg), cfg.tgrid())
    if cfg.out_format == "csv":
        _write_csv(out, ("location", "mass"), measure.atoms)
    else:
        _write_json(out, {"measure": measure.to_json(), "report": summary})
    return summary["passed"]


def cmd_sample(cfg, out):
    zeros = _zeros(cfg)
    batch = sampler.sample(levy.build_levy_measure(zeros), cfg.n, cfg.seed)
    if cfg.out_format == "csv":
        sampler.write_csv(batch, out)
    else:
        _write_json(out, {"seed": batch.seed, "n": batch.n, "measure_height": batch.measure_height,
                          "values": batch.values.tolist()})
    return True


def cmd_report(cfg, out):
    zeros = _zeros(cfg)
    ts = cfg.tgrid()
    _, compare = compare_suite(zeros, ts)
    fourier = fourier_suite(cfg.z_points, cfg.t_upper, cfg.scheme)
    _, levy_summary = levy_suite(zeros, ts)
    summary = {
        "zeros": {"source": zeros.source, "count": len(zeros), "height": zeros.height},
        "compare": compare,
        "fourier": {"results": [r.to_json() for r in fourier], "passed": all(r.passed for r in fourier)},
        "xi": xi_suite(zeros),
        "check_cf": cf_suite(zeros, ts),
        "levy": levy_summary,
        "sampler": sampler_suite(zeros, cfg.n, cfg.seed),
        "disclaimer": DISCLAIMER,
    }
    summary["passed"] = all(summary[k]["passed"] for k in ("compare", "fourier", "xi", "check_cf", "levy", "sampler"))
    _write_json(out, summary)
    return summary["passed"]


HANDLERS = {
    "eval": cmd_eval, "compare": cmd_compare, "verify-fourier": cmd_verify_fourier,
    "check-cf": cmd_check_cf, "levy": cmd_levy, "sample": cmd_sample, "report": cmd_report,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError("USAGE", message)


def build_parser():
    p = _Parser(prog="zeta-idd", description="g_zeta(t), its Levy measure and numerical checks")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--zeros", dest="zeros_path", default=None,
                   help="zero-ordinate table (default: $ZETA_IDD_ZEROS)")
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=15.0)
    p.add_argument("--steps", type=int, default=151)
    p.add_argument("--z", dest="z_points", type=parse_complex, action="append",
                   help="point z for verify-fourier, e.g. 0+2i (repeatable)")
    p.add_argument("--t-upper", type=float, default=15.0, help="Fourier integration cutoff")
    p.add_argument("--scheme", choices=[s.value for s in analysis.Scheme], default="adaptive_simpson")
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", dest="out_format", choices=("csv", "json"), default=None)
    p.add_argument("--out", dest="out_path", default="-")
    return p


def config_from_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    fmt_default = "json" if ns.command in JSON_ONLY else "csv"
    cfg = RunConfig(
        command=ns.command,
        zeros_path=ns.zeros_path or default_zero_path(),
        t_min=ns.t_min, t_max=ns.t_max, steps=ns.steps,
        z_points=ns.z_points or list(DEFAULT_Z),
        n=ns.n, seed=ns.seed,
        out_format=ns.out_format or fmt_default,
        out_path=ns.out_path, t_upper=ns.t_upper, scheme=ns.scheme,
    )
    cfg.validate()
    return cfg


def _fail(code, message, status):
    sys.stderr.write(json.dumps({"error": code, "message": message}, sort_keys=True) + "\n")
    return status


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        with _open_out(cfg.out_path) as out:
            ok = HANDLERS[cfg.command](cfg, out)
    except UsageError as exc:
        return _fail(exc.code, str(exc), EXIT_USAGE)
    except (FormatError, ValidationError) as exc:
        return _fail(exc.code, str(exc), EXIT_IO if isinstance(exc, FormatError) else EXIT_USAGE)
    except ZetaIddError as exc:
        return _fail(exc.code, str(exc), EXIT_USAGE)
    except OSError as exc:
        return _fail("IO", str(exc), EXIT_IO)
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
    except UsageError as exc:
        return _fail(exc.code, str(exc), EXIT_USAGE)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
