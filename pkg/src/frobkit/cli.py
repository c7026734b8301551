"""Command-line front end: ring/factorization file loading, subcommand
dispatch, canonical JSON reports (CSV and text are projections of it).

Exit codes: 0 success, 1 computation failure (search failure, unstable
truncation, failed verification), 2 input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import ParseError
from .extcheck import (UNSTABLE, MatrixFactorization, annihilator_exponent,
                       theorem_main_witness)
from .frobenius import (RingPresentation, SearchFailureError,
                        UnsupportedRingError, bracket_power, hk_estimate,
                        hk_function, multiplicity, quotient_colength)
from .fsignature import (AdeSpec, ade_expected, check_lower_inequality,
                         check_upper_bound, fsignature_estimate)
from .groebner import INFINITE
from .veronese import (VeroneseSpec, bounds_check, decomposition_matrix,
                       group_order_check, power_limit)

_INPUT_ERRORS = (OSError, json.JSONDecodeError, ParseError, ValueError, KeyError)


@dataclass
class RunConfig:
    subcommand: str
    ring: str | None = None
    ideal: tuple[str, ...] = ()
    e_max: int = 2
    fmt: str = "json"
    seed: int = 0
    t_max: int = 12
    trials: int = 64
    p: int | None = None
    n: int | None = None
    s_max: int = 6
    mf_m: str | None = None
    mf_n: str | None = None
    h: int | None = None

    def to_dict(self) -> dict:
        out = {"subcommand": self.subcommand, "format": self.fmt,
               "seed": self.seed}
        if self.subcommand in ("hk", "fsig", "ade-verify"):
            out.update(ring=self.ring, emax=self.e_max)
        if self.subcommand == "hk":
            out["ideal"] = list(self.ideal)
        if self.subcommand in ("fsig", "ade-verify"):
            out["trials"] = self.trials
        if self.subcommand == "veronese":
            out.update(p=self.p, n=self.n, smax=self.s_max)
        if self.subcommand == "ext":
            out.update(ring=self.ring, mf_m=self.mf_m, mf_n=self.mf_n,
                       tmax=self.t_max, h=self.h)
        return out


def _frac(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _length(x):
    return "INFINITE" if x is INFINITE else x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobkit",
        description="Hilbert-Kunz, F-signature, Veronese and Ext reports")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument("--format", choices=("json", "csv", "text"),
                       default="json")
        p.add_argument("--seed", type=int, default=0)

    hk = sub.add_parser("hk", help="Hilbert-Kunz samples and secant estimate")
    hk.add_argument("--ring", required=True)
    hk.add_argument("--ideal", required=True,
                    help="comma-separated polynomial strings")
    hk.add_argument("--emax", type=int, default=2)
    common(hk)

    fsig = sub.add_parser("fsig", help="F-signature sample trail")
    fsig.add_argument("--ring", required=True)
    fsig.add_argument("--emax", type=int, default=2)
    fsig.add_argument("--trials", type=int, default=64)
    common(fsig)

    ver = sub.add_parser("veronese", help="decomposition matrix and limits")
    ver.add_argument("--p", type=int, required=True)
    ver.add_argument("--n", type=int, required=True)
    ver.add_argument("--smax", type=int, default=6)
    common(ver)

    ade = sub.add_parser("ade-verify", help="double-point table verification")
    ade.add_argument("--ring", required=True)
    ade.add_argument("--emax", type=int, default=2)
    ade.add_argument("--trials", type=int, default=64)
    common(ade)

    ext = sub.add_parser("ext", help="first-Ext length and annihilator")
    ext.add_argument("--ring", required=True)
    ext.add_argument("--mf-m", required=True, dest="mf_m")
    ext.add_argument("--mf-n", required=True, dest="mf_n")
    ext.add_argument("--tmax", type=int, default=12)
    ext.add_argument("--h", type=int, default=None)
    common(ext)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(subcommand=args.subcommand, fmt=args.format,
                    seed=args.seed)
    for name in ("ring", "emax", "trials", "p", "n", "smax", "mf_m", "mf_n",
                 "tmax", "h"):
        if hasattr(args, name):
            value = getattr(args, name)
            attr = {"emax": "e_max", "smax": "s_max", "tmax": "t_max"}.get(
                name, name)
            setattr(cfg, attr, value)
    if hasattr(args, "ideal"):
        cfg.ideal = tuple(s.strip() for s in args.ideal.split(",") if s.strip())
    return cfg


# -- subcommand reports -------------------------------------------------------

def _run_hk(cfg: RunConfig) -> tuple[int, dict]:
    presentation = RingPresentation.from_file(cfg.ring)
    ideal = presentation.ideal(*cfg.ideal)
    samples = hk_function(presentation, ideal, cfg.e_max)
    report = {"config": cfg.to_dict(), "ring": presentation.to_dict(),
              "ideal": list(cfg.ideal),
              "samples": [{"q": s.q, "length": s.length} for s in samples]}
    if len(samples) >= 2:
        est = hk_estimate(samples, presentation.dimension)
        report.update(ehk=_frac(est.hk_multiplicity),
                      beta=_frac(est.lower_coefficient),
                      residual=_frac(est.residual))
    else:
        report.update(ehk=None, beta=None, residual=None)
    return 0, report


def _fsig_body(presentation: RingPresentation, cfg: RunConfig) -> dict:
    estimate = fsignature_estimate(presentation, cfg.e_max,
                                   trials=cfg.trials, seed=cfg.seed)
    spec = AdeSpec.from_ring(presentation)
    expected = ade_expected(spec) if spec is not None else None
    return {"ring": presentation.to_dict(),
            "J": [str(g) for g in estimate.reduction.generators],
            "delta": str(estimate.socle_rep),
            "samples": [{"q": s.q, "lenJ": s.param_colength,
                         "lenJD": s.extended_colength, "a1q": s.free_rank,
                         "s_q": _frac(s.ratio)} for s in estimate.samples],
            "s": _frac(estimate.signature),
            "expected": _frac(expected) if expected is not None else None}


def _run_fsig(cfg: RunConfig) -> tuple[int, dict]:
    presentation = RingPresentation.from_file(cfg.ring)
    report = _fsig_body(presentation, cfg)
    report["config"] = cfg.to_dict()
    return 0, report


def _run_veronese(cfg: RunConfig) -> tuple[int, dict]:
    spec = VeroneseSpec(n=cfg.n, p=cfg.p)
    matrix = decomposition_matrix(spec)
    bounds = bounds_check(matrix)
    limits = power_limit(matrix, cfg.s_max)
    order = group_order_check(spec, limits[-1])
    report = {"config": cfg.to_dict(), "p": cfg.p, "n": cfg.n,
              "matrix": [list(row) for row in matrix.rows],
              "bounds": {"passed": bounds.passed, "floor": bounds.floor,
                         "remainder": bounds.remainder,
                         "violations": list(bounds.violations)},
              "limits": [_frac(v) for v in limits],
              "group_order": {"expected": order.expected_order,
                              "computed": _frac(order.computed),
                              "passed": order.passed}}
    code = 0 if bounds.passed and order.passed else 1
    return code, report


def _run_ade_verify(cfg: RunConfig) -> tuple[int, dict]:
    presentation = RingPresentation.from_file(cfg.ring)
    spec = AdeSpec.from_ring(presentation)
    if spec is None:
        raise ValueError("ring is not a recognized double-point form")
    expected = ade_expected(spec)
    body = _fsig_body(presentation, cfg)
    e = multiplicity(presentation).e
    structure = []
    exact = True
    for sample in body["samples"]:
        want = e * sample["q"] ** presentation.dimension
        good = sample["lenJ"] == want
        exact = exact and good
        structure.append({"q": sample["q"], "lenJ": sample["lenJ"],
                          "expected": want, "exact": good})
    s_last = Fraction(body["s"])
    lower = check_lower_inequality(e, s_last, 2 - s_last)
    top = body["samples"][-1]
    upper = check_upper_bound(
        s_last, Fraction(top["lenJ"], top["q"] ** presentation.dimension),
        Fraction(top["lenJD"], top["q"] ** presentation.dimension), 1)
    within = abs(s_last - expected) <= Fraction(1, 20)
    report = dict(body)
    report.update(config=cfg.to_dict(), family=spec.label,
                  expected=_frac(expected),
                  structure=structure,
                  lower_inequality={"slack": _frac(lower.slack),
                                    "holds": lower.holds},
                  upper_bound={"slack": _frac(upper.slack),
                               "holds": upper.holds,
                               "equality": upper.equality},
                  within_tolerance=within,
                  passed=exact and lower.holds and upper.holds and within)
    return 0 if report["passed"] else 1, report


def _run_ext(cfg: RunConfig) -> tuple[int, dict]:
    presentation = RingPresentation.from_file(cfg.ring)
    ring = presentation.ambient
    mf_m = MatrixFactorization.from_file(cfg.mf_m, ring)
    mf_n = MatrixFactorization.from_file(cfg.mf_n, ring)
    if presentation.relation is not None and presentation.relation != mf_m.f:
        raise ValueError("ring relation differs from the factorization's")
    report_data = annihilator_exponent(mf_m, mf_n, cfg.t_max)
    witness = None
    if cfg.h is not None:
        w = theorem_main_witness(mf_m, mf_n, cfg.h, cfg.t_max)
        witness = {"h": w.bound, "passed": w.passed}
    stable = report_data.stable
    report = {"config": cfg.to_dict(), "f": str(mf_m.f),
              "length": report_data.length if stable else "UNSTABLE",
              "annihilator_exponent":
                  report_data.annihilator_exponent if stable else "UNSTABLE",
              "truncation_degree": report_data.truncation_degree_used,
              "stable": stable,
              "witness": witness}
    code = 0 if stable and (witness is None or witness["passed"]) else 1
    return code, report


_RUNNERS = {"hk": _run_hk, "fsig": _run_fsig, "veronese": _run_veronese,
            "ade-verify": _run_ade_verify, "ext": _run_ext}


def run(cfg: RunConfig) -> tuple[int, dict | None]:
    """Execute one subcommand; returns (exit code, report dict)."""
    try:
        return _RUNNERS[cfg.subcommand](cfg)
    except (SearchFailureError, UnsupportedRingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, None
    except _INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2, None


# -- emission -----------------------------------------------------------------

def _emit_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _emit_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    if "samples" in report:
        keys = sorted(report["samples"][0]) if report["samples"] else []
        writer.writerow(keys)
        for row in report["samples"]:
            writer.writerow([row[k] for k in keys])
    elif "matrix" in report:
        for row in report["matrix"]:
            writer.writerow(row)
        writer.writerow(["limit:" + v for v in report["limits"]])
    else:
        keys = [k for k in sorted(report) if k != "config"]
        writer.writerow(keys)
        writer.writerow([report[k] for k in keys])
    return buf.getvalue()


def _emit_text(report: dict) -> str:
    lines = []

    def walk(prefix: str, value):
        if isinstance(value, dict):
            for k in sorted(value):
                walk(f"{prefix}.{k}" if prefix else k, value[k])
        elif isinstance(value, list):
            for i, v in enumerate(value):
                walk(f"{prefix}[{i}]", v)
        else:
            lines.append(f"{prefix} = {value}")

    walk("", {k: v for k, v in report.items() if k != "config"})
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    code, report = run(cfg)
    if report is not None:
        emit = {"json": _emit_json, "csv": _emit_csv, "text": _emit_text}
        sys.stdout.write(emit[cfg.fmt](report))
    return code


if __name__ == "__main__":
    sys.exit(main())
