"""Command-line entry point: ``ebi-forge {build,verify,bounds,export,report}``.

Exit codes: 0 success, 1 bad configuration, 2 fiducial rejected, 3 failed check.
"""

import argparse
import io
import json
import sys
from dataclasses import dataclass

from . import bounds, inequality, report, sic_states
from .errors import ConsistencyError, DimensionError, FiducialError, EBIError
from .instance import build_instance
from .wh_algebra import TAU_MAT

EXIT_OK, EXIT_CONFIG, EXIT_FIDUCIAL, EXIT_CHECK = 0, 1, 2, 3


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    d: int | None
    fiducial: str | None
    theta: float | None
    fiducial_file: str | None
    input: str | None
    out: str | None
    format: str
    checks: tuple
    parallel: bool
    tolerance: float

    @classmethod
    def from_args(cls, ns):
        checks = tuple(c.strip() for c in ns.checks.split(",") if c.strip()) if ns.checks else report.ALL_CHECKS
        unknown = set(checks) - set(report.ALL_CHECKS)
        if unknown:
            raise ConfigError(f"unknown checks: {', '.join(sorted(unknown))}")
        cfg = cls(
            ns.command, ns.dim, ns.fiducial, ns.theta, ns.fiducial_file, getattr(ns, "input", None),
            ns.out, ns.format, checks, ns.parallel, ns.tolerance,
        )
        cfg.validate()
        return cfg

    def validate(self):
        if self.fiducial_file and self.fiducial not in (None, "file"):
            raise ConfigError("--fiducial-file cannot be combined with a named fiducial")
        if self.fiducial == "file" and not self.fiducial_file:
            raise ConfigError("--fiducial file requires --fiducial-file")
        if self.theta is not None:
            if self.fiducial not in (None, "theta"):
                raise ConfigError("--theta only applies to the theta fiducial")
            if self.d not in (None, 3):
                raise ConfigError("--theta is only valid with d=3")
        if self.fiducial == "theta" and self.theta is None:
            raise ConfigError("--fiducial theta requires --theta")
        if self.d is None and not self.input and not self.fiducial_file:
            self.d = 3 if self.fiducial in ("hesse", "theta") or self.theta is not None else (
                2 if self.fiducial == "d2-default" else None)
            if self.d is None:
                raise ConfigError("--dim is required")
        if self.tolerance <= 0:
            raise ConfigError("--tolerance must be positive")


def _fiducial_record(fid, theta):
    rec = sic_states.fiducial_to_dict(fid)
    rec["source"] = fid.source
    if theta is not None:
        rec["theta"] = theta
    return rec


def _fiducial_from_record(rec):
    src = rec.get("source", "file")
    if src == "builtin-d2":
        return sic_states.builtin_fiducial(2, "d2-default"), None
    if src == "hesse":
        return sic_states.builtin_fiducial(3, "hesse"), None
    if src.startswith("theta"):
        return sic_states.builtin_fiducial(3, "theta", rec["theta"]), rec["theta"]
    return sic_states.fiducial_from_dict(rec), None


def _instance(cfg, loaded=None):
    if loaded is not None and "fiducial" in loaded:
        fid, theta = _fiducial_from_record(loaded["fiducial"])
        return build_instance(fid.d, fiducial=fid, parallel=cfg.parallel), theta
    if cfg.fiducial_file:
        fid = sic_states.load_fiducial(cfg.fiducial_file)
        if cfg.d is not None and fid.d != cfg.d:
            raise ConfigError(f"fiducial file has d={fid.d}, --dim is {cfg.d}")
        return build_instance(fid.d, fiducial=fid, parallel=cfg.parallel), None
    d = cfg.d if cfg.d is not None else loaded["d"]
    selector = cfg.fiducial or ("theta" if cfg.theta is not None else "default")
    return build_instance(d, selector, cfg.theta, parallel=cfg.parallel), cfg.theta


def _num(v):
    return str(int(round(v))) if abs(v - round(v)) < 1e-9 else f"{v:.4f}"


def summary_line(inst):
    return f"d={inst.d} L={_num(inst.L)} Q={_num(inst.qtilde)} visibility={inst.visibility:.4f}"


def _write(cfg, text):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run_build(cfg):
    inst, theta = _instance(cfg)
    cert = bounds.sos_certificate(inst.tensor, inst.realization, tau_mat=cfg.tolerance)
    if cfg.out:
        inequality.save_tensor(inst.tensor, cfg.out, extra={"fiducial": _fiducial_record(inst.fiducial, theta)})
    print(summary_line(inst))
    if not inst.exact_L:
        print("note: L is a heuristic lower bound (exact enumeration infeasible)")
    if not cert.passed:
        print(f"certificate failed: {', '.join(cert.failures())}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def run_verify(cfg):
    loaded = tensor = None
    if cfg.input:
        tensor, loaded = inequality.load_tensor(cfg.input)
    inst, _ = _instance(cfg, loaded)
    if tensor is not None and tensor.d != inst.d:
        raise ConfigError("tensor and fiducial dimensions differ")
    results, cert = report.run_checks(inst, tensor, cfg.checks, tau_mat=cfg.tolerance)
    failed = [name for name, (ok, _) in results.items() if not ok]
    payload = {
        "d": inst.d,
        "pass": not failed,
        "checks": {name: {"pass": ok, **{k: float(f"{v:.3g}") for k, v in det.items()}}
                   for name, (ok, det) in results.items()},
        "tolerances": {"tau_mat": cfg.tolerance, "tau_psd": bounds.TAU_PSD, "tau_sic": sic_states.TAU_SIC},
    }
    if cert is not None:
        payload["certificate"] = cert.to_dict()
    for name, (ok, det) in results.items():
        det_s = ", ".join(f"{k}={v:.3e}" for k, v in det.items())
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: {det_s}")
    if cfg.format == "json" or cfg.out:
        text = json.dumps(payload, indent=2) + "\n"
        if cfg.out:
            with open(cfg.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    if failed:
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def run_bounds(cfg):
    inst, _ = _instance(cfg)
    data = {
        "d": inst.d,
        "L": inst.L,
        "exactL": inst.exact_L,
        "Q": inst.qtilde,
        "visibility": inst.visibility,
        "strategy": {"alice": list(inst.strategy.alice), "bob": list(inst.strategy.bob)},
    }
    if cfg.format == "json":
        _write(cfg, json.dumps(data, indent=2) + "\n")
    else:
        _write(cfg, summary_line(inst) + f"\nstrategy alice={inst.strategy.alice} bob={inst.strategy.bob}\n")
    return EXIT_OK


def _g_csv(inst):
    buf = io.StringIO()
    inequality.write_g_csv(inst.gtensor, buf)
    return buf.getvalue()


def run_export(cfg):
    inst, theta = _instance(cfg)
    if cfg.format == "csv":
        _write(cfg, _g_csv(inst))
    else:
        data = inequality.tensor_to_dict(inst.tensor)
        data["fiducial"] = _fiducial_record(inst.fiducial, theta)
        _write(cfg, json.dumps(data, indent=1) + "\n")
    return EXIT_OK


def run_report(cfg):
    inst, _ = _instance(cfg)
    if cfg.format == "csv":
        _write(cfg, _g_csv(inst))
    else:
        _write(cfg, report.text_report(inst))
    return EXIT_OK


COMMANDS = {"build": run_build, "verify": run_verify, "bounds": run_bounds, "export": run_export, "report": run_report}


def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, help="prime local dimension d")
    common.add_argument("--fiducial", choices=["hesse", "d2-default", "theta", "file"])
    common.add_argument("--theta", type=float, help="qutrit fiducial family parameter in [0, 1/2]")
    common.add_argument("--fiducial-file", help="JSON fiducial {d, amplitudes: [[re, im], ...]}")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--checks", help="comma list of checks: " + ",".join(report.ALL_CHECKS))
    common.add_argument("--parallel", action="store_true", help="parallel local-bound enumeration")
    common.add_argument("--tolerance", type=float, default=TAU_MAT, help="matrix identity tolerance")
    parser = argparse.ArgumentParser(prog="ebi-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "verify":
            sp.add_argument("--in", dest="input", help="tensor JSON written by build/export")
    return parser


def main(argv=None):
    parser = make_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except (ConfigError, DimensionError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FiducialError as exc:
        print(f"fiducial rejected: {exc}", file=sys.stderr)
        return EXIT_FIDUCIAL
    except (ConsistencyError, EBIError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
