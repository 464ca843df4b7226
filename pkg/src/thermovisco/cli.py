"""Command-line front end: ``thermovisco (shake|relax|check) [options]``.

Exit codes: 0 success (or every check matched its expectation), 1 a check
failed unexpectedly, 2 usage or configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys

import numpy as np

from . import dynamics, verify
from . import tensor3 as t3
from .errors import InvalidParams, InvalidSymmetry, NonFinite, ThermoviscoError
from .models import ComplexFluidModel, GeneralizedMaxwell3d, ZeroDModel, build_model
from .state import MaterialParams, load_params

log = logging.getLogger("thermovisco")

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

PARAM_FIELDS = [f.name for f in dataclasses.fields(MaterialParams)]


def _fmt(x):
    return format(float(x), ".17g")


def _add_common(p, model_default, t_end=None, dt=None):
    p.add_argument("--model", default=model_default, help="catalog model name")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", help="parameter file with 'name = value' lines")
    p.add_argument("--out", help="output file (default: stdout)")
    if t_end is not None:
        p.add_argument("--t-end", type=float, default=t_end)
        p.add_argument("--dt", type=float, default=dt)
    group = p.add_argument_group("material parameters")
    for name in PARAM_FIELDS:
        group.add_argument("--" + name.replace("_", "-"), dest="param_" + name, type=float)


def build_parser():
    parser = argparse.ArgumentParser(prog="thermovisco", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    shake = sub.add_parser("shake", help="periodic shaking of a complex fluid at a fixed point")
    _add_common(shake, "oldroyd-b", t_end=4.0, dt=1e-3)
    shake.add_argument("--m", default=None,
                       help="'zero', 'seed:<n>' or nine comma-separated entries (default seed:<--seed>)")
    shake.add_argument("--free-energy", choices=("none", "zj"), default="none")

    relax = sub.add_parser("relax", help="stress relaxation under held strain")
    _add_common(relax, "maxwell3d-svk", t_end=5.0, dt=1e-3)
    relax.add_argument("--alpha", type=float, default=1.2,
                       help="held dilatation F = alpha I (held strain for 0d models)")

    check = sub.add_parser("check", help="run the randomized check battery of a model")
    _add_common(check, "maxwell3d-svk")
    check.add_argument("--samples", type=int, default=10_000)
    check.add_argument("--free-energy", choices=("none", "zj"), default="none")
    check.add_argument("--expect-fail", action="append", default=[], metavar="CHECK",
                       help="check expected to fail (repeatable)")
    return parser


def _params(args):
    params = load_params(args.config) if args.config else MaterialParams()
    overrides = {n: getattr(args, "param_" + n) for n in PARAM_FIELDS
                 if getattr(args, "param_" + n) is not None}
    return params.with_overrides(**overrides)


def _model(args, params):
    model = build_model(args.model, params)
    if getattr(args, "free_energy", "none") == "zj":
        if not isinstance(model, ComplexFluidModel):
            raise InvalidParams("--free-energy zj applies to complex fluids only")
        model = model.with_free_energy("zj_quadratic")
    return model


def parse_m(text, seed):
    """``zero``, ``seed:<n>`` or nine comma-separated entries (trace projected off)."""
    if text is None:
        return dynamics.random_traceless(seed), f"seed:{seed}"
    text = text.strip()
    if text == "zero":
        return np.zeros((3, 3)), "zero"
    if text.startswith("seed:"):
        try:
            n = int(text[5:])
        except ValueError:
            raise InvalidParams(f"bad seed in --m {text!r}") from None
        return dynamics.random_traceless(n), text
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise InvalidParams(f"--m entries must be numbers, got {text!r}") from None
    if len(vals) != 9:
        raise InvalidParams(f"--m needs 9 entries, got {len(vals)}")
    m = np.array(vals).reshape(3, 3)
    tr = np.trace(m)
    if abs(tr) > 1e-12 * max(1.0, np.linalg.norm(m)):
        log.warning("--m has trace %s; projecting it off", _fmt(tr))
    return t3.dev(m), "explicit"


class _Output:
    """CSV/report destination; when it is stdout, summaries go to stderr."""

    def __init__(self, path):
        self.path = path

    def __enter__(self):
        self.fh = open(self.path, "w", newline="") if self.path else sys.stdout
        self.summary = sys.stdout if self.path else sys.stderr
        return self

    def __exit__(self, *exc):
        if self.path:
            self.fh.close()


def cmd_shake(args):
    params = _params(args)
    model = _model(args, params)
    if not isinstance(model, ComplexFluidModel):
        raise InvalidParams(f"shake needs a complex fluid model, got {args.model!r}")
    m, m_label = parse_m(args.m, args.seed)
    traj = dynamics.shaking_experiment(model, m, omega=params.omega, t_end=args.t_end, dt=args.dt)
    dmin = traj.min_dissipation("augmented")
    tneg = traj.first_negative_t("augmented")
    with _Output(args.out) as out:
        dynamics.write_csv(traj, out.fh)
        tneg_s = "none" if np.isnan(tneg) else _fmt(tneg)
        print(f"min_dissipation={_fmt(dmin)} first_negative_t={tneg_s} m={m_label}", file=out.summary)
    return EXIT_OK


def cmd_relax(args):
    params = _params(args)
    model = build_model(args.model, params)
    if not isinstance(model, (GeneralizedMaxwell3d, ZeroDModel)) or getattr(model, "kind", "") == "kelvin_voigt":
        raise InvalidParams(f"relax needs a Maxwell-family model, got {args.model!r}")
    traj = dynamics.relaxation_experiment(model, args.alpha, t_end=args.t_end, dt=args.dt)
    norms = traj.stress_fro_norm
    with _Output(args.out) as out:
        dynamics.write_csv(traj, out.fh)
        if norms[0] <= 1e-14:
            print("final_over_initial=zero_stress", file=out.summary)
        else:
            print(f"final_over_initial={_fmt(norms[-1] / norms[0])}", file=out.summary)
    return EXIT_OK


def cmd_check(args):
    params = _params(args)
    model = _model(args, params)
    if isinstance(model, ZeroDModel):
        raise InvalidParams("0d models have no check battery")
    if args.samples < 1:
        raise InvalidParams("--samples must be >= 1")
    reports = verify.run_battery(model, args.samples, args.seed)
    names = [r.name for r in reports]
    unknown = sorted(set(args.expect_fail) - set(names))
    if unknown:
        raise InvalidParams(f"--expect-fail names not in this battery: {', '.join(unknown)}; "
                            f"available: {', '.join(names)}")
    ok = True
    lines = []
    for r in reports:
        expected_fail = r.name in args.expect_fail
        matched = r.passed != expected_fail
        ok &= matched
        note = "" if matched else (" unexpected_fail" if not r.passed else " unexpected_pass")
        lines.append(r.to_line() + (" expected=fail" if expected_fail else "") + note)
    with _Output(args.out) as out:
        for line in lines:
            print(line, file=out.fh)
    return EXIT_OK if ok else EXIT_CHECK


COMMANDS = {"shake": cmd_shake, "relax": cmd_relax, "check": cmd_check}


def main(argv=None):
    logging.basicConfig(format="%(levelname)s: %(message)s", level=logging.WARNING)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except NonFinite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ThermoviscoError, InvalidSymmetry, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
