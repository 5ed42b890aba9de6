"""Command-line interface: figure1 | sweep | optimize | verify.

Angle-valued flags are given in units of pi (``--theta-gate 0.5`` means
pi/2) so the special angles are exact.  Options may also come from a plain
``key=value`` config file (``--config``); explicit flags win over config
values, and unknown config keys are rejected.  Exit codes: 0 success,
2 usage error, 3 verification failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import analytic, pathfinder, schemes
from .analytic import TargetGate
from .pathfinder import PathConstraints
from .schemes import RabiError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_IO = 4

SCHEME_CHOICES = ("two-loop", "single-loop", "single-shot")


class UsageError(ValueError):
    pass


def _parse_axis(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"--axis expects three comma-separated components, got {text!r}")
    try:
        axis = np.array([float(p) for p in parts])
    except ValueError as exc:
        raise UsageError(f"--axis components must be numbers: {exc}") from None
    if np.linalg.norm(axis) == 0.0:
        raise UsageError("--axis must be a nonzero vector")
    return axis / np.linalg.norm(axis)


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated list of numbers: {exc}") from None


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"expected a boolean, got {text!r}")


def load_config(path: str) -> dict[str, str]:
    """Parse a key=value config file; '#' starts a comment, blank lines ignored."""
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


# per-command option tables: name -> (converter from string, default or REQUIRED)
_REQUIRED = object()

_OPTIONS = {
    "figure1": {"samples": (int, 101), "out": (str, _REQUIRED)},
    "sweep": {
        "scheme": (str, _REQUIRED),
        "theta_gate": (float, _REQUIRED),
        "axis": (_parse_axis, _REQUIRED),
        "phi_b": (float, 1.0),
        "balanced": (_parse_bool, True),
        "epsilon": (_parse_float_list, _REQUIRED),
        "kappa": (_parse_float_list, [0.0]),
        "out": (str, _REQUIRED),
    },
    "optimize": {
        "theta_gate": (float, _REQUIRED),
        "axis": (_parse_axis, _REQUIRED),
        "phi_b": (float, 1.0),
        "balanced": (_parse_bool, True),
        "orientation_sign": (int, 1),
        "out": (str, None),
    },
    "verify": {"level": (str, "fast"), "seed": (int, None)},
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holopath",
        description="Robust-path analysis of holonomic one-qubit gates under Rabi amplitude errors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("figure1", help="write the f1/f2/f3 scheme-comparison curves as CSV")
    p.add_argument("--samples", type=int, default=None, help="number of rotation-angle samples (>= 2)")
    p.add_argument("--out", default=None, help="output CSV path")

    p = sub.add_parser("sweep", help="exact vs second-order fidelity over an error grid (JSON)")
    p.add_argument("--scheme", choices=SCHEME_CHOICES, default=None)
    p.add_argument("--theta-gate", type=float, default=None, help="rotation angle in units of pi")
    p.add_argument("--axis", type=_parse_axis, default=None, help="rotation axis as x,y,z (normalized)")
    p.add_argument("--phi-b", type=float, default=None, help="two-loop decomposition phase in units of pi")
    p.add_argument("--balanced", action=argparse.BooleanOptionalAction, default=None,
                   help="balanced two-loop solution (cos t1 + cos t2 = 0)")
    p.add_argument("--epsilon", type=_parse_float_list, default=None, help="comma-separated average-error list")
    p.add_argument("--kappa", type=_parse_float_list, default=None,
                   help="comma-separated relative-difference list (two-loop only)")
    p.add_argument("--out", default=None, help="output JSON path")

    p = sub.add_parser("optimize", help="solve the robustness-optimal paths for a target gate (JSON)")
    p.add_argument("--theta-gate", type=float, default=None, help="rotation angle in units of pi")
    p.add_argument("--axis", type=_parse_axis, default=None, help="rotation axis as x,y,z (normalized)")
    p.add_argument("--phi-b", type=float, default=None, help="forced decomposition phase in units of pi")
    p.add_argument("--balanced", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--orientation-sign", type=int, choices=(1, -1), default=None)
    p.add_argument("--out", default=None, help="output JSON path (default: stdout)")

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--level", choices=("fast", "full"), default=None)
    p.add_argument("--seed", type=int, default=None)

    for sp in sub.choices.values():
        sp.add_argument("--config", default=None, help="key=value config file supplying defaults")
    return parser


def _resolve_options(args: argparse.Namespace) -> dict:
    """Merge CLI flags, config-file values and builtin defaults (in that order)."""
    table = _OPTIONS[args.command]
    config = load_config(args.config) if args.config else {}
    unknown = set(config) - set(table)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    resolved = {}
    for name, (convert, default) in table.items():
        cli_value = getattr(args, name, None)
        if cli_value is not None:
            resolved[name] = cli_value
        elif name in config:
            resolved[name] = convert(config[name])
        elif default is _REQUIRED:
            raise UsageError(f"missing required option --{name.replace('_', '-')}")
        else:
            resolved[name] = default
    return resolved


def _json_dump(payload, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def cmd_figure1(opts: dict) -> int:
    samples = opts["samples"]
    if samples < 2:
        raise UsageError("--samples must be >= 2")
    table = analytic.comparison_table(samples)
    with open(opts["out"], "w", encoding="ascii", newline="") as handle:
        handle.write("theta,f1,f2,f3\n")
        for row in table:
            handle.write(",".join(f"{value:.15g}" for value in row) + "\n")
    return EXIT_OK


def _two_loop_params(path: schemes.TwoLoopPath) -> dict:
    dec = schemes.phi_b_of(path)
    return {
        "theta1": path.loop1.theta,
        "psi1": path.loop1.psi,
        "phi1": path.loop1.phi,
        "theta2": path.loop2.theta,
        "psi2": path.loop2.psi,
        "phi2": path.loop2.phi,
        "eta": dec.eta,
        "phi_b": None if dec.degenerate else dec.phi_b,
        "cos_theta_sum": np.cos(path.loop1.theta) + np.cos(path.loop2.theta),
    }


def cmd_sweep(opts: dict) -> int:
    kappas = sorted(opts["kappa"])
    epsilons = sorted(opts["epsilon"])
    scheme = opts["scheme"]
    if scheme != "two-loop" and any(k != 0.0 for k in kappas):
        raise UsageError("nonzero --kappa is only legal for the two-loop scheme")
    target = TargetGate(opts["theta_gate"] * np.pi, opts["axis"])
    if scheme == "two-loop":
        constraints = PathConstraints(force_phi_b=opts["phi_b"] * np.pi, force_balanced=opts["balanced"])
        path = pathfinder.solve_two_loop(target, constraints).path
        params = _two_loop_params(path)
    elif scheme == "single-loop":
        path = pathfinder.solve_single_loop(target)
        params = {"theta": path.theta, "psi": path.psi, "phi": path.phi, "phi_prime": path.phi_prime}
    else:
        path = pathfinder.solve_single_shot(target)
        params = {"alpha": path.alpha, "beta0": path.beta0, "beta1": path.beta1, "gamma": path.gamma}
    records = []
    for eps in epsilons:
        for kappa in kappas:
            error = RabiError(eps, kappa)
            exact, second_order = analytic.fidelity_pair(scheme, path, error)
            records.append(
                {
                    "scheme": scheme,
                    "params": params,
                    "epsilon": eps,
                    "kappa": kappa,
                    "fidelity_exact": exact,
                    "fidelity_analytic2": second_order,
                    "abs_gap": abs(exact - second_order),
                }
            )
    _json_dump(records, opts["out"])
    return EXIT_OK


def cmd_optimize(opts: dict) -> int:
    target = TargetGate(opts["theta_gate"] * np.pi, opts["axis"])
    constraints = PathConstraints(
        force_phi_b=opts["phi_b"] * np.pi,
        force_balanced=opts["balanced"],
        orientation_sign=opts["orientation_sign"],
    )
    solution = pathfinder.solve_two_loop(target, constraints)
    single_loop = pathfinder.solve_single_loop(target)
    single_shot = pathfinder.solve_single_shot(target)
    theta_gate = target.theta_gate
    payload = {
        "target": {"theta_gate": theta_gate, "axis": list(target.axis)},
        "two_loop": {**_two_loop_params(solution.path), "degenerate": solution.degenerate},
        "single_loop": {
            "theta": single_loop.theta,
            "psi": single_loop.psi,
            "phi": single_loop.phi,
            "phi_prime": single_loop.phi_prime,
        },
        "single_shot": {
            "alpha": single_shot.alpha,
            "beta0": single_shot.beta0,
            "beta1": single_shot.beta1,
            "gamma": single_shot.gamma,
        },
        "coefficients": {
            "two_loop": analytic.f1(theta_gate) * np.pi**2 / 3.0,
            "single_loop": analytic.f2(theta_gate) * np.pi**2 / 3.0,
            "single_shot": analytic.f3(theta_gate) * np.pi**2 / 3.0,
        },
    }
    if solution.degenerate:
        payload["note"] = "zero rotation angle: axis is unused and the trivial two-loop path is returned"
    _json_dump(payload, opts["out"])
    return EXIT_OK


def cmd_verify(opts: dict) -> int:
    from . import verify

    seed = opts["seed"] if opts["seed"] is not None else verify.DEFAULT_SEED
    print(f"holopath acceptance suite: level={opts['level']} seed={seed}")
    results = verify.run_suite(level=opts["level"], seed=seed)
    for result in results:
        print(result.line)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_VERIFY if failed else EXIT_OK


_COMMANDS = {
    "figure1": cmd_figure1,
    "sweep": cmd_sweep,
    "optimize": cmd_optimize,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        opts = _resolve_options(args)
        return _COMMANDS[args.command](opts)
    except UsageError as exc:
        print(f"holopath: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"holopath: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"holopath: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
