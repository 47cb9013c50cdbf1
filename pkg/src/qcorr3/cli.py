"""Command-line entry point: ``qcorr3 {case1,case2,case3,discord,pt,verify}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import experiments as ex
from .discord import DiscordConsistencyError
from .qstate import CorruptedStateError, DensityParseError, InvalidStateError

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_IO = 3


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats, got {text!r}") from exc


# dest -> (type, built-in default); built-ins only apply when neither a flag
# nor the config file sets a value
_COMMON = {
    "state": (str, "ghz"),
    "alpha_sq": (float, None),
    "r": (float, 1.0),
    "delta": (float, 0.0),
    "epsilon": (float, 0.0),
    "lambda_ratios": (_float_list, None),
    "t_max": (float, ex.DEFAULT_T_MAX),
    "steps": (int, ex.DEFAULT_STEPS),
    "out": (str, None),
    "seed": (int, 0),
    "jobs": (int, 1),
    "grid_points": (int, 101),
}


def read_config(path: str) -> dict[str, str]:
    """Plain ``key = value`` lines; ``#`` starts a comment, dashes and underscores are interchangeable."""
    values = {}
    text = Path(path).read_text()
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ex.ConfigError(f"{path}:{lineno}: expected key=value, got {body!r}")
        key, value = (s.strip() for s in body.split("=", 1))
        values[key.replace("-", "_").lstrip("_")] = value
    return values


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file; command-line flags take precedence")
    p.add_argument("--state", choices=("ghz", "w"), default=None)
    p.add_argument("--alpha-sq", type=float, default=None, help="squared amplitude of the first ket")
    p.add_argument("--r", type=float, default=None, help="purity parameter in [0, 1]")
    p.add_argument("--delta", type=float, default=None, help="phase of the second ket (radians)")
    p.add_argument("--epsilon", type=float, default=None, help="phase of the third W ket (radians)")
    p.add_argument("--lambda-ratios", type=_float_list, default=None, help="comma-separated lambda/gamma0")
    p.add_argument("--t-max", type=float, default=None, help="largest gamma0*t")
    p.add_argument("--steps", type=int, default=None, help="number of time points")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None, help="worker processes for sweeps")
    p.add_argument("--grid-points", type=int, default=None, help="size of the alpha^2 or r grid")


def _resolve(args: argparse.Namespace) -> argparse.Namespace:
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    unknown = set(cfg) - set(_COMMON)
    if unknown:
        raise ex.ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for dest, (conv, default) in _COMMON.items():
        if getattr(args, dest, None) is not None:
            continue
        if dest in cfg:
            try:
                value = conv(cfg[dest])
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise ex.ConfigError(f"bad value for {dest!r} in config: {cfg[dest]!r}") from exc
        else:
            value = default
        setattr(args, dest, value)
    return args


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcorr3",
        description="Geometric discord and total quantum correlation of three qubits "
        "under independent Lorentzian amplitude-damping reservoirs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("case1", "D1, D2, D3, Q vs gamma0*t for several lambda/gamma0"),
        ("case2", "Q vs gamma0*t over a grid of alpha^2"),
        ("case3", "Q vs gamma0*t over a grid of purities r"),
    ):
        _add_common(sub.add_parser(name, help=help_text))

    p = sub.add_parser("pt", help="closed-form P_t curve")
    _add_common(p)

    p = sub.add_parser("discord", help="GQD and TQC of a state file")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("verify", help="run all oracle suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kraus-samples", type=int, default=ex.VerifyCounts.kraus)
    p.add_argument("--bf-samples", type=int, default=ex.VerifyCounts.brute_force)
    p.add_argument("--tqc-samples", type=int, default=ex.VerifyCounts.tqc_oracle)
    p.add_argument("--roundtrip-samples", type=int, default=ex.VerifyCounts.round_trip)
    p.add_argument("--classicality-samples", type=int, default=ex.VerifyCounts.classicality)
    p.add_argument("--out", default=None)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {out}: {exc.strerror or exc}") from exc


def _sweep_config(args: argparse.Namespace, case: int) -> ex.SweepConfig:
    overrides = dict(
        state_family=args.state,
        t_max=args.t_max,
        n_t=args.steps,
        alpha_sq=args.alpha_sq,
        r=args.r,
        delta=args.delta,
        epsilon=args.epsilon,
        out=args.out,
        seed=args.seed,
        jobs=args.jobs,
    )
    if args.lambda_ratios is not None:
        overrides["lambda_ratios"] = args.lambda_ratios
    if args.grid_points < 2:
        raise ex.ConfigError("grid-points must be >= 2")
    if case == 2:
        overrides["alpha_sq_grid"] = ex.unit_grid(args.grid_points)
    elif case == 3:
        overrides["r_grid"] = ex.unit_grid(args.grid_points)
    return ex.case_config(case, **overrides)


def _discord_csv(result: dict) -> str:
    lines = ["quantity,value"]
    for key in ("d1", "d2", "d3", "q"):
        lines.append(f"{key},{result[key]:.17g}")
    for i, axis in enumerate(result["axes"], start=1):
        lines.append(f"axis{i}," + " ".join(f"{x:.17g}" for x in axis))
    for pair, value in result["pairwise"].items():
        lines.append(f"gqd_pair_{pair},{value:.17g}")
    lines.append("order," + " ".join(str(q) for q in result["order"]))
    lines.append("gaps," + " ".join(f"{g:.17g}" for g in result["gaps"]))
    lines.append("degenerate," + " ".join(str(int(d)) for d in result["degenerate"]))
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("case1", "case2", "case3", "pt"):
            args = _resolve(args)
        if args.command == "case1":
            _emit(ex.run_case1(_sweep_config(args, 1)).to_csv(), args.out)
        elif args.command == "case2":
            _emit(ex.run_case2(_sweep_config(args, 2)).to_csv(), args.out)
        elif args.command == "case3":
            _emit(ex.run_case3(_sweep_config(args, 3)).to_csv(), args.out)
        elif args.command == "pt":
            ratios = args.lambda_ratios or ex.CASE1_RATIOS
            cfg = ex.SweepConfig(lambda_ratios=ratios, t_max=args.t_max, n_t=args.steps)
            _emit(ex.run_pt(cfg.lambda_ratios, cfg.t_max, cfg.n_t).to_csv(), args.out)
        elif args.command == "discord":
            result = ex.run_discord_file(args.file)
            text = json.dumps(result, indent=2) + "\n" if args.format == "json" else _discord_csv(result)
            sys.stdout.write(text)
        elif args.command == "verify":
            counts = ex.VerifyCounts(
                kraus=args.kraus_samples,
                brute_force=args.bf_samples,
                tqc_oracle=args.tqc_samples,
                round_trip=args.roundtrip_samples,
                classicality=args.classicality_samples,
            )
            report = ex.run_verify(seed=args.seed, counts=counts)
            _emit(ex.report_json(report), args.out)
            return EXIT_OK if report["passed"] else EXIT_VERIFY_FAILED
    except (ex.ConfigError, DensityParseError, InvalidStateError, CorruptedStateError,
            DiscordConsistencyError, ValueError) as exc:
        print(f"qcorr3: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"qcorr3: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
