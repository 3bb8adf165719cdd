"""Command line entry point: ``parrondo <command> [options]``.

Settings come from built-in defaults, then an optional JSON ``--config``
file, then explicit flags, each overriding the previous.  Exit codes: 0 on
success, 2 for bad arguments, 3 when an output cannot be written.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import analysis, engine, mixing, model, refute
from .svg import line_chart

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 2, 3

DEFAULTS = {
    "epsilon": 0.005,
    "m": 3,
    "gamma": 0.5,
    "trials": 10000,
    "games": 200,
    "seed": 0,
    "out": None,
    "svg": False,
    "jobs": 1,
    "scheme": None,
    "variant": "capital",
    "p1": None,
    "p2": None,
    "p3": None,
    "samples": 101,
    "kappa": [-0.05, 0.0, 0.05, 0.1],
}


class UsageError(Exception):
    pass


def fmt(x) -> str:
    return f"{float(x):.12g}"


def stats_csv(stats: engine.EnsembleStats) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "mean_capital", "stderr"])
    for t in range(stats.t_max + 1):
        w.writerow([t, fmt(stats.mean[t]), fmt(stats.stderr[t])])
    return buf.getvalue()


def boundary_csv(m: int, samples: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p3", "p2"])
    for p3, p2 in analysis.boundary_curve(m, samples):
        w.writerow([fmt(p3), fmt(p2)])
    return buf.getvalue()


def _write(path: Path, text: str) -> Path:
    with open(path, "w", newline="") as fh:
        fh.write(text)
    return path


def _write_series(out_dir: Path, named: Dict[str, engine.EnsembleStats], svg_name: Optional[str],
                  title: str = "capital") -> List[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = [_write(out_dir / f"{name}.csv", stats_csv(st)) for name, st in named.items()]
    if svg_name:
        chart = line_chart({k: (st.steps, st.mean) for k, st in named.items()}, ylabel=title)
        written.append(_write(out_dir / svg_name, chart))
    return written


def _bias(cfg) -> model.BiasParams:
    return model.BiasParams(cfg["epsilon"], cfg["m"])


def _games(cfg):
    """Game A, game B and the compound game selected by the config."""
    bias = _bias(cfg)
    if cfg["variant"] == "history":
        if cfg["scheme"] is not None:
            raise UsageError("--scheme applies to the capital variant only")
        a, b = model.build_history_games(bias)
        a = model.GameA(cfg["p1"]) if cfg["p1"] is not None else a
        return a, b, model.CompoundGame(cfg["gamma"], a, b)
    if cfg["scheme"] is not None:
        a, b, _ = model.build_scheme(cfg["scheme"], bias, cfg["gamma"])
    else:
        a, b = model.build_parrondo_games(bias)
    if cfg["p1"] is not None:
        a = model.GameA(cfg["p1"])
    if cfg["p2"] is not None or cfg["p3"] is not None:
        b = model.CapitalGameB(cfg["p2"] if cfg["p2"] is not None else b.p2,
                               cfg["p3"] if cfg["p3"] is not None else b.p3, cfg["m"])
    return a, b, model.CompoundGame(cfg["gamma"], a, b)


def cmd_simulate(cfg, stdout) -> int:
    a, b, c = _games(cfg)
    named = {}
    for name, game in (("game_a", a), ("game_b", b), ("compound", c)):
        named[name] = engine.run_ensemble(game, cfg["games"], cfg["trials"], cfg["seed"],
                                          n_jobs=cfg["jobs"])
    _write_series(Path(cfg["out"] or "."), named, "simulate.svg" if cfg["svg"] else None)
    print(f"trials={cfg['trials']} games={cfg['games']} seed={cfg['seed']} "
          f"m={cfg['m']} epsilon={cfg['epsilon']} gamma={cfg['gamma']}", file=stdout)
    for (name, st), game in zip(named.items(), (a, b, c)):
        drift = analysis.exact_drift(game)
        expected = analysis.expected_capital(game, cfg["games"])[-1]
        print(f"{name:9s} exact_drift={fmt(drift)} stationary_final={fmt(drift * cfg['games'])} "
              f"expected_final={fmt(expected)} mean_final={fmt(st.final_mean)} "
              f"stderr={fmt(st.final_stderr)}", file=stdout)
    return EXIT_OK


def cmd_boundary(cfg, stdout) -> int:
    text = boundary_csv(cfg["m"], cfg["samples"])
    out = cfg["out"]
    if out in (None, "-"):
        stdout.write(text)
    else:
        _write(Path(out), text)
        if cfg["svg"]:
            rows = analysis.boundary_curve(cfg["m"], cfg["samples"])
            _write(Path(out).with_suffix(".svg"),
                   line_chart({f"M={cfg['m']}": (rows[:, 0], rows[:, 1])}, "p3", "p2"))
    return EXIT_OK


def cmd_classify(cfg, stdout) -> int:
    m = cfg["m"] if cfg.get("m_pos") is None else cfg["m_pos"]
    point = analysis.ProbabilityPoint(cfg["p2_pos"], cfg["p3_pos"])
    region = analysis.classify_point(point, m)
    ratio = analysis.fairness_ratio(point, m)
    try:
        drift = fmt(analysis.exact_drift(model.CapitalGameB(point.p2, point.p3, m)))
    except analysis.DegenerateChainError:
        drift = "undefined"
    print(f"point=({fmt(point.p2)}, {fmt(point.p3)}) m={m}", file=stdout)
    print(f"region={region.value}", file=stdout)
    print(f"fairness_ratio={fmt(ratio)}", file=stdout)
    print(f"exact_drift={drift}", file=stdout)
    return EXIT_OK


def schemes_table(bias: model.BiasParams, gamma: float) -> str:
    lines = [f"{'Scheme':<7}{'Description':<20}{'Paradox':<12}"
             f"{'drift A':>14}{'drift B':>14}{'drift compound':>16}"]
    for i, sc in analysis.classify_all_schemes(bias, gamma).items():
        lines.append(f"{'#' + str(i):<7}{sc.description:<20}{sc.paradox.value:<12}"
                     f"{sc.drift_a:>14.6f}{sc.drift_b:>14.6f}{sc.drift_compound:>16.6f}")
    return "\n".join(lines) + "\n"


def cmd_schemes(cfg, stdout) -> int:
    stdout.write(schemes_table(_bias(cfg), cfg["gamma"]))
    return EXIT_OK


def cmd_mix(cfg, stdout) -> int:
    if cfg["variant"] != "capital":
        raise UsageError("mix applies to the capital variant only")
    a, b, _ = _games(cfg)
    m = cfg["m"]
    named = {}
    print(f"{'kappa':>8} {'pc1':>10} {'pc2':>10} {'region':>9} {'exact_drift':>13} "
          f"{'signed_dist':>12} {'mean_final':>11}", file=stdout)
    for k in cfg["kappa"]:
        mid = mixing.path_midpoint(mixing.MixPath.between(a, b, k))
        game = mixing.compound_from_point(mid, m)
        st = engine.run_ensemble(game, cfg["games"], cfg["trials"], cfg["seed"], n_jobs=cfg["jobs"])
        named[f"mix_kappa_{k:+.4f}"] = st
        print(f"{k:>8.4f} {mid.p2:>10.6f} {mid.p3:>10.6f} "
              f"{analysis.classify_point(mid, m).value:>9} {analysis.exact_drift(game):>13.6f} "
              f"{mixing.signed_boundary_distance(mid, m):>12.6f} {st.final_mean:>11.4f}", file=stdout)
    _write_series(Path(cfg["out"] or "."), named, "mix.svg" if cfg["svg"] else None)
    return EXIT_OK


def cmd_refute(cfg, stdout) -> int:
    games, trials, seed, gamma = cfg["games"], cfg["trials"], cfg["seed"], cfg["gamma"]
    named = {
        "simple_a": refute.simulate_simple_compound(1.0, games, trials, seed),
        "simple_b": refute.simulate_simple_compound(0.0, games, trials, seed),
        "simple_compound": refute.simulate_simple_compound(gamma, games, trials, seed),
    }
    _write_series(Path(cfg["out"] or "."), named, "refute.svg" if cfg["svg"] else None)
    for label, rule in (("A", refute.SIMPLE_GAME_A), ("B", refute.SIMPLE_GAME_B)):
        steps, par, delta = refute.parity_absorption(rule, 0)
        winning = par is not None and delta > 0
        print(f"game {label}: {'WINNING' if winning else 'LOSING'} "
              f"(absorbed parity {par.value if par else 'None'}, {delta:+d}/step)", file=stdout)
        print(f"  parity locked after {steps} step(s) from C(0)=0", file=stdout)
    comp = named["simple_compound"].final_mean
    print(f"compound (gamma={gamma}): {'WINNING' if comp > 0 else 'LOSING'} "
          f"(mean final {fmt(comp)} vs game B {fmt(named['simple_b'].final_mean)})", file=stdout)
    for start in (9, 10):
        trace = refute.simple_trace(refute.SIMPLE_GAME_B, start, 4)
        print(f"game B from {start}: " + "->".join(map(str, trace)), file=stdout)
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "boundary": cmd_boundary,
    "classify": cmd_classify,
    "schemes": cmd_schemes,
    "mix": cmd_mix,
    "refute": cmd_refute,
}


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    common = argparse.ArgumentParser(add_help=False, argument_default=S)
    g = common.add_argument_group("experiment settings")
    g.add_argument("--config", help="JSON file of settings; flags override it")
    g.add_argument("--epsilon", type=float, help="biasing offset (default 0.005)")
    g.add_argument("--m", type=int, help="capital modulus M (default 3)")
    g.add_argument("--gamma", type=float, help="probability of selecting game A (default 0.5)")
    g.add_argument("--trials", type=int, help="Monte Carlo trials (default 10000)")
    g.add_argument("--games", type=int, help="plays per trial (default 200)")
    g.add_argument("--seed", type=int, help="base seed (default 0)")
    g.add_argument("--out", help="output directory (boundary: output file, '-' for stdout)")
    g.add_argument("--svg", action="store_true", help="also write a basic SVG line chart")
    g.add_argument("--jobs", type=int, help="worker threads for trial chunks (default 1)")
    g.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="parrondo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def game_options(p):
        p.add_argument("--scheme", type=int, choices=range(1, 9), help="use scheme 1..8")
        p.add_argument("--variant", choices=("capital", "history"))
        p.add_argument("--p1", type=float, help="override game A's win probability")
        p.add_argument("--p2", type=float, help="override game B's scenario-1 probability")
        p.add_argument("--p3", type=float, help="override game B's scenario-2 probability")

    p = sub.add_parser("simulate", parents=[common], argument_default=S,
                       help="simulate games A, B and their mixture")
    game_options(p)
    p = sub.add_parser("boundary", parents=[common], argument_default=S,
                       help="sample the fair curve as p3,p2 rows")
    p.add_argument("--samples", type=int)
    p = sub.add_parser("classify", parents=[common], argument_default=S,
                       help="classify a (p2, p3) point")
    p.add_argument("p2_pos", metavar="p2", type=float)
    p.add_argument("p3_pos", metavar="p3", type=float)
    p.add_argument("m_pos", metavar="M", type=int, nargs="?", default=None)
    sub.add_parser("schemes", parents=[common], argument_default=S,
                   help="print verdicts of the eight schemes")
    p = sub.add_parser("mix", parents=[common], argument_default=S,
                       help="simulate midpoints of bent mixing paths")
    game_options(p)
    p.add_argument("--kappa", type=float, action="append", help="path bend (repeatable)")
    sub.add_parser("refute", parents=[common], argument_default=S,
                   help="simulate the deterministic parity games")
    return parser


def resolve_config(ns: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    given = vars(ns)
    if "config" in given:
        try:
            with open(given["config"]) as fh:
                file_cfg = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad config file: {exc}") from exc
        unknown = set(file_cfg) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(file_cfg)
    cfg.update({k: v for k, v in given.items() if k in DEFAULTS or k.endswith("_pos")})
    if isinstance(cfg["kappa"], (int, float)):
        cfg["kappa"] = [cfg["kappa"]]
    if cfg["trials"] < 1:
        raise UsageError("--trials must be >= 1")
    if cfg["games"] < 0:
        raise UsageError("--games must be >= 0")
    if cfg["jobs"] < 1:
        raise UsageError("--jobs must be >= 1")
    return cfg


def main(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if getattr(ns, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(ns)
        return COMMANDS[ns.command](cfg, stdout)
    except (UsageError, model.ParameterError, ValueError) as exc:
        print(f"parrondo {ns.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"parrondo {ns.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
