"""Command-line front end.

Subcommands::

    lbemap run --r 3.8283 --x0 0.3 --x0 300/341 --out results/
    lbemap paper-preset --out results/ --svg
    lbemap verify --r 3.8283 --x0 1/r --oracle-horizon 20

Exit status:

    0  success
    1  invalid configuration (the diagnostic names the field)
    2  the exact oracle found an index where max(true errors) < delta
    3  a pseudo-orbit left the unit interval (range fault)
    4  I/O error writing results
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import intermittency, lbe, oracle, output
from .errors import LbeMapError, RangeFault
from .mapcore import InitialCondition, MapParams, make_params, parse_initial_condition
from .pipeline import PAPER_R, PAPER_X0, AnalysisSettings, ScenarioResult, analyze, check_oracle

log = logging.getLogger("lbemap")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_ORACLE = 2
EXIT_RANGE = 3
EXIT_IO = 4


class ConfigError(LbeMapError):
    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"{field_name}: {message}")


@dataclass
class RunConfig:
    r_text: str = PAPER_R
    x0_texts: list = field(default_factory=lambda: list(PAPER_X0))
    iterations: int = 5000
    digit_floor: float = lbe.DEFAULT_DIGIT_FLOOR
    eps: float = intermittency.DEFAULT_EPS
    laminar_len: int = intermittency.DEFAULT_MIN_LEN
    period: int = intermittency.DEFAULT_PERIOD
    oracle_horizon: int = oracle.DEFAULT_HORIZON
    digit_budget: int = oracle.DEFAULT_DIGIT_BUDGET
    output_dir: Path = Path("lbemap_out")
    emit_svg: bool = False

    def validate(self) -> tuple[MapParams, list[InitialCondition]]:
        """Check every field; parse r and the initial conditions."""
        try:
            params = make_params(self.r_text)
        except LbeMapError as exc:
            raise ConfigError("r", str(exc)) from None
        if not self.x0_texts:
            raise ConfigError("x0", "at least one initial condition is required")
        x0s = []
        for text in self.x0_texts:
            try:
                x0s.append(parse_initial_condition(text, params))
            except LbeMapError as exc:
                raise ConfigError("x0", str(exc)) from None
        labels = [output.slug(x.label) for x in x0s]
        if len(set(labels)) != len(labels):
            raise ConfigError("x0", "duplicate initial conditions")
        if self.iterations < 0:
            raise ConfigError("iterations", "must be >= 0")
        if not self.digit_floor >= 0:
            raise ConfigError("digit_floor", "must be >= 0")
        if not self.eps > 0:
            raise ConfigError("eps", "must be > 0")
        if self.laminar_len < 1:
            raise ConfigError("laminar_len", "must be >= 1")
        if self.period < 0:
            raise ConfigError("period", "must be >= 0")
        if self.oracle_horizon < 0:
            raise ConfigError("oracle_horizon", "must be >= 0")
        if self.digit_budget < 1:
            raise ConfigError("digit_budget", "must be >= 1")
        return params, x0s

    def settings(self) -> AnalysisSettings:
        return AnalysisSettings(
            iterations=self.iterations,
            digit_floor=self.digit_floor,
            eps=self.eps,
            laminar_len=self.laminar_len,
            period=self.period,
            oracle_horizon=self.oracle_horizon,
            digit_budget=self.digit_budget,
        )


def _summary_row(res: ScenarioResult) -> tuple:
    v = res.validation
    if v is None:
        ora = "n/a"
    else:
        ora = f"{'pass' if v.ok else 'FAIL'} 0..{v.horizon}"
        if res.oracle_truncated:
            ora += f" (budget; asked {res.requested_horizon})"
    first = res.report.first_disagreement
    return (
        res.x0.label,
        "none" if res.series.n_max is None else res.series.n_max,
        res.report.verdict.value,
        "none" if first is None else first,
        ora,
    )


def _preamble(config: RunConfig, params: MapParams) -> list[str]:
    return [
        f"r = {params.text}  iterations = {config.iterations}  digit_floor = {config.digit_floor:g}",
        f"eps = {config.eps:g}  laminar_len = {config.laminar_len}  period = {config.period}  "
        f"oracle_horizon = {config.oracle_horizon}",
        "",
    ]


def run_scenario(config: RunConfig) -> int:
    """Full pipeline for every x0; writes CSVs, optional SVGs and summary.txt."""
    try:
        params, x0s = config.validate()
    except ConfigError as exc:
        log.error("invalid configuration: %s", exc)
        return EXIT_CONFIG

    out_dir = Path(config.output_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        log.error("cannot create output directory %s: %s", out_dir, exc)
        return EXIT_IO

    settings = config.settings()
    rows = []
    status = EXIT_OK
    for x0 in x0s:
        try:
            res = analyze(params, x0, settings)
        except RangeFault as exc:
            log.error("x0=%s: %s", x0.label, exc)
            rows.append((x0.label, "-", f"RangeFault at {exc.index} {exc.form}".strip(), "-", "-"))
            status = EXIT_RANGE
            continue
        name = output.slug(x0.label)
        try:
            output.emit_csv(out_dir / f"{name}.csv", res.orbit_a, res.orbit_b, res.series,
                            res.segments_a, res.segments_b, res.report)
            if config.emit_svg:
                output.emit_svg(out_dir / f"{name}.svg", res.series, res.segments_a, res.segments_b,
                                res.x_star, res.orbit_a.values, res.orbit_b.values,
                                title=f"r = {params.text}, x0 = {x0.label}:")
        except OSError as exc:
            log.error("writing results for x0=%s under %s: %s", x0.label, out_dir, exc)
            return EXIT_IO
        if not res.oracle_ok:
            log.error("x0=%s: lower bound exceeds true error at n = %s", x0.label, res.validation.failures)
            if status == EXIT_OK:
                status = EXIT_ORACLE
        rows.append(_summary_row(res))

    text = output.summary_text(rows, _preamble(config, params))
    try:
        output.atomic_write(out_dir / "summary.txt", text)
    except OSError as exc:
        log.error("writing %s: %s", out_dir / "summary.txt", exc)
        return EXIT_IO
    sys.stdout.write(text)
    return status


def verify(config: RunConfig) -> int:
    """Oracle validation only, printed as a per-index table."""
    from .mapcore import FormA, FormB, iterate

    try:
        params, x0s = config.validate()
    except ConfigError as exc:
        log.error("invalid configuration: %s", exc)
        return EXIT_CONFIG
    status = EXIT_OK
    h = config.oracle_horizon
    for x0 in x0s:
        try:
            a = iterate(FormA, params, x0, h)
            b = iterate(FormB, params, x0, h)
        except RangeFault as exc:
            log.error("x0=%s: %s", x0.label, exc)
            status = EXIT_RANGE
            continue
        series = lbe.lower_bound_error(a, b, config.digit_floor)
        _, errors, report = check_oracle(params, x0, a, b, series, h, config.digit_budget)
        print(f"# r = {params.text}, x0 = {x0.label}")
        print(f"{'n':>3}  {'delta':>24}  {'err_a':>24}  {'err_b':>24}  check")
        for n in range(report.horizon + 1):
            print(f"{n:>3}  {output.fmt_float(series.delta[n]):>24}  {output.fmt_float(errors.err_a[n]):>24}  "
                  f"{output.fmt_float(errors.err_b[n]):>24}  {'pass' if report.passed[n] else 'FAIL'}")
        print(f"# {'PASS' if report.ok else 'FAIL'}: indices 0..{report.horizon}\n")
        if not report.ok and status == EXIT_OK:
            status = EXIT_ORACLE
    return status


def _common(p: argparse.ArgumentParser, with_map: bool) -> None:
    if with_map:
        p.add_argument("--r", dest="r_text", default=PAPER_R, help="map parameter as a decimal literal")
        p.add_argument("--x0", dest="x0_texts", action="append", default=None,
                       help='initial condition: decimal, fraction "p/q" or "1/r" (repeatable)')
    p.add_argument("--iterations", type=int, default=5000)
    p.add_argument("--digit-floor", type=float, default=lbe.DEFAULT_DIGIT_FLOOR,
                   help="reliability threshold in decimal digits (default %(default)s)")
    p.add_argument("--eps", type=float, default=intermittency.DEFAULT_EPS, help="laminar tolerance")
    p.add_argument("--laminar-len", type=int, default=intermittency.DEFAULT_MIN_LEN,
                   help="minimum laminar run length")
    p.add_argument("--period", type=int, default=intermittency.DEFAULT_PERIOD,
                   help="laminar recurrence period; 0 = distance to the fixed point")
    p.add_argument("--oracle-horizon", type=int, default=oracle.DEFAULT_HORIZON)
    p.add_argument("--digit-budget", type=int, default=oracle.DEFAULT_DIGIT_BUDGET,
                   help="max decimal digits of an exact denominator")
    p.add_argument("--out", dest="output_dir", type=Path, default=Path("lbemap_out"))
    p.add_argument("--svg", dest="emit_svg", action="store_true", help="also write SVG charts")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lbemap", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("run", help="full pipeline for the given r and x0 values"), True)
    _common(sub.add_parser("verify", help="exact-oracle validation of the lower bound error"), True)
    _common(sub.add_parser("paper-preset", help="r = 3.8283 with x0 in {0.3, 1/r, 300/341, 1904/6365}"), False)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="lbemap: %(levelname)s: %(message)s")
    opts = vars(args)
    command = opts.pop("command")
    opts.pop("verbose")
    if command == "paper-preset":
        opts.update(r_text=PAPER_R, x0_texts=list(PAPER_X0))
    elif not opts.get("x0_texts"):
        log.error("invalid configuration: x0: at least one --x0 is required")
        return EXIT_CONFIG
    config = RunConfig(**opts)
    if command == "verify":
        return verify(config)
    return run_scenario(config)


if __name__ == "__main__":
    sys.exit(main())
