# app.py
"""
Command-line entry point.

    python app.py classify --dmax 100 [--json]
    python app.py classify --d 15
    python app.py cover --d 14 --prime 3
    python app.py motzkin --d 23 --prime 2 --max-levels 200 --max-norm 47 [--resume FILE] [--save FILE]
    python app.py figure --d 13 --prime 2 -o d13.svg
    python app.py classgroup --d 23
    python app.py ring --dmax 100

Exit codes: 0 success, 1 usage or input error, 2 internal invariant violation.
"""

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from classify import classify_field, classify_range, euclidean_set, norm_euclidean_rings
from errors import InvariantViolation
from figures import render_case_svg
from ideals import (
    FracIdeal,
    class_group,
    class_number,
    ideal_class,
    ideal_inverse,
    integral_ideals_up_to,
    inverse_norm,
    primes_above,
)
from lattice import covering_verdict
from motzkin import (
    DEFAULT_MAX_INVERSE_NORM,
    DEFAULT_MAX_LEVELS,
    growth_profile,
    load_state,
    missing_from_horizon,
    resume_motzkin,
    run_motzkin,
    save_state,
    verdict_note,
)
from quadfield import QuadField, make_field
from report import ReportFormat, emit_report

load_dotenv()

# --- Config ---
LOG_LEVEL = os.getenv("EUCLID_LOG_LEVEL", "WARNING")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Command(str, Enum):
    CLASSIFY = "Classify"
    COVER = "Cover"
    MOTZKIN = "Motzkin"
    FIGURE = "Figure"
    CLASSGROUP = "ClassGroup"
    RING = "Ring"


@dataclass
class RunConfig:
    command: Command
    D: Optional[int] = None
    prime_over: Optional[int] = None
    D_max: Optional[int] = None
    # None: the saved budget on --resume, the environment default otherwise
    max_levels: Optional[int] = None
    max_inverse_norm: Optional[int] = None
    output_path: Optional[Path] = None
    fmt: ReportFormat = ReportFormat.TEXT
    resume: Optional[Path] = None
    save: Optional[Path] = None
    workers: Optional[int] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        def opt(name):
            return getattr(args, name, None)

        def path(name):
            value = opt(name)
            return Path(value) if value else None

        return cls(
            command=Command(args.command_name),
            D=opt("d"),
            prime_over=opt("prime"),
            D_max=opt("dmax"),
            max_levels=opt("max_levels"),
            max_inverse_norm=opt("max_norm"),
            output_path=path("output"),
            fmt=ReportFormat.JSON if opt("json") else ReportFormat.TEXT,
            resume=path("resume"),
            save=path("save"),
            workers=args.workers,
        )

    def validate(self) -> None:
        if self.max_levels is not None and self.max_levels < 0:
            raise ValueError(f"--max-levels must be >= 0, got {self.max_levels}")
        if self.max_inverse_norm is not None and self.max_inverse_norm < 1:
            raise ValueError(f"--max-norm must be >= 1, got {self.max_inverse_norm}")
        if self.D_max is not None and self.D_max < 1:
            raise ValueError(f"--dmax must be >= 1, got {self.D_max}")
        if self.workers is not None and self.workers < 1:
            raise ValueError(f"--workers must be >= 1, got {self.workers}")
        if self.command is Command.CLASSIFY and self.D is None and self.D_max is None:
            raise ValueError("classify needs --d or --dmax")
        if self.command is Command.FIGURE and (self.prime_over is None or self.output_path is None):
            raise ValueError("figure needs --prime and -o")
        if self.command is Command.MOTZKIN and self.resume is None and (self.D is None or self.prime_over is None):
            raise ValueError("motzkin needs --d and --prime unless --resume is given")


def _prime_ideal(field: QuadField, p: int) -> FracIdeal:
    primes = [P for P, f in primes_above(field, p) if f == 1]
    if not primes:
        raise ValueError(f"{p} is inert in {field}: no degree-one prime over {p}")
    return primes[0]


def cmd_classify(cfg: RunConfig) -> int:
    if cfg.D_max is not None:
        verdicts = classify_range(cfg.D_max, workers=cfg.workers)
    else:
        verdicts = [classify_field(cfg.D)]
    sys.stdout.write(emit_report(verdicts, cfg.fmt))
    if cfg.fmt is ReportFormat.TEXT and cfg.D_max is not None:
        print(f"Euclidean set: {euclidean_set(verdicts)} ({len(verdicts)} squarefree D processed)")
    return EXIT_OK


def cmd_cover(cfg: RunConfig) -> int:
    field = make_field(cfg.D)
    C = _prime_ideal(field, cfg.prime_over)
    v = covering_verdict(C)
    print(v.kind.value)
    print(f"ideal: {C}")
    print(f"covering_radius_sq: {v.covering_radius_sq}")
    print(f"disk_radius_sq: {v.disk_radius_sq}")
    if v.witness is not None:
        print(f"witness: p={v.witness.p} q={v.witness.q} (point p + q*sqrt({cfg.D})*i)")
    return EXIT_OK


def cmd_motzkin(cfg: RunConfig) -> int:
    if cfg.resume:
        saved = load_state(cfg.resume)
        state = resume_motzkin(
            saved,
            saved.max_levels if cfg.max_levels is None else cfg.max_levels,
            saved.max_inverse_norm if cfg.max_inverse_norm is None else cfg.max_inverse_norm,
        )
    else:
        field = make_field(cfg.D)
        C = _prime_ideal(field, cfg.prime_over)
        state = run_motzkin(
            field,
            C,
            DEFAULT_MAX_LEVELS if cfg.max_levels is None else cfg.max_levels,
            DEFAULT_MAX_INVERSE_NORM if cfg.max_inverse_norm is None else cfg.max_inverse_norm,
        )

    field = state.field
    print(f"D={field.D} C={state.C} status={state.status.value} levels={state.level_count()}")
    for i, level in enumerate(state.levels):
        norms = sorted({int(inverse_norm(I)) for I in level})
        print(f"  level {i}: {len(level)} ideal(s), Nm(I^-1) in {norms}")
    print(f"growth profile: {growth_profile(state)}")

    horizon = [ideal_inverse(J) for J in integral_ideals_up_to(field, state.max_inverse_norm)]
    reached = sum(1 for I in horizon if I in state.psi)
    print(f"inverses of integral ideals of norm <= {state.max_inverse_norm} reached: {reached}/{len(horizon)}")
    missing = missing_from_horizon(state)
    if missing:
        print("missing: " + ", ".join(str(I) for I in missing[:10]) + (" ..." if len(missing) > 10 else ""))
    print(verdict_note(state))

    if cfg.save:
        save_state(state, cfg.save)
        print(f"state written to {cfg.save}")
    return EXIT_OK


def cmd_figure(cfg: RunConfig) -> int:
    field = make_field(cfg.D)
    C = _prime_ideal(field, cfg.prime_over)
    render_case_svg(cfg.D, C, cfg.output_path)
    print(f"wrote {cfg.output_path}")
    return EXIT_OK


def cmd_classgroup(cfg: RunConfig) -> int:
    field = make_field(cfg.D)
    h = class_number(field)
    print(f"D={cfg.D} disc={field.disc} omega={field.omega_label} units={field.unit_count} h={h}")
    for f in class_group(field):
        print(f"  {f}  order {f.order()}")
    for p in (2, 3):
        for P, deg in primes_above(field, p):
            print(f"  prime over {p}: {P} (degree {deg}), class {ideal_class(P)}")
    return EXIT_OK


def cmd_ring(cfg: RunConfig) -> int:
    print(f"norm-Euclidean rings of integers, D <= {cfg.D_max}: {norm_euclidean_rings(cfg.D_max)}")
    return EXIT_OK


HANDLERS = {
    Command.CLASSIFY: cmd_classify,
    Command.COVER: cmd_cover,
    Command.MOTZKIN: cmd_motzkin,
    Command.FIGURE: cmd_figure,
    Command.CLASSGROUP: cmd_classgroup,
    Command.RING: cmd_ring,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="euclid", description="Euclidean ideal classes of imaginary quadratic fields")
    parser.add_argument("--log-level", default=LOG_LEVEL, help="logging level (default from EUCLID_LOG_LEVEL)")
    parser.add_argument("--workers", type=int, default=None, help="worker processes for classify")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="classify one field or a range of fields")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--dmax", type=int)
    group.add_argument("--d", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(command_name=Command.CLASSIFY)

    p = sub.add_parser("cover", help="covering verdict for a prime over 2 or 3")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--prime", type=int, choices=(2, 3), required=True)
    p.set_defaults(command_name=Command.COVER)

    p = sub.add_parser("motzkin", help="budgeted Motzkin construction")
    p.add_argument("--d", type=int)
    p.add_argument("--prime", type=int, choices=(2, 3))
    p.add_argument("--max-levels", type=int)
    p.add_argument("--max-norm", type=int)
    p.add_argument("--resume", help="state file to continue from")
    p.add_argument("--save", help="write the final state here")
    p.set_defaults(command_name=Command.MOTZKIN)

    p = sub.add_parser("figure", help="SVG of the fundamental domain and disks")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--prime", type=int, choices=(2, 3), required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(command_name=Command.FIGURE)

    p = sub.add_parser("classgroup", help="class group and small primes")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(command_name=Command.CLASSGROUP)

    p = sub.add_parser("ring", help="norm-Euclidean rings of integers up to a bound")
    p.add_argument("--dmax", type=int, required=True)
    p.set_defaults(command_name=Command.RING)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    level = logging.getLevelName(str(args.log_level).upper())
    if not isinstance(level, int):
        print(f"euclid: error: unknown log level {args.log_level!r}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=level, format="[%(name)s] %(message)s", stream=sys.stderr)

    try:
        cfg = RunConfig.from_args(args)
        # max_levels may be 0 (A_0 only); the other budgets must be positive
        cfg.validate()
        return HANDLERS[cfg.command](cfg)
    except InvariantViolation as e:
        print(f"[ERROR] invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValueError, OSError) as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
