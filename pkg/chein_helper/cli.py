import argparse
import sys
from pathlib import Path
from typing import List, NamedTuple, Optional

from chein_helper.classifier import classify_set, discover_battery, format_signature, load_battery
from chein_helper.config import configure_logging, load_settings
from chein_helper.engine import TraceLine, collect_identities
from chein_helper.error import CheinError, log
from chein_helper.group import enumerate_star_maps, g0_candidates, load_group, resolve_star, signature
from chein_helper.loop import LoopTable
from chein_helper.search import diff_against_golden, enumerate_quadruples, load_goldens, run_search
from chein_helper.term import resolve_identity, search_varieties
from chein_helper.theta import MultQuadruple


class RunConfig(NamedTuple):
    subcommand: str
    group: Optional[str] = None
    star: str = "inverse"
    g0: int = 0
    quadruple: Optional[str] = None
    identity: Optional[str] = None
    fmt: str = "grid"
    trace: bool = False
    golden: Optional[Path] = None
    structural: bool = False
    check: tuple = ()
    out: Optional[Path] = None
    workers: int = 1
    battery: Optional[Path] = None
    discover: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace, workers: int) -> "RunConfig":
        fields = {k: v for k, v in vars(args).items() if k in cls._fields and v is not None}
        if getattr(args, "variety", None):
            fields["identity"] = args.variety
        if getattr(args, "check", None):
            fields["check"] = tuple(c.strip() for c in args.check.split(",") if c.strip())
        fields.setdefault("workers", workers)
        return cls(**fields)


def yes(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_classify(config: RunConfig) -> int:
    name, psi = resolve_identity(config.identity)
    if config.quadruple is None:
        for q in enumerate_quadruples():
            print(f"{str(q):<20} {classify_set(collect_identities(psi, q))}")
        return 0
    q = MultQuadruple.parse(config.quadruple)
    trace: List[TraceLine] = []
    condition = classify_set(collect_identities(psi, q, trace))
    if config.trace:
        for line in trace:
            print(line)
    print(condition)
    return 0


def cmd_search(config: RunConfig) -> int:
    goldens = load_goldens(config.golden) if config.golden else load_goldens()
    varieties = [v for v in search_varieties() if v in goldens]
    results = run_search(varieties, config.workers)
    battery = load_battery(config.battery) if config.battery else None
    report = diff_against_golden(results, goldens, battery, structural=config.structural)
    sys.stdout.write(report.render(config.fmt))
    if config.fmt != "grid":
        print(report.summary(), file=sys.stderr)
    return 0 if report.ok else 1


def cmd_build(config: RunConfig) -> int:
    if config.group is None or config.quadruple is None:
        raise ValueError("Illegal argument: build needs --group and --quadruple.")
    group = load_group(config.group)
    star = resolve_star(group, config.star)
    loop = LoopTable.build(group, star, config.g0, MultQuadruple.parse(config.quadruple))
    if config.out is not None:
        try:
            loop.write(config.out)
        except OSError as e:
            log.error(f"Cannot write {config.out}: {e}")
            return 2
        log.debug(f"Wrote {loop!r} to {config.out}")
    else:
        sys.stdout.write(loop.dumps())
    print(f"loop: {yes(loop.is_loop())}")
    for check in config.check:
        name, psi = resolve_identity(check)
        print(f"{name}: {yes(loop.check_identity(psi))}")
    return 0


def cmd_stars(config: RunConfig) -> int:
    if config.group is None:
        raise ValueError("Illegal argument: stars needs --group.")
    group = load_group(config.group)
    for k, star in enumerate(enumerate_star_maps(group)):
        g0s = " ".join(str(c.index) for c in g0_candidates(group, star))
        kind = "nonidentical" if star.nonidentical else "identical"
        sig = format_signature(signature(group, star))
        print(f"{k}: {star} {kind} {sig} g0 in {{{g0s}}}")
    return 0


def cmd_enumerate_quadruples(config: RunConfig) -> int:
    for q in enumerate_quadruples():
        print(q)
    return 0


def cmd_battery(config: RunConfig) -> int:
    if config.discover:
        for sig, witness in sorted(discover_battery().items(), reverse=True):
            print(f"{format_signature(sig)}: {witness}")
    else:
        print(load_battery(config.battery) if config.battery else load_battery())
    return 0


COMMANDS = {
    "classify": cmd_classify,
    "search": cmd_search,
    "build": cmd_build,
    "stars": cmd_stars,
    "enumerate-quadruples": cmd_enumerate_quadruples,
    "battery": cmd_battery,
}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chein",
        description="Doubling constructions of loops from groups with an involutory antiautomorphism.",
        epilog="The CHEIN_WORKERS environment variable sets the default worker count of search.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    classify = sub.add_parser("classify", help="Condition on G for a loop identity")
    which = classify.add_mutually_exclusive_group(required=True)
    which.add_argument("--identity", help="Loop identity such as 'x(yx)=(xy)x'")
    which.add_argument("--variety", help="Builtin variety name such as 'moufang'")
    classify.add_argument("--quadruple", help="'beta,gamma,delta' or all four maps; all 64 if omitted")
    classify.add_argument("--trace", action="store_true", help="Print the identity of every coset assignment")

    search = sub.add_parser("search", help="Reproduce and diff the published tables")
    search.add_argument("--golden", type=Path, help="Golden table file")
    search.add_argument("--format", dest="fmt", choices=["grid", "json", "publication"], default="grid")
    search.add_argument("--structural", action="store_true", help="Compare conditions literally")
    search.add_argument("--workers", type=int, help="Worker processes")

    build = sub.add_parser("build", help="Build a loop table and check identities")
    build.add_argument("--group", required=True, help="e.g. 'symmetric:3', 'cyclic:2 x cyclic:2' or a Cayley file")
    build.add_argument("--star", default="inverse", help="inverse, identity or an index from 'stars'")
    build.add_argument("--g0", type=int, default=0, help="Index of g0")
    build.add_argument("--quadruple", required=True)
    build.add_argument("--check", help="Comma separated varieties or identities")
    build.add_argument("--out", type=Path, help="Write the Cayley table here")

    stars = sub.add_parser("stars", help="List the admissible star maps of a group")
    stars.add_argument("--group", required=True)

    sub.add_parser("enumerate-quadruples", help="List the 64 reduced quadruples")

    battery = sub.add_parser("battery", help="Show the witness battery")
    battery.add_argument(
        "--discover", action="store_true", help="Search small groups for every realisable signature"
    )
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        settings = load_settings()
        configure_logging(settings)
        config = RunConfig.from_args(args, settings.workers)
        if config.golden is None and args.subcommand == "search":
            config = config._replace(golden=settings.golden)
        config = config._replace(battery=settings.battery)
        return COMMANDS[config.subcommand](config)
    except (CheinError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
