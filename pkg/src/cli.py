"""
Command line entry point.

Exit codes: 0 success, 1 a checked axiom is violated or the verification table disagrees with its
expectations, 2 input error, 3 guard exceeded.
"""
import argparse
import datetime
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from src.conf import messages
from src.conf.config import config
from src.entity.exceptions import ContingencyError, PartySelectionError, SurveyFormatError
from src.entity.models import AxiomId, Restriction, RuleId, Threshold
from src.repository import reports, surveys
from src.repository.profiles import parse_profile_document, resolve_tau, write_profile
from src.schemas.axiom import SearchBounds
from src.schemas.experiment import ColumnMapping, RankingSource
from src.services import experiments, runs, search
from src.services.stats import chi_square_2x2

logger = logging.getLogger(__name__)

EXIT_VIOLATION = 1


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise PartySelectionError(messages.UNREADABLE_FILE, f"{path}: {err.strerror}")


def _emit(args: argparse.Namespace, report) -> None:
    text = reports.emit_report(report, args.format)
    if args.output:
        reports.write_atomic(args.output, text)
    else:
        sys.stdout.write(text)


def _percent_grid(start: Fraction, stop: Fraction, steps: int) -> list[Threshold]:
    """
    >>> [str(t) for t in _percent_grid(Fraction(1), Fraction(3), 3)]
    ['1%', '2%', '3%']
    """
    if steps < 2:
        return [Threshold(value=start, relative=True)]
    return [Threshold(value=start + (stop - start) * index / (steps - 1), relative=True) for index in range(steps)]


def _cuts(text: str | None) -> tuple[float, float, float, float] | None:
    if text is None:
        return None
    try:
        safe, risky_low, risky_high, out = (float(value) for value in text.split(","))
    except ValueError:
        raise PartySelectionError(messages.MALFORMED_BUCKETS, text)
    return safe, risky_low, risky_high, out


def _weighted_rows(args: argparse.Namespace):
    shares = surveys.parse_official_results(_read(args.results))
    rows = surveys.parse_survey(_read(args.survey), list(shares))
    if args.before:
        try:
            rows = surveys.completed_before(rows, datetime.date.fromisoformat(args.before))
        except ValueError:
            raise SurveyFormatError(messages.SURVEY_BAD_DATE, args.before)
    return shares, experiments.attach_weights(rows, experiments.compute_weights(rows, shares))


def cmd_compute(args: argparse.Namespace) -> int:
    report = runs.compute(_read(args.profile), args.rule, args.tau, args.parallel_universe, args.seats)
    _emit(args, report)
    return 0


def cmd_axioms_check(args: argparse.Namespace) -> int:
    violation = runs.check_document(_read(args.profile), args.rule, args.axiom, args.tau, args.tau_prime,
                                    args.voter, args.party, args.restriction)
    _emit(args, reports.check_report(violation, meta={"rule": args.rule.value, "axiom": args.axiom.value}))
    return EXIT_VIOLATION if violation else 0


def cmd_axioms_search(args: argparse.Namespace) -> int:
    bounds = SearchBounds(max_parties=args.max_parties, max_voters=args.max_voters, generic=args.generic)
    report = search.random_search(args.axiom, args.rule, args.trials, bounds, args.seed, args.workers)
    _emit(args, reports.search_report(report))
    return 0


def cmd_axioms_table(args: argparse.Namespace) -> int:
    rows = search.run_table(args.trials, args.seed)
    _emit(args, reports.table_report(rows, meta={"trials": args.trials, "seed": args.seed}))
    return 0 if all(row.agrees for row in rows) else EXIT_VIOLATION


def cmd_axioms_characterise(args: argparse.Namespace) -> int:
    bounds = SearchBounds(max_parties=args.max_parties, max_voters=args.max_voters)
    if args.against == "do":
        report = search.find_do_difference(args.rule, args.trials, bounds, args.seed)
    else:
        report = search.characterise_stv(args.rule, args.trials, bounds, args.seed)
    _emit(args, reports.search_report(report, meta={"against": args.against}))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    document = parse_profile_document(_read(args.profile))
    taus = _percent_grid(args.tau_from, args.tau_to, args.steps)
    _emit(args, reports.experiment_report(experiments.sweep_threshold(document.profile, args.rule, taus)))
    return 0


def cmd_truncate(args: argparse.Namespace) -> int:
    document = parse_profile_document(_read(args.profile))
    tau = resolve_tau(document, args.tau)
    ks = range(args.k_from, args.k_to + 1)
    _emit(args, reports.experiment_report(experiments.sweep_truncation(document.profile, args.rule, tau, ks)))
    return 0


def cmd_noise(args: argparse.Namespace) -> int:
    document = parse_profile_document(_read(args.profile))
    taus = _percent_grid(args.tau_from, args.tau_to, args.steps)
    report = experiments.noise_sweep(document.profile, args.rule, taus, args.samples, args.sigma, args.seed,
                                     args.workers)
    _emit(args, reports.experiment_report(report))
    return 0


def cmd_strategic(args: argparse.Namespace) -> int:
    shares, rows = _weighted_rows(args)
    buckets = experiments.derive_buckets(shares, cuts=_cuts(args.buckets))
    report = experiments.classify_strategic(rows, buckets, args.source)
    _emit(args, reports.strategic_report(report, meta={"flagged": list(buckets.flagged)}))
    return 0


def cmd_chi_square(args: argparse.Namespace) -> int:
    if args.table:
        try:
            table = [[Fraction(cell) for cell in row.split(",")] for row in args.table.split(";")]
        except (ValueError, ZeroDivisionError):
            raise ContingencyError(messages.MALFORMED_TABLE, args.table)
    elif not (args.survey and args.results):
        raise PartySelectionError(messages.MISSING_SURVEY)
    else:
        shares, rows = _weighted_rows(args)
        buckets = experiments.derive_buckets(shares, cuts=_cuts(args.buckets))
        table = experiments.out_party_contingency(rows, buckets, args.source)
    statistic, p_value = chi_square_2x2(table)
    sys.stdout.write(json.dumps({"statistic": statistic, "p_value": p_value,
                                 "table": [[reports.quantity(cell).exact for cell in row] for row in table]},
                                sort_keys=True, indent=2) + "\n")
    return 0


def cmd_convert(args: argparse.Namespace) -> int:
    text = _read(args.input)
    if args.source_format == "zenodo-csv":
        if not args.map:
            raise PartySelectionError(messages.MISSING_MAPPING)
        try:
            mapping = ColumnMapping.model_validate_json(_read(args.map))
        except ValueError as err:
            raise PartySelectionError(messages.MISSING_MAPPING, str(err))
        text = surveys.convert_export(text, mapping)
    if args.target_format == "profile":
        if not args.results:
            raise PartySelectionError(messages.RESULTS_MALFORMED, "--results is required")
        shares = surveys.parse_official_results(_read(args.results))
        rows = surveys.parse_survey(text, list(shares))
        rows = experiments.attach_weights(rows, experiments.compute_weights(rows, shares))
        text = write_profile(experiments.profile_from_survey(rows, list(shares), args.ranking))
    if args.output:
        reports.write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def _output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", type=reports.ReportFormat, choices=list(reports.ReportFormat),
                        default=reports.ReportFormat.STRUCTURED)
    parser.add_argument("--output", help="write here instead of standard output")


def _rule(parser: argparse.ArgumentParser, default: RuleId | None = None) -> None:
    parser.add_argument("--rule", type=RuleId, choices=list(RuleId), default=default, required=default is None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="party-selection", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--log-level", default=config.LOG_LEVEL)
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", help="run a rule on a profile")
    _rule(compute)
    compute.add_argument("--profile", required=True)
    compute.add_argument("--tau", help="threshold, e.g. 5 or 5%%; defaults to the profile header")
    compute.add_argument("--parallel-universe", action="store_true")
    compute.add_argument("--seats", type=int)
    _output_options(compute)
    compute.set_defaults(handler=cmd_compute)

    axioms = commands.add_parser("axioms", help="check axioms").add_subparsers(dest="action", required=True)
    check = axioms.add_parser("check", help="check an axiom on a profile")
    check.add_argument("--axiom", type=AxiomId, choices=list(AxiomId), required=True)
    _rule(check)
    check.add_argument("--profile", required=True)
    check.add_argument("--tau")
    check.add_argument("--tau-prime")
    check.add_argument("--voter", type=int)
    check.add_argument("--party")
    check.add_argument("--restriction", type=Restriction, choices=list(Restriction))
    _output_options(check)
    check.set_defaults(handler=cmd_axioms_check)

    searching = axioms.add_parser("search", help="search random profiles for a violation")
    searching.add_argument("--axiom", type=AxiomId, choices=list(AxiomId), required=True)
    _rule(searching)
    searching.add_argument("--trials", type=int, default=config.SEARCH_TRIALS)
    searching.add_argument("--max-parties", type=int, default=config.SEARCH_MAX_PARTIES)
    searching.add_argument("--max-voters", type=int, default=config.SEARCH_MAX_VOTERS)
    searching.add_argument("--generic", action="store_true")
    searching.add_argument("--seed", type=int, default=config.SEED)
    searching.add_argument("--workers", type=int, default=config.WORKERS)
    _output_options(searching)
    searching.set_defaults(handler=cmd_axioms_search)

    table = axioms.add_parser("table", help="verify every rule/axiom cell")
    table.add_argument("--trials", type=int, default=config.SEARCH_TRIALS)
    table.add_argument("--seed", type=int, default=config.SEED)
    _output_options(table)
    table.set_defaults(handler=cmd_axioms_table)

    characterise = axioms.add_parser("characterise", help="tell a rule apart from DO or STV")
    characterise.add_argument("--against", choices=("do", "stv"), required=True)
    _rule(characterise)
    characterise.add_argument("--trials", type=int, default=1000)
    characterise.add_argument("--max-parties", type=int, default=config.SEARCH_MAX_PARTIES)
    characterise.add_argument("--max-voters", type=int, default=config.SEARCH_MAX_VOTERS)
    characterise.add_argument("--seed", type=int, default=config.SEED)
    _output_options(characterise)
    characterise.set_defaults(handler=cmd_axioms_characterise)

    experiment = commands.add_parser("experiment", help="run experiments").add_subparsers(dest="action",
                                                                                          required=True)
    for name, handler in (("sweep", cmd_sweep), ("noise", cmd_noise)):
        sub = experiment.add_parser(name, help=f"{name} over a threshold grid in percent")
        sub.add_argument("--profile", required=True)
        _rule(sub, RuleId.STV)
        sub.add_argument("--tau-from", type=Fraction, default=Fraction(1))
        sub.add_argument("--tau-to", type=Fraction, default=Fraction(10))
        sub.add_argument("--steps", type=int, default=10)
        if name == "noise":
            sub.add_argument("--samples", type=int, default=config.NOISE_SAMPLES)
            sub.add_argument("--sigma", type=float, default=config.NOISE_SIGMA)
            sub.add_argument("--seed", type=int, default=config.SEED)
            sub.add_argument("--workers", type=int, default=config.WORKERS)
        _output_options(sub)
        sub.set_defaults(handler=handler)

    truncation = experiment.add_parser("truncate", help="truncate rankings to k parties")
    truncation.add_argument("--profile", required=True)
    _rule(truncation, RuleId.STV)
    truncation.add_argument("--tau")
    truncation.add_argument("--k-from", type=int, default=1)
    truncation.add_argument("--k-to", type=int, required=True)
    _output_options(truncation)
    truncation.set_defaults(handler=cmd_truncate)

    for name, handler in (("strategic", cmd_strategic), ("chi-square", cmd_chi_square)):
        sub = experiment.add_parser(name, help=f"{name} on a weighted survey")
        sub.add_argument("--survey", required=name == "strategic")
        sub.add_argument("--results", required=name == "strategic")
        sub.add_argument("--buckets", help="safe,risky low,risky high,out cuts in percent")
        sub.add_argument("--source", type=RankingSource, choices=list(RankingSource), default=RankingSource.FULL)
        sub.add_argument("--before", help="keep rows completed before this ISO date")
        if name == "chi-square":
            sub.add_argument("--table", help="weighted counts as 'a,b;c,d'")
        else:
            _output_options(sub)
        sub.set_defaults(handler=handler)

    convert = commands.add_parser("convert", help="convert survey files")
    convert.add_argument("--from", dest="source_format", choices=("zenodo-csv", "survey-csv"), required=True)
    convert.add_argument("--to", dest="target_format", choices=("survey-csv", "profile"), required=True)
    convert.add_argument("--input", required=True)
    convert.add_argument("--map", help="JSON column mapping for exported files")
    convert.add_argument("--results", help="official results, needed to weight a profile")
    convert.add_argument("--ranking", type=RankingSource, choices=list(RankingSource), default=RankingSource.FULL)
    convert.add_argument("--output")
    convert.set_defaults(handler=cmd_convert)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=str(args.log_level).upper(), format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except PartySelectionError as err:
        logger.error("%s", err)
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
