"""
Seeded random search for axiom violations and the verification table built on it.

Trial ``t`` of a search with seed ``s`` draws everything from ``numpy.random.default_rng([s, t])``,
so a trial gives the same profile whatever the number of workers, and the reported violation is
always the one with the smallest trial index.
"""
import logging
import math
import string
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from src.conf import messages
from src.conf.config import config
from src.entity.exceptions import UnsupportedError
from src.entity.models import AxiomId, Profile, RuleId, Violation
from src.repository.fixtures import stored_counterexamples
from src.repository.profiles import parse_profile_document, resolve_tau
from src.schemas.axiom import SearchBounds, SearchReport, StoredCounterexample, TableCell, TableRow, Verdict
from src.services.axioms import characterise_do, check, check_direct_winners, check_idlp
from src.services.core import is_generic
from src.services.registry import Rule, rule_name

logger = logging.getLogger(__name__)

PARTY_IDS = string.ascii_lowercase
PROGRESS_EVERY = 1000

VOTER_AXIOMS = (AxiomId.MONOTONICITY, AxiomId.REP_SP_ONE_RISKY, AxiomId.SHARE_SP_SAFE_TOP2,
                AxiomId.SHARE_SP_PROMOTE)


def default_bounds(generic: bool = False) -> SearchBounds:
    return SearchBounds(max_parties=config.SEARCH_MAX_PARTIES, max_voters=config.SEARCH_MAX_VOTERS, generic=generic)


def random_profile(rng: np.random.Generator, bounds: SearchBounds, parties: int | None = None) -> Profile:
    """
    Unit-weight profile with a uniform number of parties and voters; each voter ranks a uniform
    number of parties (at least one) in uniform random order.
    """
    m = parties or int(rng.integers(1, bounds.max_parties + 1))
    n = int(rng.integers(1, bounds.max_voters + 1))
    roster = PARTY_IDS[:m]
    ballots = []
    for _ in range(n):
        length = int(rng.integers(1, m + 1))
        ballots.append((1, tuple(roster[index] for index in rng.permutation(m)[:length])))
    return Profile.build(roster, ballots)


def random_clone_profile(rng: np.random.Generator, bounds: SearchBounds) -> tuple[Profile, tuple[str, str]]:
    """
    The random_clone_profile function draws a profile and gives one of its parties a clone.

    The clone goes right before or right after the original in every ballot ranking the original,
    and is absent from the others. It has the lowest priority.

    :param rng: np.random.Generator: The trial's generator
    :param bounds: SearchBounds: Profile shape, the clone included in ``max_parties``
    :return: The profile and the (original, clone) pair
    """
    m = int(rng.integers(2, max(bounds.max_parties, 2) + 1))
    base = random_profile(rng, bounds, parties=m - 1)
    original = base.parties[int(rng.integers(0, m - 1))]
    clone = PARTY_IDS[m - 1]
    ballots = []
    for ballot in base.ballots:
        ranking = list(ballot.ranking)
        if original in ranking:
            ranking.insert(ranking.index(original) + int(rng.integers(0, 2)), clone)
        ballots.append((ballot.weight, ranking))
    return Profile.build(base.parties + (clone,), ballots), (original, clone)


def random_tau(rng: np.random.Generator, voters: int, bounds: SearchBounds) -> Fraction:
    low, high = bounds.tau_range
    return Fraction(int(rng.integers(math.ceil(low * voters), math.floor(high * voters) + 1)))


def run_trial(axiom: AxiomId, rule: Rule, bounds: SearchBounds, seed: int, trial: int) -> tuple[bool, Violation | None]:
    """
    Draw one instance and check it.

    :return: Whether the instance met the bounds' preconditions, and the violation found, if any
    """
    rng = np.random.default_rng([seed, trial])
    pair = None
    if axiom is AxiomId.CLONE_INDEPENDENCE:
        profile, pair = random_clone_profile(rng, bounds)
    else:
        profile = random_profile(rng, bounds)
    if bounds.generic and not is_generic(profile):
        return False, None
    voters = len(profile.ballots)
    tau = random_tau(rng, voters, bounds)
    options = {}
    if axiom in (AxiomId.THRESHOLD_MONOTONICITY, AxiomId.IDLP):
        options["tau_prime"] = Fraction(int(rng.integers(int(tau), voters + 1)))
    elif axiom is AxiomId.CLONE_INDEPENDENCE:
        options["pair"] = pair
    elif axiom is AxiomId.REINFORCEMENT:
        second = random_profile(rng, bounds, parties=len(profile.roster))
        options["second"] = second
        options["tau_second"] = random_tau(rng, len(second.ballots), bounds)
    elif axiom in VOTER_AXIOMS:
        options["voter"] = int(rng.integers(0, voters))
    return True, check(axiom, rule, profile, tau, **options)


def _run_trials(axiom: AxiomId, rule: Rule, bounds: SearchBounds, seed: int, start: int,
                stop: int) -> tuple[int, int, Violation | None, int | None]:
    checked = skipped = 0
    for trial in range(start, stop):
        applicable, violation = run_trial(axiom, rule, bounds, seed, trial)
        if not applicable:
            skipped += 1
            continue
        checked += 1
        if violation is not None:
            return checked, skipped, violation, trial
        if (trial + 1) % PROGRESS_EVERY == 0:
            logger.info("%s/%s: %d trials without violation", rule_name(rule), axiom.value, trial + 1)
    return checked, skipped, None, None


def random_search(axiom: AxiomId, rule: Rule, trials: int | None = None, bounds: SearchBounds | None = None,
                  seed: int | None = None, workers: int | None = None) -> SearchReport:
    """
    The random_search function checks an axiom on seeded random instances until it finds a violation.

    With several workers the trials are split in contiguous chunks; counts and the violation are
    those a single worker would report.

    :param axiom: AxiomId: The axiom
    :param rule: Rule: The rule under test; only rule ids run in worker processes
    :param trials: int | None: Number of instances, ``config.SEARCH_TRIALS`` by default
    :param bounds: SearchBounds | None: Shape of the instances
    :param seed: int | None: Base seed, ``config.SEED`` by default
    :param workers: int | None: Worker processes, ``config.WORKERS`` by default
    :return: The first violation, or a pass with the number of instances checked
    """
    axiom = AxiomId(axiom)
    if axiom is AxiomId.COALITION_INSURANCE:
        raise UnsupportedError(messages.UNSUPPORTED_AXIOM, axiom.value)
    trials = config.SEARCH_TRIALS if trials is None else trials
    bounds = bounds or default_bounds()
    seed = config.SEED if seed is None else seed
    workers = config.WORKERS if workers is None else workers
    if workers > 1 and isinstance(rule, str) and trials > workers:
        size = math.ceil(trials / workers)
        chunks = [(start, min(start + size, trials)) for start in range(0, trials, size)]
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_run_trials, *zip(*[(axiom, rule, bounds, seed, start, stop)
                                                              for start, stop in chunks])))
        checked = skipped = 0
        violation = trial = None
        for chunk_checked, chunk_skipped, chunk_violation, chunk_trial in results:
            checked += chunk_checked
            skipped += chunk_skipped
            if chunk_violation is not None:
                violation, trial = chunk_violation, chunk_trial
                break
    else:
        checked, skipped, violation, trial = _run_trials(axiom, rule, bounds, seed, 0, trials)
    logger.info("%s/%s: %s after %d checked, %d skipped", rule_name(rule), axiom.value,
                "violation" if violation else "pass", checked, skipped)
    return SearchReport(axiom=axiom, rule=rule_name(rule), seed=seed, trials=trials, checked=checked,
                        skipped=skipped, violation=violation, trial=trial)


def replay_fixture(fixture: StoredCounterexample) -> Violation | None:
    """
    The replay_fixture function runs the check a stored counterexample was recorded for.

    :param fixture: StoredCounterexample: The stored counterexample
    :return: The violation, or None if the rule no longer breaks the axiom there
    """
    document = parse_profile_document(fixture.document)
    options = {"voter": fixture.voter, "party": fixture.party, "pair": fixture.pair,
               "restriction": fixture.restriction}
    if fixture.tau_prime is not None:
        options["tau_prime"] = resolve_tau(document, fixture.tau_prime)
    if fixture.second is not None:
        second = parse_profile_document(fixture.second)
        options["second"] = second.profile
        options["tau_second"] = resolve_tau(second)
    return check(fixture.axiom, fixture.rule, document.profile, resolve_tau(document), **options)


SP_BOUNDS = SearchBounds(max_parties=4, max_voters=8)
SP_TRIALS = 500
GENERIC_BOUNDS = SearchBounds(max_parties=5, max_voters=10, generic=True)


def _holding(rule: RuleId, *axioms: AxiomId) -> list[TableCell]:
    cells = []
    for axiom in axioms:
        if axiom in (AxiomId.REP_SP_ONE_RISKY, AxiomId.SHARE_SP_SAFE_TOP2, AxiomId.SHARE_SP_PROMOTE):
            cells.append(TableCell(rule=rule, axiom=axiom, expected=Verdict.HOLDS, bounds=SP_BOUNDS,
                                   max_trials=SP_TRIALS))
        else:
            cells.append(TableCell(rule=rule, axiom=axiom, expected=Verdict.HOLDS))
    return cells


def build_table() -> list[TableCell]:
    """
    Every verified (rule, axiom) cell: properties the rule keeps are searched at random, failures
    are replayed from their stored counterexample, and open cells are searched and reported only.
    """
    cells = [
        *_holding(RuleId.DO, AxiomId.DIRECT_WINNERS, AxiomId.THRESHOLD_MONOTONICITY, AxiomId.REINFORCEMENT,
                  AxiomId.MONOTONICITY, AxiomId.SHARE_SP_SAFE_TOP2, AxiomId.SHARE_SP_PROMOTE),
        *_holding(RuleId.STV, AxiomId.DIRECT_WINNERS, AxiomId.SOLID_COALITIONS, AxiomId.THRESHOLD_MONOTONICITY),
        TableCell(rule=RuleId.STV, axiom=AxiomId.IDLP, expected=Verdict.HOLDS, bounds=GENERIC_BOUNDS),
        TableCell(rule=RuleId.STV, axiom=AxiomId.CLONE_INDEPENDENCE, expected=Verdict.HOLDS, bounds=GENERIC_BOUNDS),
        *_holding(RuleId.GP, AxiomId.SET_MAXIMALITY, AxiomId.WEAK_EFFICIENCY, AxiomId.DIRECT_WINNERS),
        *_holding(RuleId.MAXP, AxiomId.SET_MAXIMALITY, AxiomId.WEAK_EFFICIENCY),
        *_holding(RuleId.MAXR, AxiomId.SET_MAXIMALITY, AxiomId.WEAK_EFFICIENCY),
    ]
    for rule in (RuleId.DO_PLUS, RuleId.STV_PLUS, RuleId.GP_PLUS):
        cells += _holding(rule, AxiomId.DIRECT_WINNERS, AxiomId.UNREPRESENTED)
    for fixture in stored_counterexamples():
        cells.append(TableCell(rule=fixture.rule, axiom=fixture.axiom, expected=Verdict.FAILS, fixture=fixture.name))
    for rule in (RuleId.MAXP, RuleId.MAXR):
        cells.append(TableCell(rule=rule, axiom=AxiomId.REP_SP_ONE_RISKY, expected=Verdict.REPORTED,
                               bounds=SP_BOUNDS, max_trials=SP_TRIALS))
    for rule in (RuleId.MAXR, RuleId.STV_PLUS):
        cells.append(TableCell(rule=rule, axiom=AxiomId.CLONE_INDEPENDENCE, expected=Verdict.REPORTED,
                               bounds=GENERIC_BOUNDS))
    return cells


def run_cell(cell: TableCell, trials: int, seed: int) -> TableRow:
    if cell.expected is Verdict.FAILS:
        fixture = next(f for f in stored_counterexamples(cell.rule, cell.axiom) if f.name == cell.fixture)
        violation = replay_fixture(fixture)
        observed = Verdict.FAILS if violation is not None else Verdict.HOLDS
        return TableRow(cell=cell, observed=observed, agrees=observed is Verdict.FAILS, violation=violation,
                        checked=1)
    if cell.max_trials is not None:
        trials = min(trials, cell.max_trials)
    report = random_search(cell.axiom, cell.rule, trials, cell.bounds, seed)
    observed = Verdict.HOLDS if report.passed else Verdict.FAILS
    agrees = cell.expected is Verdict.REPORTED or observed is Verdict.HOLDS
    return TableRow(cell=cell, observed=observed, agrees=agrees, violation=report.violation, checked=report.checked)


def run_table(trials: int | None = None, seed: int | None = None,
              cells: list[TableCell] | None = None) -> list[TableRow]:
    """
    The run_table function verifies every cell of the table.

    :param trials: int | None: Random instances per searched cell
    :param seed: int | None: Base seed shared by all searched cells
    :param cells: list[TableCell] | None: Cells to run, all of them by default
    :return: One row per cell, telling whether the observation agrees with the expectation
    """
    trials = config.SEARCH_TRIALS if trials is None else trials
    seed = config.SEED if seed is None else seed
    rows = []
    for cell in cells if cells is not None else build_table():
        row = run_cell(cell, trials, seed)
        if not row.agrees:
            logger.warning("%s/%s expected %s, observed %s", cell.rule.value, cell.axiom.value,
                           cell.expected.value, row.observed.value)
        rows.append(row)
    return rows


def characterise_stv(rule: Rule = RuleId.STV, trials: int = 1000, bounds: SearchBounds | None = None,
                     seed: int | None = None) -> SearchReport:
    """
    The characterise_stv function checks direct winners and IDLP at every threshold pair of random
    generic profiles. STV passes, and any rule failing either axiom differs from STV.

    :param rule: Rule: The rule under test
    :param trials: int: Number of random profiles
    :param bounds: SearchBounds | None: Profile shape; genericity is always required
    :param seed: int | None: Base seed
    :return: The first violation, or a pass with the number of profiles checked
    """
    bounds = (bounds or default_bounds()).model_copy(update={"generic": True})
    seed = config.SEED if seed is None else seed
    checked = skipped = 0
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        profile = random_profile(rng, bounds)
        if not is_generic(profile):
            skipped += 1
            continue
        checked += 1
        voters = len(profile.ballots)
        for low in range(voters + 1):
            violation = check_direct_winners(rule, profile, Fraction(low))
            high = low
            while violation is None and high <= voters:
                violation = check_idlp(rule, profile, Fraction(low), Fraction(high))
                high += 1
            if violation is not None:
                return SearchReport(axiom=violation.axiom, rule=rule_name(rule), seed=seed, trials=trials,
                                    checked=checked, skipped=skipped, violation=violation, trial=trial)
    return SearchReport(rule=rule_name(rule), seed=seed, trials=trials, checked=checked, skipped=skipped)


def find_do_difference(rule: Rule, trials: int = 1000, bounds: SearchBounds | None = None,
                       seed: int | None = None) -> SearchReport:
    """
    Search random profiles for one where ``rule`` differs from DO and return the direct winners or
    reinforcement violation built from it. DO itself always passes.
    """
    bounds = bounds or default_bounds()
    seed = config.SEED if seed is None else seed
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        profile = random_profile(rng, bounds)
        violation = characterise_do(rule, profile, random_tau(rng, len(profile.ballots), bounds))
        if violation is not None:
            return SearchReport(axiom=violation.axiom, rule=rule_name(rule), seed=seed, trials=trials,
                                checked=trial + 1, violation=violation, trial=trial)
    return SearchReport(rule=rule_name(rule), seed=seed, trials=trials, checked=trials)
