"""
Survey experiments: weighting, strategic voting, representativity sweeps and the noise model.

Shares and histograms are exact rationals over the total ballot weight. Only the noise model
draws floats, which are turned into rationals before any rule runs.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np
import pandas as pd

from src.conf import messages
from src.conf.config import config
from src.entity.exceptions import PartySelectionError, SurveyFormatError
from src.entity.models import Ballot, Party, PartyStatus, Profile, Threshold, to_fraction
from src.schemas.experiment import (ExperimentPoint, ExperimentReport, PartyBuckets, RankingSource, StrategicReport,
                                    SurveyRow, SweepKind)
from src.services.core import ZERO, best_assignment, rank_of, truncate
from src.services.registry import Rule, rule_name, run_rule, select

logger = logging.getLogger(__name__)

DOWN_ROWS = ("out_to_safe", "out_to_risky", "risky_to_safe")
OTHER = "other"
PERCENTILES = (20, 50, 80)


def compute_weights(rows: Sequence[SurveyRow], official_shares: Mapping[str, Fraction]) -> dict[str, Fraction]:
    """
    The compute_weights function post-stratifies respondents on the party they voted for.

    A respondent voting for ``c`` gets ``official_share(c) / sample_share(c)``; the weights are then
    scaled so that they add up to the number of respondents with a positive weight. Respondents
    without an intention, or voting for a party without an official share, get weight 0. Official
    mass of parties nobody in the sample voted for is logged as uncovered.

    :param rows: Sequence[SurveyRow]: The survey answers
    :param official_shares: Mapping[str, Fraction]: Official vote share of each party, summing to at most 1
    :return: Weight of every respondent, by respondent id
    """
    shares = {party: to_fraction(share) for party, share in official_shares.items()}
    if sum(shares.values(), ZERO) > 1:
        raise PartySelectionError(messages.OFFICIAL_SHARES_EXCEED, str(sum(shares.values(), ZERO)))
    intentions = pd.Series([row.intention for row in rows], dtype=object)
    counts = intentions.dropna().value_counts()
    sampled = int(counts.sum())
    uncovered = sum((share for party, share in shares.items() if share > 0 and party not in counts.index), ZERO)
    if uncovered > 0:
        logger.warning("official share %s has no respondent in the sample", uncovered)

    raw = {party: shares.get(party, ZERO) / Fraction(int(count), sampled) for party, count in counts.items()}
    for party in raw:
        if party not in shares:
            logger.warning("no official share for %s, its respondents get weight 0", party)
    weighted = sum(int(counts[party]) for party, weight in raw.items() if weight > 0)
    mass = sum((weight * int(counts[party]) for party, weight in raw.items()), ZERO)
    scale = Fraction(weighted) / mass if mass > 0 else ZERO
    weights = {row.respondent_id: raw[row.intention] * scale if row.intention is not None else ZERO for row in rows}
    logger.info("weighted %d of %d respondents", weighted, len(rows))
    return weights


def attach_weights(rows: Sequence[SurveyRow], weights: Mapping[str, Fraction]) -> list[SurveyRow]:
    return [row.model_copy(update={"weight": weights.get(row.respondent_id, ZERO)}) for row in rows]


def default_cuts() -> tuple[float, float, float, float]:
    return config.BUCKET_SAFE, config.BUCKET_RISKY_LOW, config.BUCKET_RISKY_HIGH, config.BUCKET_OUT


def _bucket(percent: float, cuts: tuple[float, float, float, float]) -> tuple[PartyStatus, bool]:
    safe, risky_low, risky_high, out = cuts
    if percent >= safe:
        return PartyStatus.SAFE, False
    if risky_low <= percent <= risky_high:
        return PartyStatus.RISKY, False
    if percent < out:
        return PartyStatus.OUT, False
    if percent < risky_low:
        nearer_out = percent - out < risky_low - percent
        return (PartyStatus.OUT if nearer_out else PartyStatus.RISKY), True
    nearer_risky = percent - risky_high < safe - percent
    return (PartyStatus.RISKY if nearer_risky else PartyStatus.SAFE), True


def derive_buckets(official_shares: Mapping[str, Fraction], roster: Iterable[str] = (),
                   cuts: tuple[float, float, float, float] | None = None) -> PartyBuckets:
    """
    The derive_buckets function sorts parties into safe, risky and out by their official share.

    Cut points are percentages (safe, risky low, risky high, out), ``config.BUCKET_*`` by default. A
    share between two buckets goes to the nearer cut and the party is flagged. Roster parties missing
    from the results count as share 0.

    :param official_shares: Mapping[str, Fraction]: Official vote share of each party
    :param roster: Iterable[str]: Further parties to classify
    :param cuts: tuple[float, float, float, float] | None: Cut points in percent
    :return: The buckets with the shares they were derived from
    """
    cuts = cuts or default_cuts()
    if not cuts[3] <= cuts[1] <= cuts[2] <= cuts[0]:
        raise PartySelectionError(messages.MALFORMED_BUCKETS, ",".join(map(str, cuts)))
    shares = {party: to_fraction(share) for party, share in official_shares.items()}
    for party in roster:
        shares.setdefault(party, ZERO)
    buckets, flagged = {}, []
    for party, share in shares.items():
        buckets[party], gap = _bucket(float(share * 100), cuts)
        if gap:
            flagged.append(party)
            logger.warning("%s has share %.2f%%, between two buckets; assigned %s", party, float(share * 100),
                           buckets[party].value)
    return PartyBuckets(shares=shares, buckets=buckets, flagged=tuple(flagged))


def classify_strategic(rows: Sequence[SurveyRow], buckets: PartyBuckets,
                       source: RankingSource = RankingSource.FULL) -> StrategicReport:
    """
    The classify_strategic function compares each respondent's first-ranked party ``c`` with the
    party ``c*`` they voted for.

    A respondent is inconsistent when ``c*`` is not ranked at all, sincere when ``c = c*``,
    strategic-down when ``c`` has a lower official score than ``c*`` and strategic-up otherwise.
    Respondents without an intention are excluded and only counted.

    :param rows: Sequence[SurveyRow]: Weighted survey answers
    :param buckets: PartyBuckets: Official shares and buckets
    :param source: RankingSource: Which of the two rankings to read
    :return: Weighted fractions per category
    """
    source = RankingSource(source)
    totals = {"inconsistent": ZERO, "sincere": ZERO, "strategic_down": ZERO, "strategic_up": ZERO}
    down = {name: ZERO for name in (*DOWN_ROWS, OTHER)}
    up: dict[str, Fraction] = {}
    classified = excluded = 0
    total = ZERO
    for row in rows:
        if row.intention is None:
            excluded += 1
            continue
        ranking = row.ranking(source)
        classified += 1
        total += row.weight
        voted = row.intention
        if voted not in ranking:
            totals["inconsistent"] += row.weight
            continue
        first = ranking[0]
        if first == voted:
            totals["sincere"] += row.weight
            continue
        pattern = f"{buckets.buckets[first].value}_to_{buckets.buckets[voted].value}"
        if buckets.shares[first] < buckets.shares[voted]:
            totals["strategic_down"] += row.weight
            down[pattern if pattern in DOWN_ROWS else OTHER] += row.weight
        else:
            totals["strategic_up"] += row.weight
            up[pattern] = up.get(pattern, ZERO) + row.weight
    if total == 0:
        logger.warning("no weighted respondent to classify")
        return StrategicReport(source=source, classified=classified, excluded=excluded)
    logger.info("classified %d respondents on %s rankings, excluded %d", classified, source.value, excluded)
    return StrategicReport(source=source, **{name: weight / total for name, weight in totals.items()},
                           down={name: weight / total for name, weight in down.items()},
                           up={name: weight / total for name, weight in sorted(up.items())},
                           classified=classified, excluded=excluded, total_weight=total)


def out_party_contingency(rows: Sequence[SurveyRow], buckets: PartyBuckets,
                          source: RankingSource = RankingSource.FULL) -> list[list[Fraction]]:
    """
    The out_party_contingency function counts how much weight went to an out party in the election
    and how much ranked an out party first.

    Only respondents with an intention and a non-empty ranking count. The first row is the
    election vote, the second the first-ranked party; columns are out and not out.

    :param rows: Sequence[SurveyRow]: Weighted survey answers
    :param buckets: PartyBuckets: Party buckets
    :param source: RankingSource: Which ranking gives the first-ranked party
    :return: The 2x2 table of weights
    """
    table = [[ZERO, ZERO], [ZERO, ZERO]]
    for row in rows:
        ranking = row.ranking(source)
        if row.intention is None or not ranking:
            continue
        for line, party in enumerate((row.intention, ranking[0])):
            column = 0 if buckets.buckets[party] is PartyStatus.OUT else 1
            table[line][column] += row.weight
    return table


def profile_from_survey(rows: Sequence[SurveyRow], roster: Sequence[str],
                        source: RankingSource = RankingSource.FULL) -> Profile:
    """
    Build the profile of weighted respondents. Each ballot remembers the respondent's intention as
    the stratum its weight was derived from; respondents with weight 0 are left out.
    """
    source = RankingSource(source)
    ballots = []
    for number, row in enumerate(rows, start=1):
        if row.weight <= 0:
            continue
        unknown = [party for party in row.ranking(source) if party not in roster]
        if unknown:
            raise SurveyFormatError(messages.UNKNOWN_PARTY, unknown[0], number)
        ballots.append(Ballot(ranking=row.ranking(source), weight=row.weight, group=row.intention))
    return Profile(roster=tuple(Party(id=party, priority=index) for index, party in enumerate(roster)),
                   ballots=tuple(ballots))


def _resolve(tau: Threshold | Fraction | int | str, profile: Profile) -> Fraction:
    if isinstance(tau, Threshold):
        return tau.resolve(profile.total_weight)
    if isinstance(tau, str):
        return Threshold.parse(tau).resolve(profile.total_weight)
    return to_fraction(tau)


def _point(profile: Profile, rule: Rule, tau: Fraction, x: Fraction) -> ExperimentPoint:
    if isinstance(rule, str):
        result = run_rule(rule, profile, tau)
        outcome, assignment = result.outcome, result.assignment
    else:
        outcome = select(rule, profile, tau)
        assignment = best_assignment(profile, outcome)
    total = profile.total_weight
    histogram: dict[int, Fraction] = {}
    for ballot, party in zip(profile.ballots, assignment.representative):
        if party is not None and total > 0:
            rank = rank_of(ballot.ranking, party)
            histogram[rank] = histogram.get(rank, ZERO) + ballot.weight / total
    unrepresented = assignment.unrepresented / total if total > 0 else ZERO
    return ExperimentPoint(x=x, tau=tau, outcome=tuple(party for party in profile.parties if party in outcome),
                           parties_selected=len(outcome), unrepresented_share=unrepresented,
                           histogram=dict(sorted(histogram.items())))


def unrepresented_share(profile: Profile, rule: Rule, tau: Threshold | Fraction | int | str) -> Fraction:
    """
    Share of the total weight whose ballot ranks no selected party (or, for the uninominal rule,
    whose first choice is not selected).
    """
    tau = _resolve(tau, profile)
    return _point(profile, rule, tau, tau).unrepresented_share


def rank_distribution(profile: Profile, rule: Rule, tau: Threshold | Fraction | int | str) -> dict[int, Fraction]:
    """
    Share of the total weight represented by its 1st, 2nd, ... ranked party. The shares and the
    unrepresented share add up to 1.
    """
    tau = _resolve(tau, profile)
    return _point(profile, rule, tau, tau).histogram


def sweep_threshold(profile: Profile, rule: Rule, taus: Sequence[Threshold | Fraction | int | str]) -> ExperimentReport:
    """
    The sweep_threshold function runs a rule once per threshold.

    :param profile: Profile: The ballots
    :param rule: Rule: The rule to run
    :param taus: Sequence: Thresholds, absolute or as percentages of the total weight
    :return: One point per threshold, in the given order
    """
    points = []
    for tau in taus:
        resolved = _resolve(tau, profile)
        points.append(_point(profile, rule, resolved, resolved))
        logger.info("%s at tau=%s: %d parties, unrepresented %.4f", rule_name(rule), resolved,
                    points[-1].parties_selected, float(points[-1].unrepresented_share))
    return ExperimentReport(kind=SweepKind.THRESHOLD, rule=rule_name(rule), points=tuple(points))


def sweep_truncation(profile: Profile, rule: Rule, tau: Threshold | Fraction | int | str,
                     ks: Sequence[int]) -> ExperimentReport:
    """
    The sweep_truncation function cuts every ranking to its first ``k`` parties and runs the rule.

    :param profile: Profile: The ballots
    :param rule: Rule: The rule to run
    :param tau: Threshold | Fraction | int | str: The threshold, resolved once on the full profile
    :param ks: Sequence[int]: Truncation lengths
    :return: One point per length
    """
    resolved = _resolve(tau, profile)
    points = []
    for k in ks:
        points.append(_point(truncate(profile, k), rule, resolved, Fraction(k)))
        logger.info("%s truncated to %d: unrepresented %.4f", rule_name(rule), k,
                    float(points[-1].unrepresented_share))
    return ExperimentReport(kind=SweepKind.TRUNCATION, rule=rule_name(rule), points=tuple(points))


def _multiplier(draw: float) -> Fraction:
    if draw < 0:
        logger.warning("clamped negative noise multiplier %.4f to 0", draw)
        return ZERO
    return Fraction(float(draw))


def noisy_profile(profile: Profile, sigma: float, seed: int, sample: int) -> Profile:
    """
    Multiply every ballot weight by a draw for its stratum and a draw for the ballot itself, both
    from N(1, sigma). Sample ``sample`` of seed ``seed`` always draws the same multipliers.
    """
    strata = np.random.default_rng([seed, sample, 0]).normal(1.0, sigma, size=len(profile.roster))
    voters = np.random.default_rng([seed, sample, 1]).normal(1.0, sigma, size=len(profile.ballots))
    by_party = {party: _multiplier(draw) for party, draw in zip(profile.parties, strata)}
    ballots = []
    for ballot, draw in zip(profile.ballots, voters):
        stratum = by_party.get(ballot.stratum, Fraction(1))
        ballots.append(ballot.model_copy(update={"weight": ballot.weight * stratum * _multiplier(draw)}))
    return profile.with_ballots(ballots)


def _sample_share(noisy: Profile, rule: Rule, tau: Threshold | Fraction | int | str, sample: int) -> Fraction:
    resolved = _resolve(tau, noisy)
    total = noisy.total_weight
    if resolved > total:
        # out of reach for every party: empty outcome
        logger.debug("sample %d: tau=%s above total weight %s", sample, resolved, total)
        return Fraction(1) if total > 0 else ZERO
    return _point(noisy, rule, resolved, resolved).unrepresented_share


def _noise_samples(profile: Profile, rule: Rule, taus: Sequence, sigma: float, seed: int,
                   samples: Sequence[int]) -> list[list[float]]:
    shares = []
    for sample in samples:
        noisy = noisy_profile(profile, sigma, seed, sample)
        shares.append([float(_sample_share(noisy, rule, tau, sample)) for tau in taus])
    return shares


def noise_sweep(profile: Profile, rule: Rule, taus: Sequence[Threshold | Fraction | int | str],
                samples: int | None = None, sigma: float | None = None, seed: int | None = None,
                workers: int | None = None) -> ExperimentReport:
    """
    The noise_sweep function reruns a threshold sweep on randomly perturbed weights.

    Every point carries the unperturbed result, the 20th, 50th and 80th percentile of the
    unrepresented share over the samples, and the per-sample values in sample order. Percentage
    thresholds resolve against each sample's own total weight; an absolute threshold above a
    sample's total leaves that sample with an empty outcome.

    :param profile: Profile: Weighted ballots
    :param rule: Rule: The rule to run; only rule ids run in worker processes
    :param taus: Sequence: Thresholds
    :param samples: int | None: Number of perturbed profiles, ``config.NOISE_SAMPLES`` by default
    :param sigma: float | None: Standard deviation of the multipliers, ``config.NOISE_SIGMA`` by default
    :param seed: int | None: Base seed, ``config.SEED`` by default
    :param workers: int | None: Worker processes, ``config.WORKERS`` by default
    :return: The sweep with percentiles
    """
    samples = config.NOISE_SAMPLES if samples is None else samples
    sigma = config.NOISE_SIGMA if sigma is None else sigma
    seed = config.SEED if seed is None else seed
    workers = config.WORKERS if workers is None else workers
    if samples < 1:
        raise PartySelectionError(messages.EMPTY_SAMPLES, str(samples))
    taus = list(taus)
    indices = list(range(samples))
    if workers > 1 and isinstance(rule, str) and samples > workers:
        size = math.ceil(samples / workers)
        chunks = [indices[start:start + size] for start in range(0, samples, size)]
        with ProcessPoolExecutor(max_workers=workers) as executor:
            parts = executor.map(_noise_samples, *zip(*[(profile, rule, taus, sigma, seed, chunk) for chunk in chunks]))
            shares = [row for part in parts for row in part]
    else:
        shares = _noise_samples(profile, rule, taus, sigma, seed, indices)
    matrix = np.array(shares, dtype=float)
    base = sweep_threshold(profile, rule, taus)
    points = []
    for column, point in enumerate(base.points):
        p20, median, p80 = (float(value) for value in np.percentile(matrix[:, column], PERCENTILES))
        points.append(point.model_copy(update={"p20": p20, "median": median, "p80": p80,
                                               "samples": tuple(matrix[:, column].tolist())}))
    logger.info("%s: %d noise samples over %d thresholds", rule_name(rule), samples, len(taus))
    return ExperimentReport(kind=SweepKind.NOISE, rule=rule_name(rule), points=tuple(points), seed=seed,
                            sigma=sigma, samples=samples)
