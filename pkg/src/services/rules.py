"""
Party selection rules driven by plurality scores: direct winners only (DO), iterated elimination of
the plurality loser (STV), greedy addition in plurality order (GP), and the uninominal baseline.

Ties follow the roster priority: STV eliminates the tied party with the lowest priority, GP
considers the tied party with the highest priority first.
"""
import logging
from fractions import Fraction
from functools import lru_cache

from src.conf import messages
from src.conf.config import config
from src.entity.exceptions import UnsupportedError, guard
from src.entity.models import Action, Outcome, Profile, RuleId, RuleResult, TraceEvent
from src.services.core import (ZERO, best_assignment, first_place_scores, is_feasible, make_assignment,
                               plurality_losers, supporter_scores)

logger = logging.getLogger(__name__)


def ensure_feasible(result: RuleResult) -> RuleResult:
    """Every selected party of a result represents at least the threshold."""
    assert all(score >= result.tau for score in result.assignment.scores.values()), \
        f"{result.rule} returned an infeasible outcome at tau={result.tau}"
    return result


def run_do(profile: Profile, tau: Fraction) -> RuleResult:
    """
    The run_do function selects every party ranked first by at least ``tau`` weight.

    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :return: The direct winners with their assignment
    """
    scores = first_place_scores(profile)
    trace = []
    for step, (party, score) in enumerate(scores.items()):
        action = Action.SELECTED if score >= tau else Action.SKIPPED
        trace.append(TraceEvent(party=party, action=action, step=step, score=score))
    outcome = frozenset(event.party for event in trace if event.action is Action.SELECTED)
    logger.debug("DO selects %s at tau=%s", sorted(outcome), tau)
    return ensure_feasible(RuleResult(rule=RuleId.DO.value, tau=tau, outcome=outcome,
                                      assignment=best_assignment(profile, outcome), trace=tuple(trace)))


def run_stv(profile: Profile, tau: Fraction) -> RuleResult:
    """
    The run_stv function eliminates the current plurality loser until the remaining parties are feasible.

    Eliminated parties hand their ballots to the next remaining party of each ranking; there is no
    surplus transfer.

    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :return: The surviving parties, with one trace event per elimination
    """
    remaining = list(profile.parties)
    trace = []
    while remaining:
        scores = supporter_scores(profile, frozenset(remaining))
        if all(score >= tau for score in scores.values()):
            break
        loser = plurality_losers(scores)[-1]
        trace.append(TraceEvent(party=loser, action=Action.ELIMINATED, step=len(trace), score=scores[loser]))
        logger.debug("STV eliminates %s with %s", loser, scores[loser])
        remaining.remove(loser)
    outcome = frozenset(remaining)
    assignment = best_assignment(profile, outcome)
    for party in remaining:
        trace.append(TraceEvent(party=party, action=Action.SELECTED, step=len(trace),
                                score=assignment.scores[party]))
    return ensure_feasible(RuleResult(rule=RuleId.STV.value, tau=tau, outcome=outcome, assignment=assignment,
                                      trace=tuple(trace)))


def gp_order(profile: Profile) -> list[tuple[str, Fraction]]:
    """Parties by decreasing first-place weight, ties by priority."""
    scores = first_place_scores(profile)
    return sorted(scores.items(), key=lambda item: -item[1])


def run_gp(profile: Profile, tau: Fraction) -> RuleResult:
    """
    The run_gp function scans parties once in decreasing plurality order and keeps each one
    whose addition leaves the selection feasible.

    Plurality scores come from the full profile and are not recomputed during the scan.

    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :return: The greedy selection, with a selected or skipped event per party
    """
    selected: set[str] = set()
    trace = []
    for step, (party, score) in enumerate(gp_order(profile)):
        if is_feasible(profile, selected | {party}, tau):
            selected.add(party)
            action = Action.SELECTED
        else:
            action = Action.SKIPPED
        trace.append(TraceEvent(party=party, action=action, step=step, score=score))
    outcome = frozenset(selected)
    logger.debug("GP selects %s at tau=%s", sorted(outcome), tau)
    return ensure_feasible(RuleResult(rule=RuleId.GP.value, tau=tau, outcome=outcome,
                                      assignment=best_assignment(profile, outcome), trace=tuple(trace)))


def run_uninominal(profile: Profile, tau: Fraction) -> RuleResult:
    """
    The run_uninominal function selects the direct winners but only lets a ballot be represented by
    its first-ranked party.

    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :return: The DO outcome with first-choice-only assignment
    """
    result = run_do(profile, tau)
    outcome = result.outcome
    representative = [ballot.ranking[0] if ballot.ranking and ballot.ranking[0] in outcome else None
                      for ballot in profile.ballots]
    scores = {party: ZERO for party in profile.parties if party in outcome}
    for ballot, party in zip(profile.ballots, representative):
        if party is not None:
            scores[party] += ballot.weight
    return result.model_copy(update={"rule": RuleId.UNINOMINAL.value,
                                     "assignment": make_assignment(profile, representative, scores)})


def _sort_outcomes(profile: Profile, outcomes) -> list[Outcome]:
    order = profile.priority_of()
    return sorted(outcomes, key=lambda outcome: (len(outcome), sorted(order[party] for party in outcome)))


def _stv_universes(profile: Profile, tau: Fraction) -> set[Outcome]:
    @lru_cache(maxsize=None)
    def explore(remaining: Outcome) -> frozenset[Outcome]:
        scores = supporter_scores(profile, remaining)
        if all(score >= tau for score in scores.values()):
            return frozenset({remaining})
        found = set()
        for loser in plurality_losers(scores):
            found |= explore(remaining - {loser})
        return frozenset(found)

    return set(explore(frozenset(profile.parties)))


def _gp_universes(profile: Profile, tau: Fraction) -> set[Outcome]:
    scores = first_place_scores(profile)

    @lru_cache(maxsize=None)
    def explore(selected: Outcome, pending: Outcome) -> frozenset[Outcome]:
        if not pending:
            return frozenset({selected})
        top = max(scores[party] for party in pending)
        found = set()
        for party in pending:
            if scores[party] != top:
                continue
            grown = selected | {party}
            found |= explore(grown if is_feasible(profile, grown, tau) else selected, pending - {party})
        return frozenset(found)

    return set(explore(frozenset(), frozenset(profile.parties)))


def run_parallel_universe(rule: RuleId, profile: Profile, tau: Fraction) -> list[Outcome]:
    """
    The run_parallel_universe function returns every outcome some resolution of the score ties can reach.

    :param rule: RuleId: STV or GP
    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :return: The reachable outcomes, smallest first
    """
    guard(len(profile.roster), config.PARALLEL_UNIVERSE_MAX_PARTIES)
    rule = RuleId(rule)
    if rule is RuleId.STV:
        outcomes = _stv_universes(profile, tau)
    elif rule is RuleId.GP:
        outcomes = _gp_universes(profile, tau)
    else:
        raise UnsupportedError(messages.UNSUPPORTED_RULE, rule.value)
    return _sort_outcomes(profile, outcomes)
