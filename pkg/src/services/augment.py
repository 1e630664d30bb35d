"""
Local search that repairs an outcome until no party outside it is ranked by ``tau`` weight of
unrepresented voters.

Each step adds the outside party ranked by the most unrepresented weight and drops every selected
party that would keep less than ``tau`` of its supporters who prefer it to the newcomer.
"""
import logging
from fractions import Fraction

from src.conf import messages
from src.entity.exceptions import InfeasibleStartError, UnsupportedError
from src.entity.models import AugmentStep, Outcome, Profile, RuleId, RuleResult
from src.services.core import ZERO, best, best_assignment, is_feasible, prefers
from src.services.rules import run_do, run_gp, run_stv

logger = logging.getLogger(__name__)

BASE_RULES = {
    RuleId.DO_PLUS: (RuleId.DO, run_do),
    RuleId.STV_PLUS: (RuleId.STV, run_stv),
    RuleId.GP_PLUS: (RuleId.GP, run_gp),
}


def unrepresented_support(profile: Profile, outcome: Outcome) -> dict[str, Fraction]:
    """Weight of unrepresented voters ranking each party outside the outcome, in priority order."""
    support = {party: ZERO for party in profile.parties if party not in outcome}
    for ballot in profile.ballots:
        if best(ballot.ranking, outcome) is None:
            for party in ballot.ranking:
                support[party] += ballot.weight
    return support


def retained(profile: Profile, outcome: Outcome, challenger: str) -> dict[str, Fraction]:
    """For each selected party, the weight of its supporters who prefer it to ``challenger``."""
    kept = {party: ZERO for party in profile.parties if party in outcome}
    for ballot in profile.ballots:
        party = best(ballot.ranking, outcome)
        if party is not None and prefers(ballot.ranking, party, challenger):
            kept[party] += ballot.weight
    return kept


def augment(profile: Profile, tau: Fraction, start: Outcome) -> tuple[Outcome, tuple[AugmentStep, ...]]:
    """
    The augment function runs the repair loop from a feasible start.

    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :param start: Outcome: A feasible outcome to start from
    :return: The fixed point and the steps taken to reach it
    """
    current = frozenset(start)
    if not is_feasible(profile, current, tau):
        raise InfeasibleStartError(", ".join(sorted(current)))
    visited = {current}
    steps = []
    while True:
        support = unrepresented_support(profile, current)
        candidates = [party for party, weight in support.items() if weight >= tau]
        if not candidates:
            break
        added = max(candidates, key=lambda party: support[party])
        kept = retained(profile, current, added)
        removed = tuple(party for party, weight in kept.items() if weight < tau)
        current = (current | {added}).difference(removed)
        logger.debug("augment adds %s (%s), removes %s", added, support[added], removed)
        assert is_feasible(profile, current, tau)
        if current in visited:
            raise RuntimeError(messages.AUGMENT_CYCLE)
        visited.add(current)
        steps.append(AugmentStep(added=added, weight=support[added], removed=removed, outcome=current))
    return current, tuple(steps)


def run_augmented(rule: RuleId, profile: Profile, tau: Fraction) -> RuleResult:
    """
    The run_augmented function repairs the outcome of DO, STV or GP.

    :param rule: RuleId: DO_PLUS, STV_PLUS or GP_PLUS
    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :return: The repaired result; its trace is the base rule's, followed by the repair steps
    """
    rule = RuleId(rule)
    if rule not in BASE_RULES:
        raise UnsupportedError(messages.UNSUPPORTED_RULE, rule.value)
    _, run_base = BASE_RULES[rule]
    base = run_base(profile, tau)
    outcome, steps = augment(profile, tau, base.outcome)
    return base.model_copy(update={"rule": rule.value, "outcome": outcome,
                                   "assignment": best_assignment(profile, outcome), "augment_trace": steps})
