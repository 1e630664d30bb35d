"""
Optimization rules over feasible outcomes.

MaxP maximizes the weight of voters whose representative is their first choice, then the weight of
voters represented by one of their first two choices, and so on. MaxR maximizes the weight of
represented voters. Remaining ties go to the outcome whose indicator vector, read in priority order,
is lexicographically largest.

Both are NP-hard, so an exact depth-first branch-and-bound is used and the roster size is guarded.
"""
import logging
from fractions import Fraction
from typing import Callable

from src.conf.config import config
from src.entity.exceptions import guard
from src.entity.models import Action, Outcome, Profile, RuleId, RuleResult, TraceEvent
from src.services.core import ZERO, best, best_assignment, first_place_scores, is_feasible

logger = logging.getLogger(__name__)

Objective = tuple[Fraction, ...]


def coverage(profile: Profile, outcome: Outcome) -> Objective:
    """
    Entry k is the weight of voters whose representative sits at rank k+1 or better.

    >>> p = Profile.build("ab", [(1, "ab"), (2, "b")])
    >>> coverage(p, frozenset("b"))
    (Fraction(2, 1), Fraction(3, 1))
    """
    length = max((len(ballot.ranking) for ballot in profile.ballots), default=0)
    counts = [ZERO] * length
    for ballot in profile.ballots:
        party = best(ballot.ranking, outcome)
        if party is not None:
            counts[ballot.ranking.index(party)] += ballot.weight
    total = ZERO
    cumulative = []
    for count in counts:
        total += count
        cumulative.append(total)
    return tuple(cumulative)


def maxp_objective(profile: Profile, outcome: Outcome) -> Objective:
    return coverage(profile, outcome)


def maxr_objective(profile: Profile, outcome: Outcome) -> Objective:
    vector = coverage(profile, outcome)
    return vector[-1:] if vector else (ZERO,)


def indicator(parties: tuple[str, ...], outcome: Outcome) -> tuple[int, ...]:
    return tuple(int(party in outcome) for party in parties)


class BranchAndBound:
    """
    Exact maximizer of ``(objective, indicator)`` over feasible outcomes.

    Any superset of an infeasible set is infeasible, so a node whose included set is infeasible is
    pruned. Coverage only grows when parties are added, so the objective of ``included | undecided``
    bounds every completion of a node.
    """

    def __init__(self, profile: Profile, tau: Fraction, objective: Callable[[Profile, Outcome], Objective]):
        self.profile = profile
        self.tau = tau
        self.objective = objective
        self.parties = profile.parties
        scores = first_place_scores(profile)
        self.order = sorted(self.parties, key=lambda party: -scores[party])
        self.best_key = None
        self.best_outcome: Outcome = frozenset()
        self.nodes = 0

    def solve(self) -> Outcome:
        self._branch(frozenset(), 0)
        logger.debug("branch and bound explored %d nodes", self.nodes)
        return self.best_outcome

    def _branch(self, included: Outcome, depth: int) -> None:
        self.nodes += 1
        if not is_feasible(self.profile, included, self.tau):
            return
        if depth == len(self.order):
            key = (self.objective(self.profile, included), indicator(self.parties, included))
            if self.best_key is None or key > self.best_key:
                self.best_key = key
                self.best_outcome = included
            return
        if self.best_key is not None:
            bound = self.objective(self.profile, included | frozenset(self.order[depth:]))
            if bound < self.best_key[0]:
                return
        party = self.order[depth]
        self._branch(included | {party}, depth + 1)
        self._branch(included, depth + 1)


def _result(rule: RuleId, profile: Profile, tau: Fraction, outcome: Outcome,
            objective: Callable[[Profile, Outcome], Objective]) -> RuleResult:
    assignment = best_assignment(profile, outcome)
    trace = tuple(TraceEvent(party=party, action=Action.SELECTED, step=step, score=assignment.scores[party])
                  for step, party in enumerate(party for party in profile.parties if party in outcome))
    return RuleResult(rule=rule.value, tau=tau, outcome=outcome, assignment=assignment, trace=trace,
                      objective=objective(profile, outcome))


def run_maxp(profile: Profile, tau: Fraction) -> RuleResult:
    """
    The run_maxp function returns the feasible outcome with the lexicographically largest rank coverage.

    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :return: The optimal outcome and its coverage vector
    """
    guard(len(profile.roster), config.SOLVER_MAX_PARTIES)
    outcome = BranchAndBound(profile, tau, maxp_objective).solve()
    return _result(RuleId.MAXP, profile, tau, outcome, maxp_objective)


def run_maxr(profile: Profile, tau: Fraction) -> RuleResult:
    """
    The run_maxr function returns the feasible outcome representing the most weight.

    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :return: The optimal outcome and its represented weight
    """
    guard(len(profile.roster), config.SOLVER_MAX_PARTIES)
    outcome = BranchAndBound(profile, tau, maxr_objective).solve()
    return _result(RuleId.MAXR, profile, tau, outcome, maxr_objective)


def enumerate_feasible(profile: Profile, tau: Fraction) -> set[Outcome]:
    """
    The enumerate_feasible function lists every feasible outcome.

    Only feasible sets are extended, since no superset of an infeasible set is feasible.

    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :return: All feasible party sets, the empty set included
    """
    parties = profile.parties
    guard(len(parties), config.ENUMERATION_MAX_PARTIES)
    found: set[Outcome] = set()

    def extend(current: Outcome, start: int) -> None:
        found.add(current)
        for index in range(start, len(parties)):
            grown = current | {parties[index]}
            if is_feasible(profile, grown, tau):
                extend(grown, index + 1)

    extend(frozenset(), 0)
    return found


def brute_force(profile: Profile, tau: Fraction, rule: RuleId) -> Outcome:
    """Argmax of the rule's key over :func:`enumerate_feasible`."""
    objective = maxp_objective if RuleId(rule) is RuleId.MAXP else maxr_objective
    parties = profile.parties
    return max(enumerate_feasible(profile, tau),
               key=lambda outcome: (objective(profile, outcome), indicator(parties, outcome)))
