"""
Executable checks of the party selection axioms.

Every ``check_*`` function returns a :class:`~src.entity.models.Violation` when the rule (or
outcome) breaks the axiom on the given input, and None otherwise. A violation carries a witness
that :func:`replay` feeds back to the same check.
"""
import itertools
import logging
from fractions import Fraction
from typing import Iterable

from src.conf import messages
from src.conf.config import config
from src.entity.exceptions import UnsupportedError, guard
from src.entity.models import (AxiomId, Ballot, Outcome, PartyStatus, Profile, Restriction, RuleId, Violation,
                               Witness)
from src.services.core import (ZERO, best, best_assignment, concat, first_place_scores, is_feasible, prefers,
                               replace_ballot, restrict)
from src.services.optrules import enumerate_feasible
from src.services.registry import Rule, rule_name, select

logger = logging.getLogger(__name__)

# rule label of violations raised against a given outcome rather than a rule
OUTCOME = "outcome"


def show(profile: Profile, outcome: Iterable[str] | None) -> str:
    if outcome is None:
        return "-"
    outcome = set(outcome)
    return "{" + ",".join(party for party in profile.parties if party in outcome) + "}"


def _violation(axiom: AxiomId, rule: Rule | str, narrative: str, **witness) -> Violation:
    name = OUTCOME if rule == OUTCOME else rule_name(rule)
    violation = Violation(axiom=axiom, rule=name, witness=Witness(**witness), narrative=narrative)
    logger.debug("%s violates %s: %s", name, axiom.value, narrative)
    return violation


def check_set_maximality(rule: Rule, profile: Profile, tau: Fraction) -> Violation | None:
    """
    The check_set_maximality function looks for a feasible strict superset of the rule's outcome.

    A feasible superset exists iff adding some single party stays feasible, since feasibility is
    closed under subsets.

    :param rule: Rule: The rule under test
    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :return: A violation naming the party that can be added, or None
    """
    outcome = select(rule, profile, tau)
    for party in profile.parties:
        if party not in outcome and is_feasible(profile, outcome | {party}, tau):
            return _violation(AxiomId.SET_MAXIMALITY, rule,
                              f"{show(profile, outcome)} can be extended by {party} and stay feasible",
                              profile=profile, tau=tau, outcome=outcome, party=party)
    return None


def check_weak_efficiency(rule: Rule, profile: Profile, tau: Fraction) -> Violation | None:
    """
    The check_weak_efficiency function flags an empty outcome while some non-empty outcome is feasible.

    :param rule: Rule: The rule under test
    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :return: A violation naming a feasible singleton, or None
    """
    outcome = select(rule, profile, tau)
    if outcome:
        return None
    for party in profile.parties:
        if is_feasible(profile, {party}, tau):
            return _violation(AxiomId.WEAK_EFFICIENCY, rule, f"empty outcome although {{{party}}} is feasible",
                              profile=profile, tau=tau, outcome=outcome, party=party)
    return None


def check_direct_winners(rule: Rule, profile: Profile, tau: Fraction) -> Violation | None:
    outcome = select(rule, profile, tau)
    for party, score in first_place_scores(profile).items():
        if score >= tau and party not in outcome:
            return _violation(AxiomId.DIRECT_WINNERS, rule,
                              f"{party} is ranked first by {score} >= {tau} but missing from {show(profile, outcome)}",
                              profile=profile, tau=tau, outcome=outcome, party=party)
    return None


def solid_coalitions(profile: Profile) -> dict[tuple[str, ...], Fraction]:
    """
    Weight of voters ranking each party set strictly above all other parties.

    Only sets that are the top segment of some ballot can have positive weight; keys are those sets
    in priority order.
    """
    order = profile.priority_of()
    weights: dict[tuple[str, ...], Fraction] = {}
    for ballot in profile.ballots:
        for size in range(1, len(ballot.ranking) + 1):
            key = tuple(sorted(ballot.ranking[:size], key=order.get))
            weights[key] = weights.get(key, ZERO) + ballot.weight
    return weights


def check_solid_coalitions(rule: Rule, profile: Profile, tau: Fraction) -> Violation | None:
    """
    The check_solid_coalitions function makes sure every party set ranked on top by ``tau`` weight
    has a member in the outcome.

    :param rule: Rule: The rule under test
    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :return: A violation naming the unrepresented coalition, or None
    """
    outcome = select(rule, profile, tau)
    coalitions = solid_coalitions(profile)
    if tau == 0:
        # every non-empty set counts at zero threshold, singletons included
        for party in profile.parties:
            coalitions.setdefault((party,), ZERO)
    for coalition, weight in sorted(coalitions.items(), key=lambda item: (len(item[0]), item[0])):
        if weight >= tau and outcome.isdisjoint(coalition):
            return _violation(AxiomId.SOLID_COALITIONS, rule,
                              f"{show(profile, coalition)} is ranked on top by {weight} but none is selected",
                              profile=profile, tau=tau, outcome=outcome, coalition=coalition, before=weight)
    return None


def challenger_support(profile: Profile, outcome: Outcome, challenger: str, unrepresented_only: bool) -> Fraction:
    total = ZERO
    for ballot in profile.ballots:
        representative = best(ballot.ranking, outcome)
        if unrepresented_only and representative is not None:
            continue
        if prefers(ballot.ranking, challenger, representative):
            total += ballot.weight
    return total


def check_local_stability(profile: Profile, tau: Fraction, outcome: Iterable[str],
                          rule: Rule | str = OUTCOME) -> Violation | None:
    """
    The check_local_stability function looks for an outside party preferred to every selected one
    by at least ``tau`` weight.

    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :param outcome: Iterable[str]: The outcome under test
    :param rule: Rule | str: Label for the violation
    :return: A violation naming the challenger, or None
    """
    outcome = frozenset(outcome)
    for party in profile.parties:
        if party in outcome:
            continue
        support = challenger_support(profile, outcome, party, unrepresented_only=False)
        if support >= tau:
            return _violation(AxiomId.LOCAL_STABILITY, rule,
                              f"{support} voters prefer {party} to all of {show(profile, outcome)}",
                              profile=profile, tau=tau, outcome=outcome, party=party, before=support)
    return None


def check_unrepresented(profile: Profile, tau: Fraction, outcome: Iterable[str],
                        rule: Rule | str = OUTCOME) -> Violation | None:
    """
    The check_unrepresented function looks for an outside party ranked by at least ``tau`` weight of
    unrepresented voters.

    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :param outcome: Iterable[str]: The outcome under test
    :param rule: Rule | str: Label for the violation
    :return: A violation naming the party, or None
    """
    outcome = frozenset(outcome)
    for party in profile.parties:
        if party in outcome:
            continue
        support = challenger_support(profile, outcome, party, unrepresented_only=True)
        if support >= tau:
            return _violation(AxiomId.UNREPRESENTED, rule,
                              f"{support} unrepresented voters rank {party} under {show(profile, outcome)}",
                              profile=profile, tau=tau, outcome=outcome, party=party, before=support)
    return None


def check_threshold_monotonicity(rule: Rule, profile: Profile, tau: Fraction,
                                 tau_prime: Fraction) -> Violation | None:
    if tau_prime < tau:
        tau, tau_prime = tau_prime, tau
    outcome = select(rule, profile, tau)
    outcome_prime = select(rule, profile, tau_prime)
    if outcome_prime <= outcome:
        return None
    return _violation(AxiomId.THRESHOLD_MONOTONICITY, rule,
                      f"{show(profile, outcome)} at tau={tau} does not contain "
                      f"{show(profile, outcome_prime)} at tau={tau_prime}",
                      profile=profile, tau=tau, outcome=outcome, tau_prime=tau_prime, outcome_prime=outcome_prime)


def check_idlp(rule: Rule, profile: Profile, tau: Fraction, tau_prime: Fraction) -> Violation | None:
    """
    The check_idlp function compares the outcome at the higher threshold with the outcome on the
    profile restricted to the parties selected at the lower one.

    :param rule: Rule: The rule under test
    :param profile: Profile: The ballots
    :param tau: Fraction: The lower threshold
    :param tau_prime: Fraction: The higher threshold
    :return: A violation with the restricted profile as second witness, or None
    """
    if tau_prime < tau:
        tau, tau_prime = tau_prime, tau
    outcome = select(rule, profile, tau)
    outcome_prime = select(rule, profile, tau_prime)
    reduced = restrict(profile, outcome)
    outcome_reduced = select(rule, reduced, tau_prime)
    if outcome_prime == outcome_reduced:
        return None
    return _violation(AxiomId.IDLP, rule,
                      f"{show(profile, outcome_prime)} at tau={tau_prime} differs from "
                      f"{show(profile, outcome_reduced)} after removing parties outside {show(profile, outcome)}",
                      profile=profile, tau=tau, outcome=outcome, tau_prime=tau_prime,
                      profile_prime=reduced, outcome_prime=outcome_reduced)


def are_clones(profile: Profile, first: str, second: str) -> bool:
    others = [party for party in profile.parties if party not in (first, second)]
    for ballot in profile.ballots:
        ranking = ballot.ranking
        for other in others:
            if prefers(ranking, first, other) != prefers(ranking, second, other):
                return False
            if prefers(ranking, other, first) != prefers(ranking, other, second):
                return False
    return True


def find_clones(profile: Profile) -> set[tuple[str, str]]:
    """
    Every pair of parties that no voter separates, as ``(higher priority, lower priority)`` tuples.

    >>> sorted(find_clones(Profile.build("abc", [(1, "abc")])))
    [('a', 'b'), ('b', 'c')]
    """
    return {(first, second) for first, second in itertools.combinations(profile.parties, 2)
            if are_clones(profile, first, second)}


def check_clone_independence(rule: Rule, profile: Profile, tau: Fraction,
                             pair: tuple[str, str]) -> Violation | None:
    """
    The check_clone_independence function removes either clone and compares outcomes.

    Removing one clone must keep every other party's membership and must select the remaining
    clone exactly when one of the pair was selected before.

    :param rule: Rule: The rule under test
    :param profile: Profile: The ballots, expected to be generic
    :param tau: Fraction: The threshold
    :param pair: tuple[str, str]: Two clone parties
    :return: A violation naming the removed clone, or None
    """
    first, second = pair
    if not are_clones(profile, first, second):
        raise UnsupportedError(messages.NOT_CLONES, f"{first}, {second}")
    outcome = select(rule, profile, tau)
    for kept, removed in ((first, second), (second, first)):
        reduced = restrict(profile, [party for party in profile.parties if party != removed])
        outcome_reduced = select(rule, reduced, tau)
        clone_selected = not outcome.isdisjoint(pair)
        same_others = outcome.difference(pair) == outcome_reduced - {kept}
        if clone_selected != (kept in outcome_reduced) or not same_others:
            return _violation(AxiomId.CLONE_INDEPENDENCE, rule,
                              f"{show(profile, outcome)} becomes {show(reduced, outcome_reduced)} "
                              f"when clone {removed} of {kept} is removed",
                              profile=profile, tau=tau, outcome=outcome, pair=(kept, removed),
                              profile_prime=reduced, outcome_prime=outcome_reduced, party=removed)
    return None


def check_reinforcement(rule: Rule, first: Profile, tau_first: Fraction, second: Profile,
                        tau_second: Fraction) -> Violation | None:
    """
    The check_reinforcement function makes sure a party winning on two profiles also wins on their
    concatenation with the summed threshold.

    :param rule: Rule: The rule under test
    :param first: Profile: The first profile
    :param tau_first: Fraction: Its threshold
    :param second: Profile: The second profile, on the same roster
    :param tau_second: Fraction: Its threshold
    :return: A violation naming the dropped party, or None
    """
    combined = concat(first, second)
    common = select(rule, first, tau_first) & select(rule, second, tau_second)
    if not common:
        return None
    outcome = select(rule, combined, tau_first + tau_second)
    for party in first.parties:
        if party in common and party not in outcome:
            return _violation(AxiomId.REINFORCEMENT, rule,
                              f"{party} wins both parts but not the combined profile, which gives "
                              f"{show(first, outcome)}",
                              profile=first, tau=tau_first, outcome=common, profile_prime=second,
                              tau_prime=tau_second, outcome_prime=outcome, party=party)
    return None


def lifts(ranking: tuple[str, ...], party: str) -> list[tuple[str, ...]]:
    """
    Every ranking obtained by moving ``party`` to a better position, inserting it if unranked.

    >>> lifts(("a", "b", "c"), "c")
    [('c', 'a', 'b'), ('a', 'c', 'b')]
    """
    position = ranking.index(party) if party in ranking else len(ranking) + 1
    rest = tuple(p for p in ranking if p != party)
    return [rest[:index] + (party,) + rest[index:] for index in range(min(position, len(rest) + 1))]


def check_monotonicity(rule: Rule, profile: Profile, tau: Fraction, voter: int,
                       lifted_party: str) -> Violation | None:
    """
    The check_monotonicity function lifts a selected party in one unit of a ballot and makes sure it
    stays selected.

    :param rule: Rule: The rule under test
    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :param voter: int: Index of the ballot to change
    :param lifted_party: str: The party to lift
    :return: A violation with the lifted ballot as report, or None
    """
    outcome = select(rule, profile, tau)
    if lifted_party not in outcome:
        return None
    ballot = profile.ballots[voter]
    for ranking in lifts(ballot.ranking, lifted_party):
        lifted = replace_ballot(profile, voter, ranking)
        outcome_prime = select(rule, lifted, tau)
        if lifted_party not in outcome_prime:
            return _violation(AxiomId.MONOTONICITY, rule,
                              f"lifting {lifted_party} in ballot {voter} to {'>'.join(ranking)} changes "
                              f"{show(profile, outcome)} into {show(profile, outcome_prime)}",
                              profile=profile, tau=tau, outcome=outcome, voter=voter, party=lifted_party,
                              report=ranking, profile_prime=lifted, outcome_prime=outcome_prime)
    return None


def all_reports(parties: tuple[str, ...]) -> list[tuple[str, ...]]:
    """Every truncated ranking over ``parties``, the empty one included."""
    return [report for size in range(len(parties) + 1) for report in itertools.permutations(parties, size)]


class Misreports:
    """
    Outcomes of one voter's possible reports, all other ballots fixed.

    The voter is one unit of weight of ballot ``voter``; outcomes are computed on demand and cached.
    """

    def __init__(self, rule: Rule, profile: Profile, tau: Fraction, voter: int):
        if not 0 <= voter < len(profile.ballots):
            raise UnsupportedError(messages.UNKNOWN_VOTER, str(voter))
        self.rule = rule
        self.profile = profile
        self.tau = tau
        self.voter = voter
        self.truth = profile.ballots[voter].ranking
        self.truthful = select(rule, profile, tau)
        self._cache: dict[tuple[str, ...], tuple[Profile, Outcome]] = {}
        self._statuses: dict[str, PartyStatus] | None = None

    def outcome(self, report: tuple[str, ...]) -> tuple[Profile, Outcome]:
        if report not in self._cache:
            reported = replace_ballot(self.profile, self.voter, report)
            self._cache[report] = reported, select(self.rule, reported, self.tau)
        return self._cache[report]

    def statuses(self) -> dict[str, PartyStatus]:
        if self._statuses is not None:
            return self._statuses
        guard(len(self.profile.roster), config.MISREPORT_MAX_PARTIES)
        parties = self.profile.parties
        counts = {party: 0 for party in parties}
        reports = all_reports(parties)
        for report in reports:
            _, outcome = self.outcome(report)
            for party in outcome:
                counts[party] += 1
        self._statuses = {party: PartyStatus.SAFE if count == len(reports) else
                          PartyStatus.OUT if count == 0 else PartyStatus.RISKY
                          for party, count in counts.items()}
        return self._statuses


def classify_party(rule: Rule, profile: Profile, tau: Fraction, voter: int, party: str) -> PartyStatus:
    """
    The classify_party function tells whether a party is selected under every, some or none of the
    voter's possible reports.

    :param rule: Rule: The rule
    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :param voter: int: Index of the voter's ballot
    :param party: str: The party to classify
    :return: SAFE, RISKY or OUT
    """
    return Misreports(rule, profile, tau, voter).statuses()[party]


def classify_voter(rule: Rule, profile: Profile, tau: Fraction, voter: int) -> dict[str, PartyStatus]:
    return Misreports(rule, profile, tau, voter).statuses()


def risky_parties(rule: Rule, profile: Profile, tau: Fraction, voter: int) -> list[str]:
    return [party for party, status in classify_voter(rule, profile, tau, voter).items()
            if status is PartyStatus.RISKY]


def at_most_one_risky(rule: Rule, profile: Profile, tau: Fraction) -> bool:
    """True if no voter of the profile sees more than one risky party."""
    return all(len(risky_parties(rule, profile, tau, voter)) <= 1 for voter in range(len(profile.ballots)))


def safe_in_top_two(rule: Rule, profile: Profile, tau: Fraction, voter: int) -> bool:
    statuses = classify_voter(rule, profile, tau, voter)
    return any(statuses[party] is PartyStatus.SAFE for party in profile.ballots[voter].ranking[:2])


def check_representative_sp(rule: Rule, profile: Profile, tau: Fraction, voter: int,
                            misreports: Misreports | None = None) -> Violation | None:
    """
    The check_representative_sp function looks for a report that gives the voter a better
    representative according to the voter's true ranking.

    :param rule: Rule: The rule under test
    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :param voter: int: Index of the manipulating voter's ballot
    :param misreports: Misreports | None: Outcome cache to reuse
    :return: A violation with the winning report, or None
    """
    misreports = misreports or Misreports(rule, profile, tau, voter)
    guard(len(profile.roster), config.MISREPORT_MAX_PARTIES)
    truth = misreports.truth
    current = best(truth, misreports.truthful)
    for report in all_reports(profile.parties):
        reported, outcome = misreports.outcome(report)
        better = best(truth, outcome)
        if prefers(truth, better, current):
            return _violation(AxiomId.REP_SP_ONE_RISKY, rule,
                              f"voter {voter} reports {'>'.join(report) or 'nothing'} and is represented by "
                              f"{better} instead of {current or 'nobody'}",
                              profile=profile, tau=tau, outcome=misreports.truthful, voter=voter, report=report,
                              profile_prime=reported, outcome_prime=outcome, party=better)
    return None


def promoted(ranking: tuple[str, ...], party: str) -> tuple[str, ...]:
    return (party,) + tuple(p for p in ranking if p != party)


def check_share_sp(rule: Rule, profile: Profile, tau: Fraction, voter: int,
                   restriction: Restriction = Restriction.NONE,
                   misreports: Misreports | None = None) -> Violation | None:
    """
    The check_share_sp function looks for a report that improves the voter's representative or
    raises the share of the truthful representative.

    ``SAFE_TOP2`` only applies when one of the voter's first two parties is safe.
    ``PROMOTE_REPRESENTATIVE`` only allows the report that moves the truthful representative to
    first place.

    :param rule: Rule: The rule under test
    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :param voter: int: Index of the manipulating voter's ballot
    :param restriction: Restriction: Which reports and profiles are admissible
    :param misreports: Misreports | None: Outcome cache to reuse
    :return: A violation with the winning report and both shares, or None
    """
    restriction = Restriction(restriction)
    misreports = misreports or Misreports(rule, profile, tau, voter)
    truth = misreports.truth
    current = best(truth, misreports.truthful)
    if restriction is Restriction.PROMOTE_REPRESENTATIVE:
        if current is None or truth[0] == current:
            return None
        reports = [promoted(truth, current)]
    else:
        guard(len(profile.roster), config.MISREPORT_MAX_PARTIES)
        if restriction is Restriction.SAFE_TOP2:
            statuses = misreports.statuses()
            if not any(statuses[party] is PartyStatus.SAFE for party in truth[:2]):
                return None
        reports = all_reports(profile.parties)
    share = best_assignment(profile, misreports.truthful).shares.get(current, ZERO) if current else ZERO
    axiom = AxiomId.SHARE_SP_PROMOTE if restriction is Restriction.PROMOTE_REPRESENTATIVE \
        else AxiomId.SHARE_SP_SAFE_TOP2
    for report in reports:
        reported, outcome = misreports.outcome(report)
        better = best(truth, outcome)
        share_prime = best_assignment(reported, outcome).shares.get(current, ZERO) if current else ZERO
        if prefers(truth, better, current) or share_prime > share:
            return _violation(axiom, rule,
                              f"voter {voter} reports {'>'.join(report) or 'nothing'}: representative "
                              f"{current or 'nobody'} -> {better or 'nobody'}, share {share} -> {share_prime}",
                              profile=profile, tau=tau, outcome=misreports.truthful, voter=voter, report=report,
                              profile_prime=reported, outcome_prime=outcome, party=current,
                              restriction=restriction, before=share, after=share_prime)
    return None


def coalition_insurance_fixture(rule: Rule = RuleId.DO) -> Violation:
    """
    The coalition_insurance_fixture function replays a supporter of a safe party voting for an
    allied small party to push it over the threshold.

    Any rule selecting direct winners moves from three to four parties, and the share of the
    parliament the voter likes grows from 5/11 to 7/13.

    :param rule: Rule: A rule selecting all direct winners
    :return: The replay as a violation record
    """
    profile = Profile.build("abcd", [(3, "a"), (3, "b"), (4, "c"), (2, "d"), (1, "cd")])
    voter, report, liked = 4, ("d", "c"), ("c", "d")
    tau = Fraction(3)
    outcome = select(rule, profile, tau)
    reported = replace_ballot(profile, voter, report)
    outcome_prime = select(rule, reported, tau)

    def liked_share(p: Profile, s: Outcome) -> Fraction:
        shares = best_assignment(p, s).shares
        return sum((shares.get(party, ZERO) for party in liked), ZERO)

    before, after = liked_share(profile, outcome), liked_share(reported, outcome_prime)
    return _violation(AxiomId.COALITION_INSURANCE, rule,
                      f"voter {voter} switches to d>c: {show(profile, outcome)} -> {show(profile, outcome_prime)}, "
                      f"liked share {before} -> {after}",
                      profile=profile, tau=tau, outcome=outcome, voter=voter, report=report, profile_prime=reported,
                      outcome_prime=outcome_prime, coalition=liked, before=before, after=after)


def local_stability_profile(voters: int, tau: int) -> Profile:
    """
    A cyclic profile on ``tau + 1`` parties where voter i ranks every party but the i-th, starting
    after it, plus dummy voters ranking only ``d`` to reach ``voters`` ballots.

    >>> [b.ranking for b in local_stability_profile(3, 2).ballots]
    [('c2', 'c3'), ('c3', 'c1'), ('c1', 'c2')]
    """
    size = tau + 1
    cycle = [f"c{index + 1}" for index in range(size)]
    ballots = [(1, tuple(cycle[(index + step) % size] for step in range(1, size))) for index in range(size)]
    dummies = voters - size
    parties = cycle + (["d"] if dummies > 0 else [])
    ballots += [(1, ("d",))] * max(dummies, 0)
    return Profile.build(parties, ballots)


def check_local_stability_impossible(voters: int, tau: int) -> bool:
    """True if no feasible outcome of the cyclic profile is locally stable."""
    profile = local_stability_profile(voters, tau)
    return all(check_local_stability(profile, Fraction(tau), outcome) is not None
               for outcome in enumerate_feasible(profile, Fraction(tau)))


def characterise_do(rule: Rule, profile: Profile, tau: Fraction) -> Violation | None:
    """
    The characterise_do function turns a profile where the rule disagrees with DO into a broken
    axiom: either a direct winner is missing, or a second profile made of direct winners only
    breaks reinforcement.

    :param rule: Rule: A rule returning feasible outcomes
    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :return: The violation, or None when the rule agrees with DO here
    """
    outcome = select(rule, profile, tau)
    scores = first_place_scores(profile)
    direct = frozenset(party for party, score in scores.items() if score >= tau)
    if outcome == direct:
        return None
    violation = check_direct_winners(rule, profile, tau)
    if violation is not None:
        return violation
    party = next(p for p in profile.parties if p in outcome and p not in direct)
    extra = profile.with_ballots(Ballot(ranking=(other,), weight=tau + 1 if other != party else 1)
                                 for other in profile.parties)
    return (check_direct_winners(rule, extra, Fraction(1))
            or check_direct_winners(rule, concat(profile, extra), tau + 1)
            or check_reinforcement(rule, profile, tau, extra, Fraction(1)))


def check(axiom: AxiomId, rule: Rule, profile: Profile, tau: Fraction, *, tau_prime: Fraction | None = None,
          voter: int | None = None, party: str | None = None, pair: tuple[str, str] | None = None,
          second: Profile | None = None, tau_second: Fraction | None = None,
          restriction: Restriction | None = None) -> Violation | None:
    """
    The check function runs one axiom on one input, trying every voter, party, clone pair or higher
    threshold that was not pinned down by the caller.

    :param axiom: AxiomId: The axiom
    :param rule: Rule: The rule under test
    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold
    :return: The first violation found, or None
    """
    axiom = AxiomId(axiom)
    if voter is not None and not 0 <= voter < len(profile.ballots):
        raise UnsupportedError(messages.UNKNOWN_VOTER, str(voter))
    voters = [voter] if voter is not None else range(len(profile.ballots))
    if axiom is AxiomId.SET_MAXIMALITY:
        return check_set_maximality(rule, profile, tau)
    if axiom is AxiomId.WEAK_EFFICIENCY:
        return check_weak_efficiency(rule, profile, tau)
    if axiom is AxiomId.DIRECT_WINNERS:
        return check_direct_winners(rule, profile, tau)
    if axiom is AxiomId.SOLID_COALITIONS:
        return check_solid_coalitions(rule, profile, tau)
    if axiom is AxiomId.LOCAL_STABILITY:
        return check_local_stability(profile, tau, select(rule, profile, tau), rule)
    if axiom is AxiomId.UNREPRESENTED:
        return check_unrepresented(profile, tau, select(rule, profile, tau), rule)
    if axiom in (AxiomId.THRESHOLD_MONOTONICITY, AxiomId.IDLP):
        checker = check_threshold_monotonicity if axiom is AxiomId.THRESHOLD_MONOTONICITY else check_idlp
        if tau_prime is not None:
            return checker(rule, profile, tau, tau_prime)
        top = profile.total_weight
        grid = sorted({tau, top} | {Fraction(value) for value in range(int(tau) + 1, int(top) + 1)})
        return next((v for v in (checker(rule, profile, tau, t) for t in grid if t >= tau) if v), None)
    if axiom is AxiomId.CLONE_INDEPENDENCE:
        pairs = [pair] if pair is not None else sorted(find_clones(profile))
        return next((v for v in (check_clone_independence(rule, profile, tau, p) for p in pairs) if v), None)
    if axiom is AxiomId.REINFORCEMENT:
        if second is None or tau_second is None:
            raise UnsupportedError(messages.UNSUPPORTED_AXIOM, axiom.value)
        return check_reinforcement(rule, profile, tau, second, tau_second)
    if axiom is AxiomId.MONOTONICITY:
        parties = [party] if party is not None else list(profile.parties)
        return next((v for v in (check_monotonicity(rule, profile, tau, i, c) for i in voters for c in parties)
                     if v), None)
    if axiom is AxiomId.REP_SP_ONE_RISKY:
        everyone = [Misreports(rule, profile, tau, i) for i in range(len(profile.ballots))]
        if any(sum(status is PartyStatus.RISKY for status in m.statuses().values()) > 1 for m in everyone):
            return None
        return next((v for v in (check_representative_sp(rule, profile, tau, i, everyone[i]) for i in voters)
                     if v), None)
    if axiom in (AxiomId.SHARE_SP_SAFE_TOP2, AxiomId.SHARE_SP_PROMOTE):
        if restriction is None:
            restriction = Restriction.SAFE_TOP2 if axiom is AxiomId.SHARE_SP_SAFE_TOP2 \
                else Restriction.PROMOTE_REPRESENTATIVE
        return next((v for v in (check_share_sp(rule, profile, tau, i, restriction) for i in voters) if v), None)
    if axiom is AxiomId.COALITION_INSURANCE:
        return coalition_insurance_fixture(rule)
    raise UnsupportedError(messages.UNSUPPORTED_AXIOM, axiom.value)


def replay(violation: Violation, rule: Rule | None = None) -> Violation | None:
    """
    Re-run the check that produced ``violation`` on its own witness.

    ``rule`` is needed when the violation came from a rule that is not registered by id.
    """
    w = violation.witness
    axiom = violation.axiom
    if violation.rule == OUTCOME:
        if axiom is AxiomId.LOCAL_STABILITY:
            return check_local_stability(w.profile, w.tau, w.outcome)
        return check_unrepresented(w.profile, w.tau, w.outcome)
    rule = rule if rule is not None else RuleId(violation.rule)
    if axiom is AxiomId.MONOTONICITY:
        return check_monotonicity(rule, w.profile, w.tau, w.voter, w.party)
    if axiom is AxiomId.REINFORCEMENT:
        return check_reinforcement(rule, w.profile, w.tau, w.profile_prime, w.tau_prime)
    if axiom is AxiomId.REP_SP_ONE_RISKY:
        return check_representative_sp(rule, w.profile, w.tau, w.voter)
    if axiom in (AxiomId.SHARE_SP_SAFE_TOP2, AxiomId.SHARE_SP_PROMOTE):
        return check_share_sp(rule, w.profile, w.tau, w.voter, w.restriction)
    return check(axiom, rule, w.profile, w.tau, tau_prime=w.tau_prime, pair=w.pair)
