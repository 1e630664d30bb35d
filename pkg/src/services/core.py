"""
Representation functions of a profile: who represents whom under an outcome, supporter scores,
feasibility, and the profile transformations the rules and axioms are defined through.
"""
import itertools
from fractions import Fraction
from typing import Iterable

from src.conf import messages
from src.conf.config import config
from src.entity.exceptions import InvalidProfileError, InvalidThresholdError, RosterMismatchError, guard
from src.entity.models import Assignment, Ballot, Outcome, Party, Profile

ZERO = Fraction(0)


def check_outcome(profile: Profile, outcome: Iterable[str]) -> Outcome:
    """
    The check_outcome function makes sure every party of an outcome is on the profile's roster.

    :param profile: Profile: The profile the outcome belongs to
    :param outcome: Iterable[str]: Party ids
    :return: The outcome as a frozenset
    """
    outcome = frozenset(outcome)
    unknown = outcome.difference(profile.parties)
    if unknown:
        raise RosterMismatchError(messages.UNKNOWN_PARTY, ", ".join(sorted(unknown)))
    return outcome


def check_tau(profile: Profile, tau: Fraction) -> Fraction:
    tau = Fraction(tau)
    if tau < 0 or tau > profile.total_weight:
        raise InvalidThresholdError(messages.INVALID_THRESHOLD, f"tau={tau}, total={profile.total_weight}")
    return tau


def best(ranking: tuple[str, ...], outcome: Outcome) -> str | None:
    """
    Most-preferred party of a ranking inside ``outcome``, or None.

    >>> best(("c", "b", "a"), frozenset("ab"))
    'b'
    """
    for party in ranking:
        if party in outcome:
            return party
    return None


def rank_of(ranking: tuple[str, ...], party: str | None) -> int | None:
    """1-based position of ``party`` in the ranking, None when unranked."""
    if party is None or party not in ranking:
        return None
    return ranking.index(party) + 1


def prefers(ranking: tuple[str, ...], first: str | None, second: str | None) -> bool:
    """
    True if ``first`` is strictly preferred to ``second``. Unranked parties (and None) sit
    below every ranked party and are incomparable to each other.

    >>> prefers(("a",), "a", "b"), prefers(("a",), "b", "c"), prefers(("a", "b"), "b", "a")
    (True, False, False)
    """
    if first is None or first not in ranking:
        return False
    if second is None or second not in ranking:
        return True
    return ranking.index(first) < ranking.index(second)


def supporter_scores(profile: Profile, outcome: Outcome) -> dict[str, Fraction]:
    """score_S(c) for every c in the outcome, in priority order."""
    scores = {party: ZERO for party in profile.parties if party in outcome}
    for ballot in profile.ballots:
        party = best(ballot.ranking, outcome)
        if party is not None:
            scores[party] += ballot.weight
    return scores


def plurality_scores(profile: Profile, among: Iterable[str] | None = None) -> dict[str, Fraction]:
    """First-place weight of every party of ``among`` (default: the roster) on the restricted profile."""
    among = frozenset(profile.parties if among is None else among)
    return supporter_scores(profile, among)


def first_place_scores(profile: Profile) -> dict[str, Fraction]:
    """First-place weight on the full profile."""
    scores = {party: ZERO for party in profile.parties}
    for ballot in profile.ballots:
        if ballot.ranking:
            scores[ballot.ranking[0]] += ballot.weight
    return scores


def make_assignment(profile: Profile, representative: list[str | None], scores: dict[str, Fraction]) -> Assignment:
    represented = sum(scores.values(), ZERO)
    if represented > 0:
        shares = {party: score / represented for party, score in scores.items()}
    else:
        shares = {party: ZERO for party in scores}
    return Assignment(representative=tuple(representative), scores=scores, shares=shares,
                      unrepresented=profile.total_weight - represented)


def best_assignment(profile: Profile, outcome: Iterable[str]) -> Assignment:
    """
    The best_assignment function maps every ballot to its most-preferred selected party.

    Scores count the weight each selected party represents; shares are those scores over the
    represented weight.

    :param profile: Profile: The ballots to assign
    :param outcome: Iterable[str]: The selected parties
    :return: The assignment with per-ballot representatives, scores and shares
    """
    outcome = check_outcome(profile, outcome)
    representative = [best(ballot.ranking, outcome) for ballot in profile.ballots]
    scores = {party: ZERO for party in profile.parties if party in outcome}
    for ballot, party in zip(profile.ballots, representative):
        if party is not None:
            scores[party] += ballot.weight
    return make_assignment(profile, representative, scores)


def is_feasible(profile: Profile, outcome: Iterable[str], tau: Fraction) -> bool:
    """
    True iff every selected party represents at least ``tau`` weight.

    >>> p = Profile.build("ab", [(2, "a"), (1, "ba")])
    >>> is_feasible(p, {"a", "b"}, 2), is_feasible(p, {"a", "b"}, 1), is_feasible(p, set(), 3)
    (False, True, True)
    """
    outcome = frozenset(outcome)
    return all(score >= tau for score in supporter_scores(profile, outcome).values())


def restrict(profile: Profile, keep: Iterable[str]) -> Profile:
    """
    The restrict function deletes every party outside ``keep``.

    Rankings keep their order, weights are unchanged and the remaining parties keep their relative
    priority.

    :param profile: Profile: The profile to restrict
    :param keep: Iterable[str]: The parties that stay
    :return: The restricted profile
    """
    keep = check_outcome(profile, keep)
    order = [party for party in profile.parties if party in keep]
    roster = tuple(Party(id=party, priority=index) for index, party in enumerate(order))
    ballots = tuple(ballot.model_copy(update={"ranking": tuple(p for p in ballot.ranking if p in keep)})
                    for ballot in profile.ballots)
    return Profile.model_construct(roster=roster, ballots=ballots)


def truncate(profile: Profile, k: int) -> Profile:
    """
    Cut every ranking to its first ``k`` entries.

    >>> truncate(Profile.build("abc", [(1, "abc")]), 2).ballots[0].ranking
    ('a', 'b')
    """
    if k < 1:
        raise InvalidProfileError(messages.INVALID_TRUNCATION, f"k={k}")
    return profile.with_ballots(ballot.model_copy(update={"ranking": ballot.ranking[:k]})
                                for ballot in profile.ballots)


def concat(first: Profile, second: Profile) -> Profile:
    """
    The concat function appends the ballots of ``second`` to those of ``first``.

    :param first: Profile: Ballots that come first
    :param second: Profile: Ballots appended after them
    :return: The combined profile
    """
    if first.priority_of() != second.priority_of():
        raise RosterMismatchError(messages.ROSTER_MISMATCH)
    return first.with_ballots(first.ballots + second.ballots)


def subsets(parties: tuple[str, ...], min_size: int = 0) -> Iterable[Outcome]:
    for size in range(min_size, len(parties) + 1):
        for combo in itertools.combinations(parties, size):
            yield frozenset(combo)


def plurality_losers(scores: dict[str, Fraction]) -> list[str]:
    low = min(scores.values())
    return [party for party, score in scores.items() if score == low]


def is_generic(profile: Profile) -> bool:
    """
    The is_generic function tells whether every restriction of the profile has a unique plurality loser.

    :param profile: Profile: The profile to inspect
    :return: True when no restriction to a non-empty party set has tied plurality losers
    """
    parties = profile.parties
    guard(len(parties), config.GENERIC_MAX_PARTIES)
    for subset in subsets(parties, min_size=2):
        if len(plurality_losers(supporter_scores(profile, subset))) > 1:
            return False
    return True


def represented_weight(profile: Profile, outcome: Outcome) -> Fraction:
    return sum((ballot.weight for ballot in profile.ballots if best(ballot.ranking, outcome) is not None), ZERO)


def replace_ballot(profile: Profile, index: int, ranking: tuple[str, ...]) -> Profile:
    """
    Let one unit of weight of ballot ``index`` report ``ranking`` instead.

    The rest of the ballot's weight, if any, stays with its original ranking right after it.
    """
    ballot = profile.ballots[index]
    unit = min(Fraction(1), ballot.weight)
    replaced = [Ballot.model_construct(ranking=ranking, weight=unit, group=ballot.group)]
    if ballot.weight > unit:
        replaced.append(ballot.model_copy(update={"weight": ballot.weight - unit}))
    return profile.with_ballots(profile.ballots[:index] + tuple(replaced) + profile.ballots[index + 1:])
