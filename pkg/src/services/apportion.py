import logging
from fractions import Fraction
from typing import Mapping

from src.conf import messages
from src.entity.exceptions import ApportionmentError
from src.entity.models import RuleResult, SeatAllocation

logger = logging.getLogger(__name__)


def dhondt(scores: Mapping[str, Fraction], house_size: int) -> SeatAllocation:
    """
    The dhondt function hands out seats one by one to the party with the highest quotient
    score / (seats won + 1).

    Quotients are exact rationals. Equal quotients go to the party listed first in ``scores``,
    so callers pass scores in priority order.

    :param scores: Mapping[str, Fraction]: Score of each party, in priority order
    :param house_size: int: Number of seats
    :return: The seat count of every party

    >>> dhondt({"Red": 36, "Blue": 29, "Brown": 35}, 10).seats
    {'Red': 4, 'Blue': 3, 'Brown': 3}
    """
    if house_size < 1:
        raise ApportionmentError(messages.APPORTION_HOUSE_SIZE, str(house_size))
    scores = {party: Fraction(score) for party, score in scores.items()}
    if not any(score > 0 for score in scores.values()):
        raise ApportionmentError(messages.APPORTION_NO_SCORES)
    seats = {party: 0 for party in scores}
    for _ in range(house_size):
        winner = max(scores, key=lambda party: scores[party] / (seats[party] + 1))
        seats[winner] += 1
    logger.debug("D'Hondt over %d seats: %s", house_size, seats)
    return SeatAllocation(seats=seats, house_size=house_size)


def seats_for_result(result: RuleResult, house_size: int) -> SeatAllocation:
    """
    Apportion ``house_size`` seats among the selected parties of a rule result by their scores.

    :param result: RuleResult: A rule result with a non-empty outcome
    :param house_size: int: Number of seats
    :return: The seat allocation
    """
    if not result.outcome:
        raise ApportionmentError(messages.APPORTION_EMPTY_OUTCOME)
    return dhondt(result.assignment.scores, house_size)
