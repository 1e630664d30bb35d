"""
Profile documents.

Lines starting with ``#`` are comments, except headers ``#! parties: a,b,c`` (listing order is
priority order) and ``#! tau: 5`` or ``#! tau: 5%``. Every other non-blank line is a ballot
``<weight>: p1>p2>...``; the weight is optional and defaults to 1.
"""
import logging
from fractions import Fraction

from pydantic import ValidationError

from src.conf import messages
from src.entity.exceptions import InvalidProfileError, InvalidThresholdError
from src.entity.models import Ballot, Party, Profile, Threshold, to_fraction
from src.schemas.profile import ProfileDocument

logger = logging.getLogger(__name__)

HEADER = "#!"


def _parse_weight(token: str, line: int, column: int) -> Fraction:
    try:
        weight = to_fraction(token)
    except (ValueError, ZeroDivisionError):
        raise InvalidProfileError(messages.MALFORMED_WEIGHT, repr(token.strip()), line, column)
    if weight < 0:
        raise InvalidProfileError(messages.NEGATIVE_WEIGHT, repr(token.strip()), line, column)
    return weight


def _parse_header(body: str, line: int, document: dict) -> None:
    key, sep, value = body.partition(":")
    key = key.strip().lower()
    if not sep or key not in ("parties", "tau"):
        raise InvalidProfileError(messages.MALFORMED_HEADER, repr(body.strip()), line)
    if key == "parties":
        parties = [party.strip() for party in value.split(",") if party.strip()]
        if len(set(parties)) != len(parties):
            raise InvalidProfileError(messages.DUPLICATE_ROSTER, value.strip(), line)
        document["parties"] = parties
    else:
        try:
            document["tau"] = Threshold.parse(value)
        except (ValueError, ZeroDivisionError, ValidationError):
            raise InvalidProfileError(messages.MALFORMED_THRESHOLD, repr(value.strip()), line)


def parse_profile_document(text: str) -> ProfileDocument:
    """
    The parse_profile_document function reads a profile document with its optional default threshold.

    Without a ``parties`` header the roster is every ranked party in order of first appearance.

    :param text: str: The document
    :return: The profile and the threshold from the header, if any
    """
    document: dict = {"parties": None, "tau": None}
    ballots: list[tuple[int, Fraction, tuple[str, ...]]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith(HEADER):
            _parse_header(stripped[len(HEADER):], number, document)
            continue
        if stripped.startswith("#"):
            continue
        offset = len(raw) - len(raw.lstrip())
        head, sep, rest = raw.partition(":")
        if sep:
            weight = _parse_weight(head, number, offset + 1)
            column = len(head) + 2
        else:
            weight, rest, column = Fraction(1), raw, 1
        ranking = []
        for token in rest.split(">"):
            party = token.strip()
            if not party:
                if rest.strip():
                    raise InvalidProfileError(messages.MALFORMED_LINE, repr(stripped), number, column)
            elif party in ranking:
                raise InvalidProfileError(messages.DUPLICATE_PARTY, party, number, column)
            else:
                ranking.append(party)
            column += len(token) + 1
        ballots.append((number, weight, tuple(ranking)))

    parties = document["parties"]
    if parties is None:
        parties = list(dict.fromkeys(party for _, _, ranking in ballots for party in ranking))
    known = set(parties)
    for number, _, ranking in ballots:
        unknown = [party for party in ranking if party not in known]
        if unknown:
            raise InvalidProfileError(messages.UNKNOWN_PARTY, unknown[0], number)
    profile = Profile(roster=tuple(Party(id=party, priority=index) for index, party in enumerate(parties)),
                      ballots=tuple(Ballot(ranking=ranking, weight=weight) for _, weight, ranking in ballots))
    logger.debug("parsed profile with %d parties and %d ballots", len(parties), len(ballots))
    return ProfileDocument(profile=profile, tau=document["tau"])


def parse_profile(text: str) -> Profile:
    """
    Parse a profile document, ignoring its threshold header.

    >>> parse_profile("#! parties: a,b\\n2.5: a>b\\n").ballots[0].weight
    Fraction(5, 2)
    """
    return parse_profile_document(text).profile


def resolve_tau(document: ProfileDocument, override: str | None = None) -> Fraction:
    """
    The resolve_tau function turns the command line threshold, or the document's own, into a weight.

    Percentages resolve against the profile's total weight.

    :param document: ProfileDocument: The parsed document
    :param override: str | None: Threshold text given by the caller
    :return: The absolute threshold
    """
    if override is not None:
        try:
            threshold = Threshold.parse(override)
        except (ValueError, ZeroDivisionError, ValidationError):
            raise InvalidThresholdError(messages.MALFORMED_THRESHOLD, repr(override))
    elif document.tau is not None:
        threshold = document.tau
    else:
        raise InvalidThresholdError(messages.MALFORMED_THRESHOLD, "no threshold given")
    return threshold.resolve(document.profile.total_weight)


def format_weight(weight: Fraction) -> str:
    return str(weight.numerator) if weight.denominator == 1 else f"{weight.numerator}/{weight.denominator}"


def write_profile(profile: Profile, tau: Threshold | None = None) -> str:
    """
    The write_profile function renders a profile in the document format read by :func:`parse_profile_document`.

    :param profile: Profile: The profile to write
    :param tau: Threshold | None: Threshold header to include
    :return: The document text
    """
    lines = [f"{HEADER} parties: {','.join(profile.parties)}"]
    if tau is not None:
        lines.append(f"{HEADER} tau: {tau}")
    for ballot in profile.ballots:
        lines.append(f"{format_weight(ballot.weight)}: {'>'.join(ballot.ranking)}".rstrip())
    return "\n".join(lines) + "\n"
