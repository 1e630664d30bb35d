"""Runs shared by the command line and the HTTP surface: text in, report out."""
import logging

from src.entity.models import AxiomId, Restriction, RuleId, Violation
from src.repository.profiles import parse_profile_document, resolve_tau
from src.repository.reports import result_report
from src.schemas.report import ReportDocument
from src.services.apportion import seats_for_result
from src.services.axioms import check
from src.services.registry import run_rule
from src.services.rules import run_parallel_universe

logger = logging.getLogger(__name__)


def compute(document_text: str, rule: RuleId, tau: str | None = None, parallel_universe: bool = False,
            seats: int | None = None) -> ReportDocument:
    """
    The compute function runs one rule on a profile document.

    :param document_text: str: The profile document
    :param rule: RuleId: The rule to run
    :param tau: str | None: Threshold overriding the document's own, absolute or in percent
    :param parallel_universe: bool: Also list every outcome reachable under tie-breaking (STV and GP)
    :param seats: int | None: House size to apportion among the selected parties
    :return: The report
    """
    document = parse_profile_document(document_text)
    profile = document.profile
    threshold = resolve_tau(document, tau)
    rule = RuleId(rule)
    result = run_rule(rule, profile, threshold)
    universes = run_parallel_universe(rule, profile, threshold) if parallel_universe else None
    allocation = seats_for_result(result, seats) if seats else None
    logger.info("%s at tau=%s selects %s", rule.value, threshold, sorted(result.outcome))
    return result_report(result, profile.parties, meta={"parties": len(profile.parties),
                                                        "ballots": len(profile.ballots)},
                         seats=allocation, universes=universes)


def check_document(document_text: str, rule: RuleId, axiom: AxiomId, tau: str | None = None,
                   tau_prime: str | None = None, voter: int | None = None, party: str | None = None,
                   restriction: Restriction | None = None) -> Violation | None:
    """
    The check_document function checks an axiom on a profile document.

    :param document_text: str: The profile document
    :param rule: RuleId: The rule under test
    :param axiom: AxiomId: The axiom
    :param tau: str | None: Threshold overriding the document's own
    :param tau_prime: str | None: Second threshold, for threshold monotonicity and IDLP
    :param voter: int | None: Ballot index to examine; all ballots when omitted
    :param party: str | None: Party to lift, for monotonicity
    :param restriction: Restriction | None: Allowed misreports, for share strategyproofness
    :return: The violation found, or None
    """
    document = parse_profile_document(document_text)
    threshold = resolve_tau(document, tau)
    options = {"voter": voter, "party": party, "restriction": restriction}
    if tau_prime is not None:
        options["tau_prime"] = resolve_tau(document, tau_prime)
    return check(AxiomId(axiom), RuleId(rule), document.profile, threshold, **options)
