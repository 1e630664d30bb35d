from fractions import Fraction
from typing import Callable, Union

from src.entity.models import Outcome, Profile, RuleId, RuleResult
from src.services.augment import run_augmented
from src.services.core import check_tau
from src.services.optrules import run_maxp, run_maxr
from src.services.rules import run_do, run_gp, run_stv, run_uninominal

RuleFn = Callable[[Profile, Fraction], Outcome]
Rule = Union[RuleId, RuleFn]

RULES: dict[RuleId, Callable[[Profile, Fraction], RuleResult]] = {
    RuleId.DO: run_do,
    RuleId.STV: run_stv,
    RuleId.GP: run_gp,
    RuleId.UNINOMINAL: run_uninominal,
    RuleId.MAXP: run_maxp,
    RuleId.MAXR: run_maxr,
    RuleId.DO_PLUS: lambda profile, tau: run_augmented(RuleId.DO_PLUS, profile, tau),
    RuleId.STV_PLUS: lambda profile, tau: run_augmented(RuleId.STV_PLUS, profile, tau),
    RuleId.GP_PLUS: lambda profile, tau: run_augmented(RuleId.GP_PLUS, profile, tau),
}


def run_rule(rule: RuleId | str, profile: Profile, tau: Fraction) -> RuleResult:
    """
    The run_rule function validates the threshold and runs a rule by its id.

    :param rule: RuleId | str: The rule to run
    :param profile: Profile: The ballots
    :param tau: Fraction: The threshold, between 0 and the total weight
    :return: The rule result
    """
    tau = check_tau(profile, tau)
    return RULES[RuleId(rule)](profile, tau)


def select(rule: Rule, profile: Profile, tau: Fraction) -> Outcome:
    """Outcome of a registered rule or of any callable mapping (profile, tau) to an outcome."""
    if isinstance(rule, str):
        return RULES[RuleId(rule)](profile, Fraction(tau)).outcome
    return frozenset(rule(profile, Fraction(tau)))


def rule_name(rule: Rule) -> str:
    if isinstance(rule, str):
        return RuleId(rule).value
    return getattr(rule, "__name__", repr(rule))
