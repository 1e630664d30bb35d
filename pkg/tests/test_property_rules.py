from fractions import Fraction

from hypothesis import given, settings, strategies as st

from src.entity.models import Profile, RuleId
from src.services.apportion import dhondt
from src.services.axioms import check_unrepresented
from src.services.core import is_feasible, represented_weight, subsets
from src.services.experiments import rank_distribution, unrepresented_share
from src.services.optrules import maxp_objective
from src.services.registry import select
from src.services.rules import run_parallel_universe

ROSTER = "abcd"
FEASIBLE = (RuleId.DO, RuleId.STV, RuleId.GP, RuleId.MAXP, RuleId.MAXR, RuleId.DO_PLUS, RuleId.STV_PLUS,
            RuleId.GP_PLUS)
SCORES = st.dictionaries(st.sampled_from(ROSTER), st.integers(0, 50), min_size=1).filter(lambda s: any(s.values()))


@st.composite
def instances(draw):
    roster = ROSTER[:draw(st.integers(1, len(ROSTER)))]
    rankings = st.permutations(roster).flatmap(lambda order: st.integers(0, len(order)).map(lambda k: order[:k]))
    ballots = draw(st.lists(st.tuples(st.integers(1, 4), rankings), max_size=6))
    profile = Profile.build(roster, ballots)
    tau = Fraction(draw(st.integers(0, int(profile.total_weight))))
    return profile, tau


@settings(max_examples=60, deadline=None)
@given(instances())
def test_outcomes_are_feasible(instance):
    profile, tau = instance
    for rule in FEASIBLE:
        assert is_feasible(profile, select(rule, profile, tau), tau), rule


@settings(max_examples=60, deadline=None)
@given(instances())
def test_stv_keeps_direct_winners(instance):
    profile, tau = instance
    assert select(RuleId.DO, profile, tau) <= select(RuleId.STV, profile, tau)


@settings(max_examples=60, deadline=None)
@given(instances())
def test_gp_keeps_direct_winners(instance):
    profile, tau = instance
    assert select(RuleId.DO, profile, tau) <= select(RuleId.GP, profile, tau)


@settings(max_examples=60, deadline=None)
@given(instances())
def test_resolute_outcome_is_one_of_the_universes(instance):
    profile, tau = instance
    for rule in (RuleId.STV, RuleId.GP):
        assert select(rule, profile, tau) in run_parallel_universe(rule, profile, tau), rule


@settings(max_examples=60, deadline=None)
@given(instances())
def test_augmented_rules_leave_nobody_stranded(instance):
    profile, tau = instance
    for rule in (RuleId.DO_PLUS, RuleId.STV_PLUS, RuleId.GP_PLUS):
        assert check_unrepresented(profile, tau, select(rule, profile, tau)) is None, rule


@settings(max_examples=60, deadline=None)
@given(instances())
def test_optimal_rules_beat_greedy_ones(instance):
    profile, tau = instance
    assert represented_weight(profile, select(RuleId.MAXR, profile, tau)) >= \
        represented_weight(profile, select(RuleId.STV, profile, tau))
    assert maxp_objective(profile, select(RuleId.MAXP, profile, tau)) >= \
        maxp_objective(profile, select(RuleId.GP, profile, tau))


@settings(max_examples=60, deadline=None)
@given(instances())
def test_rank_distribution_adds_up(instance):
    profile, tau = instance
    if profile.total_weight == 0:
        return
    for rule in (RuleId.DO, RuleId.STV):
        shares = rank_distribution(profile, rule, tau)
        assert sum(shares.values(), Fraction(0)) + unrepresented_share(profile, rule, tau) == 1


@settings(max_examples=60, deadline=None)
@given(instances())
def test_feasibility_closed_under_subsets(instance):
    profile, tau = instance
    outcome = select(RuleId.GP, profile, tau)
    for subset in subsets(tuple(sorted(outcome))):
        assert is_feasible(profile, subset, tau)


@given(SCORES, st.integers(1, 30))
def test_dhondt_hands_out_every_seat(scores, house_size):
    allocation = dhondt(scores, house_size)
    assert sum(allocation.seats.values()) == house_size
    assert all(allocation.seats[party] == 0 for party, score in scores.items() if score == 0)


@given(SCORES, st.integers(1, 30))
def test_dhondt_house_monotone(scores, house_size):
    smaller = dhondt(scores, house_size).seats
    larger = dhondt(scores, house_size + 1).seats
    assert all(larger[party] >= seats for party, seats in smaller.items())


@given(SCORES, st.integers(1, 30), st.fractions(min_value=Fraction(1, 10), max_value=10))
def test_dhondt_scale_invariant(scores, house_size, factor):
    scaled = {party: score * factor for party, score in scores.items()}
    assert dhondt(scaled, house_size).seats == dhondt(scores, house_size).seats
