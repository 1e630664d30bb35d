"""
Worked example profiles and stored counterexamples.

Every document carries its threshold in a ``#! tau`` header, so a fixture is replayed by parsing
its document and handing the profile and threshold to the matching check.
"""
from src.entity.models import AxiomId, Restriction, RuleId
from src.repository.profiles import parse_profile_document
from src.schemas.axiom import StoredCounterexample
from src.schemas.profile import ProfileDocument

THREE_BLOCKS = """\
# d is the only direct winner; STV and MaxR add b, GP and MaxP add a
#! parties: a,b,c,d
#! tau: 5
4: a>b>c
3: b>c
2: c>b>a
2: d
4: d>b
"""

FIVE_PARTIES = """\
#! parties: Red,Green,Pink,Blue,Brown
#! tau: 15
8: Red>Pink>Green
6: Green>Pink>Red
5: Pink>Green>Red
7: Red>Green>Pink
5: Green>Red>Pink
5: Pink>Red>Green
10: Blue>Pink
35: Brown>Blue
4: Pink>Blue>Green
15: Blue>Brown
"""

LOST_VOTES = """\
#! parties: a,b,c
#! tau: 100
100: a
100: b
99: c>b
"""

EMPTY_UNDER_DO = """\
#! parties: b,c
#! tau: 3
2: b>c
1: c
"""

SOLID_PAIR = """\
#! parties: a,b,c
#! tau: 5
4: a>b>c
3: b>c>a
2: c>b>a
"""

LATE_DIRECT_WINNER = """\
#! parties: a,b
#! tau: 3
3: a
2: b>a
"""

CLONED = """\
# d is a clone of c
#! parties: a,c,d
#! tau: 7
6: a
4: d>c>a
3: c>d>a
"""

LONE_MANIPULATOR = """\
#! parties: a,b,c
#! tau: 2
1: b>a
1: a>c
"""

STRANDED = """\
#! parties: a,b,c
#! tau: 3
3: a
2: b>c
1: c
"""

# all four are direct winners at tau 1, b by a single ballot
B_APART = """\
#! parties: a,b,c,d
#! tau: 1
6: a
1: b
6: c
6: d
"""

A_APART = """\
#! parties: a,b,c,d
#! tau: 1
1: a
6: b
6: c
6: d
"""

STV_LIFT = """\
#! parties: a,b,c,d
#! tau: 13
5: a>c
6: c
13: d
4: b>a
2: b>c
"""

# every voter sees one risky party at most; a p>x>r voter gets x by reporting x first
STV_RISKY = """\
#! parties: r,x,p,q
#! tau: 8
20: r
5: x>r
4: p>x>r
3: q>p>r
"""

SAFE_TOP_TWO = """\
#! parties: a,b,c
#! tau: 4
1: a>b
5: a
3: b>c
3: c>a
"""

# same ballots, c ahead of b so that STV eliminates b on their tie
SAFE_TOP_TWO_STV = SAFE_TOP_TWO.replace("#! parties: a,b,c", "#! parties: a,c,b")

PROMOTE_STV = """\
#! parties: a,b,c,d
#! tau: 10
10: b
4: c>d
3: d>c
2: d>b
3: a>c>d
1: a>b>c>d
"""

THRESHOLD_SWAP = """\
#! parties: a,b
#! tau: 3
3: a>b
2: b
"""

GP_LIFT = """\
#! parties: a,b,c
#! tau: 7
5: a>c
2: a>b>c
6: c>b
2: b
"""

GP_RISKY = """\
#! parties: a,b,x,y,z,w
#! tau: 4
1: b>a
1: x>b>a
1: y>b>a
1: z>b
1: w>b
3: a
"""

GP_PROMOTE = """\
#! parties: a,b,x,y,z
#! tau: 3
1: b>a
1: x>b>a
1: y>b>a
1: z>b>a
2: a
"""

GP_STRANDED = """\
#! parties: a,b,c,d
#! tau: 4
3: a
2: b>a
2: c>b
2: d>b
"""

OPTIMUM_SKIPS_WINNER = """\
#! parties: a,b,c
#! tau: 4
2: a>b
2: a>c
3: c
3: b
"""

OPTIMUM_SHRINKS = """\
#! parties: a,b,c
#! tau: 5
5: a
1: a>b
1: a>c
4: b
4: c
"""

OPTIMUM_LIFT = """\
#! parties: a,b,c
#! tau: 9
5: b
1: b>c
5: c
1: c>b
3: a>b
3: a>c
4: a
"""

MAXR_STRANDED = """\
#! parties: x,y,c
#! tau: 2
1: c>x
1: x
1: c>y
1: y
2: c
"""

STV_PLUS_COALITION = """\
#! parties: x,y,c,w,v
#! tau: 6
3: x>y>c
3: y>x>c
2: x
2: y
2: c>x
2: c>y
5: w>c
5: v>c
"""

EXAMPLES = {
    "three_blocks": THREE_BLOCKS,
    "five_parties": FIVE_PARTIES,
    "lost_votes": LOST_VOTES,
}


def _cells(name: str, rules: tuple[RuleId, ...], axiom: AxiomId, document: str,
           **options) -> list[StoredCounterexample]:
    return [StoredCounterexample(name=f"{rule.value}_{name}", rule=rule, axiom=axiom, document=document, **options)
            for rule in rules]


DO, STV, GP = RuleId.DO, RuleId.STV, RuleId.GP
MAXP, MAXR = RuleId.MAXP, RuleId.MAXR

COUNTEREXAMPLES: list[StoredCounterexample] = [
    *_cells("set_maximality", (DO, STV), AxiomId.SET_MAXIMALITY, EMPTY_UNDER_DO),
    *_cells("weak_efficiency", (DO, STV), AxiomId.WEAK_EFFICIENCY, EMPTY_UNDER_DO),
    *_cells("solid_coalitions", (DO, GP, MAXP, MAXR, RuleId.DO_PLUS, RuleId.GP_PLUS), AxiomId.SOLID_COALITIONS,
            SOLID_PAIR),
    *_cells("solid_coalitions", (RuleId.STV_PLUS,), AxiomId.SOLID_COALITIONS, STV_PLUS_COALITION),
    *_cells("idlp", (DO,), AxiomId.IDLP, LATE_DIRECT_WINNER, tau_prime="5"),
    *_cells("idlp", (GP,), AxiomId.IDLP, THRESHOLD_SWAP, tau_prime="4"),
    *_cells("clone_independence", (DO, GP, MAXP), AxiomId.CLONE_INDEPENDENCE, CLONED, pair=("c", "d")),
    *_cells("rep_sp_one_risky", (DO,), AxiomId.REP_SP_ONE_RISKY, LONE_MANIPULATOR, voter=0),
    *_cells("rep_sp_one_risky", (STV,), AxiomId.REP_SP_ONE_RISKY, STV_RISKY, voter=2),
    *_cells("rep_sp_one_risky", (GP,), AxiomId.REP_SP_ONE_RISKY, GP_RISKY, voter=0),
    *_cells("unrepresented", (DO, STV), AxiomId.UNREPRESENTED, STRANDED),
    *_cells("unrepresented", (GP, MAXP), AxiomId.UNREPRESENTED, GP_STRANDED),
    *_cells("unrepresented", (MAXR,), AxiomId.UNREPRESENTED, MAXR_STRANDED),
    *_cells("reinforcement", (STV,), AxiomId.REINFORCEMENT, THREE_BLOCKS, second=B_APART),
    *_cells("reinforcement", (GP,), AxiomId.REINFORCEMENT, THREE_BLOCKS, second=A_APART),
    *_cells("monotonicity", (STV,), AxiomId.MONOTONICITY, STV_LIFT, voter=4, party="c"),
    *_cells("monotonicity", (GP,), AxiomId.MONOTONICITY, GP_LIFT, voter=1, party="b"),
    *_cells("monotonicity", (MAXP, MAXR), AxiomId.MONOTONICITY, OPTIMUM_LIFT, voter=3, party="b"),
    *_cells("share_sp_safe_top2", (STV,), AxiomId.SHARE_SP_SAFE_TOP2, SAFE_TOP_TWO_STV, voter=0),
    *_cells("share_sp_safe_top2", (GP,), AxiomId.SHARE_SP_SAFE_TOP2, SAFE_TOP_TWO, voter=0),
    *_cells("share_sp_promote", (STV,), AxiomId.SHARE_SP_PROMOTE, PROMOTE_STV, voter=5,
            restriction=Restriction.PROMOTE_REPRESENTATIVE),
    *_cells("share_sp_promote", (GP,), AxiomId.SHARE_SP_PROMOTE, GP_PROMOTE, voter=0,
            restriction=Restriction.PROMOTE_REPRESENTATIVE),
    *_cells("threshold_monotonicity", (GP,), AxiomId.THRESHOLD_MONOTONICITY, THRESHOLD_SWAP, tau_prime="4"),
    *_cells("threshold_monotonicity", (MAXP, MAXR), AxiomId.THRESHOLD_MONOTONICITY, OPTIMUM_SHRINKS,
            tau_prime="7"),
    *_cells("direct_winners", (MAXP, MAXR), AxiomId.DIRECT_WINNERS, OPTIMUM_SKIPS_WINNER),
]


def example(name: str) -> ProfileDocument:
    """
    Parse one of the worked examples.

    >>> sorted(EXAMPLES)
    ['five_parties', 'lost_votes', 'three_blocks']
    """
    return parse_profile_document(EXAMPLES[name])


def stored_counterexamples(rule: RuleId | None = None, axiom: AxiomId | None = None) -> list[StoredCounterexample]:
    """Stored counterexamples, optionally only those of one rule or one axiom."""
    return [fixture for fixture in COUNTEREXAMPLES
            if (rule is None or fixture.rule is RuleId(rule)) and (axiom is None or fixture.axiom is AxiomId(axiom))]


def counterexample(rule: RuleId, axiom: AxiomId) -> StoredCounterexample | None:
    found = stored_counterexamples(rule, axiom)
    return found[0] if found else None
