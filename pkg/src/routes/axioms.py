from fastapi import APIRouter, HTTPException, Query, status

from src.entity.exceptions import PartySelectionError
from src.entity.models import AxiomId, RuleId
from src.repository.fixtures import stored_counterexamples
from src.schemas.axiom import AxiomCheckResponse, AxiomCheckSchema, FixtureResponse
from src.services import runs
from src.services.search import replay_fixture

router = APIRouter(prefix='/axioms', tags=['axioms'])


@router.post("/check", response_model=AxiomCheckResponse, status_code=status.HTTP_200_OK)
async def check_axiom(body: AxiomCheckSchema):
    """
    The check_axiom function checks one axiom for one rule on the posted profile document.

    :param body: AxiomCheckSchema: Profile document, thresholds, rule, axiom and optional voter and party
    :return: Whether the axiom is violated, with the witness
    """
    try:
        violation = runs.check_document(body.profile, body.rule, body.axiom, body.tau, body.tau_prime,
                                        body.voter, body.party, body.restriction)
    except PartySelectionError as err:
        raise HTTPException(status_code=err.status_code, detail=str(err))
    return AxiomCheckResponse(violated=violation is not None, violation=violation)


@router.get("/fixtures", response_model=list[FixtureResponse], status_code=status.HTTP_200_OK)
async def list_fixtures(rule: RuleId | None = Query(None), axiom: AxiomId | None = Query(None)):
    """
    The list_fixtures function replays the stored counterexamples.

    :param rule: RuleId | None: Only fixtures of this rule
    :param axiom: AxiomId | None: Only fixtures of this axiom
    :return: Every fixture with whether it still reproduces
    """
    fixtures = []
    for fixture in stored_counterexamples(rule, axiom):
        violation = replay_fixture(fixture)
        fixtures.append(FixtureResponse(name=fixture.name, rule=fixture.rule, axiom=fixture.axiom,
                                        reproduces=violation is not None,
                                        narrative=violation.narrative if violation else None))
    return fixtures
