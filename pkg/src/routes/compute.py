from fastapi import APIRouter, HTTPException, status

from src.entity.exceptions import PartySelectionError
from src.schemas.report import ComputeSchema, ReportDocument
from src.services import runs

router = APIRouter(prefix='/compute', tags=['compute'])


@router.post("/", response_model=ReportDocument, status_code=status.HTTP_200_OK)
async def compute(body: ComputeSchema):
    """
    The compute function runs a party selection rule on the posted profile document.

    :param body: ComputeSchema: Profile document, threshold, rule and optional house size
    :return: The report of the run
    """
    try:
        return runs.compute(body.profile, body.rule, body.tau, body.parallel_universe, body.seats)
    except PartySelectionError as err:
        raise HTTPException(status_code=err.status_code, detail=str(err))
