import logging
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.stats import chi2_contingency

from src.conf import messages
from src.entity.exceptions import ContingencyError

logger = logging.getLogger(__name__)


def chi_square_2x2(table: Sequence[Sequence[Fraction | float]]) -> tuple[float, float]:
    """
    The chi_square_2x2 function runs Pearson's test of independence on a 2x2 table of weighted counts.

    No continuity correction is applied; the statistic has one degree of freedom.

    :param table: Sequence[Sequence[Fraction | float]]: Two rows of two non-negative counts
    :return: The statistic and its p-value

    >>> chi_square_2x2([[1, 2], [2, 4]])
    (0.0, 1.0)
    """
    try:
        observed = np.array([[float(cell) for cell in row] for row in table], dtype=float)
    except (TypeError, ValueError):
        raise ContingencyError(messages.MALFORMED_TABLE, repr(table))
    if observed.shape != (2, 2) or (observed < 0).any():
        raise ContingencyError(messages.MALFORMED_TABLE, repr(table))
    if (observed.sum(axis=0) == 0).any() or (observed.sum(axis=1) == 0).any():
        raise ContingencyError(messages.ZERO_MARGINAL, repr(observed.tolist()))
    statistic, p_value, dof, _ = chi2_contingency(observed, correction=False)
    logger.debug("chi-square %.4f with %d dof, p=%.4g", statistic, dof, p_value)
    return float(statistic), float(p_value)
