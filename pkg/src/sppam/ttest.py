"""Corrected resampled t-test for comparing paired cross-validation scores.

Per-fold scores from resampled cross-validation are not independent: every
pair of runs shares most of its training data. The corrected test inflates
the variance term of the paired t statistic by the test/train size ratio:

    t = mean(d) / sqrt((1/m + n_test/n_train) * var(d))

with d the per-run score differences, m the number of runs and var the
unbiased sample variance. Verdicts use two-sided critical values at the
requested significance level from a built-in table (df 1..200; the normal
approximation beyond).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import SppamError

A_BETTER = "a-better"
B_BETTER = "b-better"
NO_DIFFERENCE = "no-difference"


@dataclass(frozen=True)
class TTestResult:
    t_statistic: float
    degrees_of_freedom: int
    critical_value: float
    alpha: float
    verdict: str


def corrected_t_test(scores_a, scores_b, test_fraction: float, alpha: float = 0.01) -> TTestResult:
    """Compare two equal-length paired score vectors.

    ``test_fraction`` is n_test/n_train of the underlying splits (1/9 for
    10-fold). The verdict is a-better / b-better / no-difference by a
    two-sided comparison at ``alpha``.
    """
    scores_a = list(scores_a)
    scores_b = list(scores_b)
    if len(scores_a) != len(scores_b):
        raise SppamError(
            f"score vectors differ in length: {len(scores_a)} vs {len(scores_b)}"
        )
    m = len(scores_a)
    if m < 2:
        raise SppamError(f"need at least 2 paired scores, got {m}")
    if test_fraction <= 0:
        raise SppamError(f"test fraction must be positive, got {test_fraction}")

    diffs = [a - b for a, b in zip(scores_a, scores_b)]
    mean = math.fsum(diffs) / m
    variance = math.fsum((d - mean) ** 2 for d in diffs) / (m - 1)
    df = m - 1
    critical = critical_value(df, alpha)

    if variance == 0.0:
        if mean == 0.0:
            return TTestResult(0.0, df, critical, alpha, NO_DIFFERENCE)
        t = math.inf if mean > 0 else -math.inf
    else:
        t = mean / math.sqrt((1.0 / m + test_fraction) * variance)

    if t > critical:
        verdict = A_BETTER
    elif t < -critical:
        verdict = B_BETTER
    else:
        verdict = NO_DIFFERENCE
    return TTestResult(t, df, critical, alpha, verdict)


def critical_value(df: int, alpha: float) -> float:
    """Two-sided critical value of Student's t for the supported alphas."""
    if alpha not in _TABLES:
        raise SppamError(
            f"unsupported significance level {alpha}; choose one of "
            f"{sorted(_TABLES)}"
        )
    if df < 1:
        raise SppamError(f"degrees of freedom must be >= 1, got {df}")
    table = _TABLES[alpha]
    if df <= len(table):
        return table[df - 1]
    return _NORMAL_APPROX[alpha]


_NORMAL_APPROX = {0.01: 2.5758, 0.05: 1.9600}

# Two-sided critical values, df 1..200.
_TABLES = {
    0.01: (
        63.6567, 9.9248, 5.8409, 4.6041, 4.0321, 3.7074, 3.4995, 3.3554, 3.2498, 3.1693,
        3.1058, 3.0545, 3.0123, 2.9768, 2.9467, 2.9208, 2.8982, 2.8784, 2.8609, 2.8453,
        2.8314, 2.8188, 2.8073, 2.7969, 2.7874, 2.7787, 2.7707, 2.7633, 2.7564, 2.7500,
        2.7440, 2.7385, 2.7333, 2.7284, 2.7238, 2.7195, 2.7154, 2.7116, 2.7079, 2.7045,
        2.7012, 2.6981, 2.6951, 2.6923, 2.6896, 2.6870, 2.6846, 2.6822, 2.6800, 2.6778,
        2.6757, 2.6737, 2.6718, 2.6700, 2.6682, 2.6665, 2.6649, 2.6633, 2.6618, 2.6603,
        2.6589, 2.6575, 2.6561, 2.6549, 2.6536, 2.6524, 2.6512, 2.6501, 2.6490, 2.6479,
        2.6469, 2.6459, 2.6449, 2.6439, 2.6430, 2.6421, 2.6412, 2.6403, 2.6395, 2.6387,
        2.6379, 2.6371, 2.6364, 2.6356, 2.6349, 2.6342, 2.6335, 2.6329, 2.6322, 2.6316,
        2.6309, 2.6303, 2.6297, 2.6291, 2.6286, 2.6280, 2.6275, 2.6269, 2.6264, 2.6259,
        2.6254, 2.6249, 2.6244, 2.6239, 2.6235, 2.6230, 2.6226, 2.6221, 2.6217, 2.6213,
        2.6208, 2.6204, 2.6200, 2.6196, 2.6193, 2.6189, 2.6185, 2.6181, 2.6178, 2.6174,
        2.6171, 2.6167, 2.6164, 2.6161, 2.6157, 2.6154, 2.6151, 2.6148, 2.6145, 2.6142,
        2.6139, 2.6136, 2.6133, 2.6130, 2.6127, 2.6125, 2.6122, 2.6119, 2.6117, 2.6114,
        2.6111, 2.6109, 2.6106, 2.6104, 2.6102, 2.6099, 2.6097, 2.6095, 2.6092, 2.6090,
        2.6088, 2.6086, 2.6083, 2.6081, 2.6079, 2.6077, 2.6075, 2.6073, 2.6071, 2.6069,
        2.6067, 2.6065, 2.6063, 2.6061, 2.6060, 2.6058, 2.6056, 2.6054, 2.6052, 2.6051,
        2.6049, 2.6047, 2.6045, 2.6044, 2.6042, 2.6041, 2.6039, 2.6037, 2.6036, 2.6034,
        2.6033, 2.6031, 2.6030, 2.6028, 2.6027, 2.6025, 2.6024, 2.6022, 2.6021, 2.6020,
        2.6018, 2.6017, 2.6015, 2.6014, 2.6013, 2.6011, 2.6010, 2.6009, 2.6008, 2.6006,
    ),
    0.05: (
        12.7062, 4.3027, 3.1824, 2.7764, 2.5706, 2.4469, 2.3646, 2.3060, 2.2622, 2.2281,
        2.2010, 2.1788, 2.1604, 2.1448, 2.1314, 2.1199, 2.1098, 2.1009, 2.0930, 2.0860,
        2.0796, 2.0739, 2.0687, 2.0639, 2.0595, 2.0555, 2.0518, 2.0484, 2.0452, 2.0423,
        2.0395, 2.0369, 2.0345, 2.0322, 2.0301, 2.0281, 2.0262, 2.0244, 2.0227, 2.0211,
        2.0195, 2.0181, 2.0167, 2.0154, 2.0141, 2.0129, 2.0117, 2.0106, 2.0096, 2.0086,
        2.0076, 2.0066, 2.0057, 2.0049, 2.0040, 2.0032, 2.0025, 2.0017, 2.0010, 2.0003,
        1.9996, 1.9990, 1.9983, 1.9977, 1.9971, 1.9966, 1.9960, 1.9955, 1.9949, 1.9944,
        1.9939, 1.9935, 1.9930, 1.9925, 1.9921, 1.9917, 1.9913, 1.9908, 1.9905, 1.9901,
        1.9897, 1.9893, 1.9890, 1.9886, 1.9883, 1.9879, 1.9876, 1.9873, 1.9870, 1.9867,
        1.9864, 1.9861, 1.9858, 1.9855, 1.9853, 1.9850, 1.9847, 1.9845, 1.9842, 1.9840,
        1.9837, 1.9835, 1.9833, 1.9830, 1.9828, 1.9826, 1.9824, 1.9822, 1.9820, 1.9818,
        1.9816, 1.9814, 1.9812, 1.9810, 1.9808, 1.9806, 1.9804, 1.9803, 1.9801, 1.9799,
        1.9798, 1.9796, 1.9794, 1.9793, 1.9791, 1.9790, 1.9788, 1.9787, 1.9785, 1.9784,
        1.9782, 1.9781, 1.9780, 1.9778, 1.9777, 1.9776, 1.9774, 1.9773, 1.9772, 1.9771,
        1.9769, 1.9768, 1.9767, 1.9766, 1.9765, 1.9763, 1.9762, 1.9761, 1.9760, 1.9759,
        1.9758, 1.9757, 1.9756, 1.9755, 1.9754, 1.9753, 1.9752, 1.9751, 1.9750, 1.9749,
        1.9748, 1.9747, 1.9746, 1.9745, 1.9744, 1.9744, 1.9743, 1.9742, 1.9741, 1.9740,
        1.9739, 1.9739, 1.9738, 1.9737, 1.9736, 1.9735, 1.9735, 1.9734, 1.9733, 1.9732,
        1.9732, 1.9731, 1.9730, 1.9729, 1.9729, 1.9728, 1.9727, 1.9727, 1.9726, 1.9725,
        1.9725, 1.9724, 1.9723, 1.9723, 1.9722, 1.9721, 1.9721, 1.9720, 1.9720, 1.9719,
    ),
}
