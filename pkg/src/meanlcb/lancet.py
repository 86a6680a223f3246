"""The 2006 Lancet Iraq mortality survey cluster death counts.

The 47 per-cluster violent death counts tabulated by van der Laan from the
Burnham et al. survey; the published analyses treat them as an IID sample.
The survey's point estimate of 601,000 total violent deaths against a
rounded sample mean of 6.4 fixes the linear scale from per-cluster mean to
population total used for the published scaled bounds. The accompanying
prose says "49 clusters" in one place, but 47 values are tabulated and the
published mean (6.4) and standard deviation (8.3) match the 47 values
exactly; the tabulated data is embedded here.
"""

from .core import Sample

LANCET_CLUSTER_COUNTS = (
    17, 15, 0, 0, 3, 4, 0, 0,
    5, 1, 0, 2, 2, 6, 0, 9,
    3, 0, 1, 5, 7, 12, 22, 0,
    0, 0, 1, 25, 2, 24, 35, 9,
    6, 5, 4, 4, 6, 1, 3, 1,
    3, 5, 2, 0, 25, 9, 18,
)

# Published point estimate of total violent deaths and the rounded sample
# mean it corresponds to; their ratio converts a per-cluster mean bound
# into a total-deaths bound.
LANCET_TOTAL_POINT_ESTIMATE = 601_000
LANCET_ROUNDED_MEAN = 6.4
LANCET_SCALE_FACTOR = LANCET_TOTAL_POINT_ESTIMATE / LANCET_ROUNDED_MEAN

CLUSTER_COUNT_PROSE_DISCREPANCY = (
    "the source prose mentions 49 clusters, but 47 values are tabulated and "
    "reproduce the published mean and standard deviation; the 47 tabulated "
    "values are used")


def lancet_sample() -> Sample:
    return Sample(LANCET_CLUSTER_COUNTS)
