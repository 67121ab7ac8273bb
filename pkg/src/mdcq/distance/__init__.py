"""Weight distributions and minimum distances."""

from .enumerator import (
    DistanceReport,
    WeightDistribution,
    distance_bounds,
    low_weight_census,
    min_distance_at_least,
    min_distance_exact,
    symplectic_weight,
    weight_distribution_full,
)

__all__ = [
    "DistanceReport",
    "WeightDistribution",
    "distance_bounds",
    "low_weight_census",
    "min_distance_at_least",
    "min_distance_exact",
    "symplectic_weight",
    "weight_distribution_full",
]
