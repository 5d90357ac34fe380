from ..partitions import Specialization
from .counting import (
    DivergentSpecialization,
    WeightedSeries,
    brute_force_gen_function,
    brute_force_weighted_character,
    gen_function,
    ideal_members,
    iter_ideal,
    weighted_character,
)
from .products import (
    BINOMIAL,
    EULER,
    GEOMETRIC,
    Factor,
    ProductSide,
    expand_product,
    partitions_product,
    residue_product,
)
from .series import QSeries, format_exponent, to_doubled

principal_spec = Specialization.principal

__all__ = [
    "BINOMIAL",
    "DivergentSpecialization",
    "EULER",
    "Factor",
    "GEOMETRIC",
    "ProductSide",
    "QSeries",
    "Specialization",
    "WeightedSeries",
    "brute_force_gen_function",
    "brute_force_weighted_character",
    "expand_product",
    "format_exponent",
    "gen_function",
    "ideal_members",
    "iter_ideal",
    "partitions_product",
    "principal_spec",
    "residue_product",
    "to_doubled",
    "weighted_character",
]
