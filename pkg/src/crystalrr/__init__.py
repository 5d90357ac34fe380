"""Difference conditions from perfect crystals and the q-series identities they give."""
from .crystal import (
    CATALOG_NAMES,
    CrystalError,
    CrystalGraph,
    EnergyMatrix,
    catalog,
    solve_energy,
)
from .partitions import (
    Alphabet,
    AlphabetMismatch,
    ColoredPartition,
    PlainPartition,
    Specialization,
    Weight,
    oplus,
)
from .paths import BijectionViolation, Path, compose, decompose, part_d, path_degree
from .qseries import QSeries, gen_function, weighted_character
from .rules import DifferenceRuleSet, ForbiddenPattern, build_rules, satisfies

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AlphabetMismatch",
    "BijectionViolation",
    "CATALOG_NAMES",
    "ColoredPartition",
    "CrystalError",
    "CrystalGraph",
    "DifferenceRuleSet",
    "EnergyMatrix",
    "ForbiddenPattern",
    "Path",
    "PlainPartition",
    "QSeries",
    "Specialization",
    "Weight",
    "build_rules",
    "catalog",
    "compose",
    "decompose",
    "gen_function",
    "oplus",
    "part_d",
    "path_degree",
    "satisfies",
    "solve_energy",
    "weighted_character",
]
