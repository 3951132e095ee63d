"""Properly coloured cycles in edge-coloured graphs."""

from .certify import (
    Certificate,
    Verdict,
    oracle_longest_pc_path,
    oracle_max_pc_cycle_cover,
    oracle_pc_cycle,
    oracle_pc_two_factor,
    validate_certificate,
)
from .errors import BudgetExceeded, GraphFormatError, SearchFailure
from .factor import find_pc_two_factor, find_pc_two_factor_min_length, path_cover
from .generators import GenSpec, gen_extremal, gen_random, random_complete, random_gnp
from .graph import (
    EdgeColouredGraph,
    colour_degree,
    delta1,
    is_pc_cycle,
    is_pc_path,
    max_mono_degree,
    min_colour_degree,
    read_ecg,
    write_ecg,
)
from .pancyclic import DriverConfig, find_pc_triangle, pancyclic_all

__all__ = [
    "BudgetExceeded",
    "Certificate",
    "DriverConfig",
    "EdgeColouredGraph",
    "GenSpec",
    "GraphFormatError",
    "SearchFailure",
    "Verdict",
    "colour_degree",
    "delta1",
    "find_pc_triangle",
    "find_pc_two_factor",
    "find_pc_two_factor_min_length",
    "gen_extremal",
    "gen_random",
    "is_pc_cycle",
    "is_pc_path",
    "max_mono_degree",
    "min_colour_degree",
    "oracle_longest_pc_path",
    "oracle_max_pc_cycle_cover",
    "oracle_pc_cycle",
    "oracle_pc_two_factor",
    "pancyclic_all",
    "path_cover",
    "random_complete",
    "random_gnp",
    "read_ecg",
    "validate_certificate",
    "write_ecg",
]
