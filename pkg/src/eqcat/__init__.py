"""Exact relative equivariant LS category and (symmetric) topological complexity of finite G-posets."""
from .category import (ABOVE_BOUND, INFINITE, UNKNOWN, CategoryQuery, CategorySolver, CoverCertificate,
                       WhiteheadCertificate, catg_query, point_query, stc_query, subset_query, tc_query, tcg_query)
from .certificates import check, to_json, verify_certificate
from .group import FiniteGroup, Subgroup
from .gspace import FiniteGSpace, MarkedSubset, daleth, diagonal, orbit_space, product, square
from .homotopy import HomotopyEngine, equivariant_core

__version__ = "0.1.0"

__all__ = ["ABOVE_BOUND", "INFINITE", "UNKNOWN", "CategoryQuery", "CategorySolver", "CoverCertificate",
           "FiniteGSpace", "FiniteGroup", "HomotopyEngine", "MarkedSubset", "Subgroup", "WhiteheadCertificate",
           "catg_query", "check", "daleth", "diagonal", "equivariant_core", "orbit_space", "point_query", "product",
           "square", "stc_query", "subset_query", "tc_query", "tcg_query", "to_json", "verify_certificate"]
