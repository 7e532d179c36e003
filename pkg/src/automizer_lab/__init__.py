"""Automizers of subgroups in small finite groups, and the group classes they define."""
from .catalog import CatalogEntry, default_catalog, load_catalog, save_catalog
from .config import Caps, caps, using_caps
from .errors import GroupError
from .group import (
    Group,
    GroupMap,
    SemidirectSpec,
    Subgroup,
    direct_product,
    group_from_json,
    group_from_permutations,
    group_from_table,
    quotient_group,
    semidirect_product,
)
from .harness import TheoremResult, run_all
from .iso import are_isomorphic, automorphism_group, find_isomorphism
from .predicates import (
    PREDICATES,
    PropertyReport,
    Verdict,
    is_cp,
    is_nc,
    is_pnc,
    is_quasi_nc,
    is_sbp,
    pnc_verdict,
    property_report,
    subgroup_from_witness,
)
from .subgroups import Automizer, SubgroupLattice, all_subgroups, automizer

__all__ = [
    "Automizer", "Caps", "CatalogEntry", "Group", "GroupError", "GroupMap", "PREDICATES",
    "PropertyReport", "SemidirectSpec", "Subgroup", "SubgroupLattice", "TheoremResult", "Verdict",
    "all_subgroups", "are_isomorphic", "automizer", "automorphism_group", "caps", "default_catalog",
    "direct_product", "find_isomorphism", "group_from_json", "group_from_permutations",
    "group_from_table", "is_cp", "is_nc", "is_pnc", "is_quasi_nc", "is_sbp", "load_catalog", "pnc_verdict", "property_report", "quotient_group", "run_all",
    "save_catalog", "semidirect_product", "subgroup_from_witness", "using_caps",
]
__version__ = "0.1.0"
