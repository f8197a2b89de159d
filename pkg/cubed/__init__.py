from cubed.core.canonical_surface import build_canonical_surface, check_region_conditions, region_graph
from cubed.core.cube_complex import CubeComplex, build_complex, validate_npc
from cubed.core.dehn_surgery import SurgerySpec, TorusPattern, check_surgery, pattern_meet_count
from cubed.core.disk_rewriter import DiskGraph, find_reducible_site, reduce
from cubed.core.hierarchy import HierarchySpec, verify_hierarchy
from cubed.core.surface_conditions import SurfaceModel, check_almost_cubed, enumerate_small_disks
from cubed.core.types import CheckResult, Report

__all__ = [
    "CheckResult",
    "CubeComplex",
    "DiskGraph",
    "HierarchySpec",
    "Report",
    "SurfaceModel",
    "SurgerySpec",
    "TorusPattern",
    "build_canonical_surface",
    "build_complex",
    "check_almost_cubed",
    "check_region_conditions",
    "check_surgery",
    "enumerate_small_disks",
    "find_reducible_site",
    "pattern_meet_count",
    "reduce",
    "region_graph",
    "validate_npc",
    "verify_hierarchy",
]
