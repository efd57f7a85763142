"""Immaculate line bundles on smooth toric Deligne-Mumford stacks, computed exactly."""

from .asymptotics import (Direction, bw_hull_check, decide_infinite, imm_infinity_contains,
                          imm_infinity_description, interior_class, witness_immaculate_family)
from .cohomology import cohomology, count_pI, euler_characteristic, immaculate_scan, is_immaculate
from .fan import StackyFan, builtin, builtin_catalog, full_complex, parse_builtin, restricted_complex, validate
from .homology import is_tempting, reduced_homology_ranks, tempting_sets
from .picard import DivisorClass, canonical_class, class_of, divisor_rep, picard_group, real_image, serre_dual
from .polyhedra import (cone_from_generators, forbidden_cone, interior_contains, is_strongly_convex,
                        membership, vertex_check, zonotope, zonotope_classes)

__version__ = "0.1.0"
