"""Unbounded convex polyhedra in generator form.

Recession and normal cones, central directions, total curvature, the
bounded-Hausdorff and asymptotic distances, and deformation flows toward
half-spaces, paraboloids and round cylinders.
"""

from .bodies import (BodyClass, Face, VBody, central_direction, classify, face, has_balanced_support, is_K_plus,
                     minkowski_sum, motzkin_decompose, normal_cone_closure, recession_cone, support_value,
                     total_curvature)
from .cones import (LinearSubspace, PolyhedralCone, SphericalRegion, cone_sum, contains, dd_convert, dd_facets,
                    is_relatively_proper, linearity_space, polar, project_cone, spherical_centroid, spherical_measure)
from .flows import (FlowTrace, ModelBodyConfig, apex, apex_translation_flow, ball_body, halfspace_body,
                    hyperboloid_body, paraboloid_body, run_trace, theorem1_flow, theorem2_flow, theorem3_flow)
from .metrics import (MetricsConfig, asymptotic_distance, bounded_hausdorff, hausdorff_compact, nc_hausdorff_radius,
                      point_to_body_distance)

__version__ = "0.1.0"
