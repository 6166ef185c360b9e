"""Level-set laboratory for rotationally symmetric 3-metrics.

Builds warped-product metrics ds^2 + f(s)^2 g_{S^2}, solves the exterior
harmonic potential in closed radial form, evaluates the level-set
functionals and their monotonicity/decay estimates, and produces
refutation certificates identifying which of the three incompatible
hypotheses (Ricci pinching, superquadratic volume growth, sub-16pi
boundary Willmore energy) fails for a given profile.
"""

from .asymptotics import (DecayFit, RefutationReport, coarea_check,
                          decay_check, holder_chain_check, li_yau_fit, refute)
from .config import ScenarioConfig
from .errors import (DomainError, NonparabolicityError, NumericError,
                     PinchLabError, UsageError)
from .functionals import (BoundaryWillmore, FunctionalSample, FunctionalSeries,
                          GenusZeroResult, MonotonicityReport, boundary_willmore,
                          build_series, check_G_ode, check_monotonicity,
                          explicit_dF, genus_zero_inequality_check, sample_at)
from .metrics import (CurvaturePoint, GrowthReport, PinchReport, WarpFunction,
                      build_metric, capped_cone, check_pinching, cone,
                      curvature_at, default_catalog,
                      finite_difference_curvature_oracle, flat_space,
                      from_callables, from_table, growth_fit, load_table_csv,
                      power_law, schwarzschild_slice, sphere_cap_blend,
                      volume_ball)
from .potential import (ExteriorDomain, LevelSet, PotentialSolution,
                        capacity_scaling_check, level_radius, solve_potential,
                        tail_integral)

__version__ = "0.1.0"
