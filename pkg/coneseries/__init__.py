from coneseries.base.executor import BatchExecutor
from coneseries.dfinite.ode import algebraic_to_ode
from coneseries.dfinite.recurrence import LinearODE, PRecurrence, gap_constant, ode_to_recurrence
from coneseries.geometry.cone import (
    Cone,
    cone_join,
    dual_cone,
    is_strongly_convex,
    relint_dual_contains,
    separating_omega,
    shift_containment,
)
from coneseries.kernel.polynomial import BivariatePoly, UniPoly
from coneseries.kernel.taylor import taylor_of_algebraic
from coneseries.orders.order import VectorOrder, compare, is_positive, refine_over_cone, signflip_relint_test
from coneseries.roots.hensel import LiftResult, hensel_lift
from coneseries.roots.newton import InitialRoot, PolyOverSeries, newton_polygon_initials
from coneseries.series.laurent import LaurentSeriesValue, RaySeries, combine, initial_part, nu_omega, ray_part
from coneseries.standalone.errors import ConeSeriesError, UsageError
from coneseries.support.predicates import (
    family_shift,
    in_field_family,
    in_localized_ring,
    min_support,
    slab_count,
    tau_classify,
)
from coneseries.support.spec import Ray, SupportSpec, Tail
from coneseries.transcendence.certificate import Certificate
from coneseries.transcendence.diophantine import dioph_a1_scan, dioph_sup_nu
from coneseries.transcendence.gap import gap_certificate
from coneseries.transcendence.liouville import liouville_certificate
from coneseries.transcendence.replay import replay_certificate

__version__ = "0.1.0"
__all__ = [
    "BatchExecutor",
    "BivariatePoly",
    "Certificate",
    "Cone",
    "ConeSeriesError",
    "InitialRoot",
    "LaurentSeriesValue",
    "LiftResult",
    "LinearODE",
    "PRecurrence",
    "PolyOverSeries",
    "Ray",
    "RaySeries",
    "SupportSpec",
    "Tail",
    "UniPoly",
    "UsageError",
    "VectorOrder",
    "algebraic_to_ode",
    "combine",
    "compare",
    "cone_join",
    "dioph_a1_scan",
    "dioph_sup_nu",
    "dual_cone",
    "family_shift",
    "gap_certificate",
    "gap_constant",
    "hensel_lift",
    "in_field_family",
    "in_localized_ring",
    "initial_part",
    "is_positive",
    "is_strongly_convex",
    "liouville_certificate",
    "min_support",
    "newton_polygon_initials",
    "nu_omega",
    "ode_to_recurrence",
    "ray_part",
    "refine_over_cone",
    "relint_dual_contains",
    "replay_certificate",
    "separating_omega",
    "shift_containment",
    "signflip_relint_test",
    "slab_count",
    "tau_classify",
    "taylor_of_algebraic",
]
