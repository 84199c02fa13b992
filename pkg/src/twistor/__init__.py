"""Horizontal holomorphic curves in CP^3 and their harmonic projections to S^4."""

from .canonical import *  # noqa: F401,F403
from .cpoly import CPoly, conj_antipodal, coprime, derivative, evaluate, roots, wronskian2
from .curve import (INF, CurveCP3, SingularityReport, SingularPoint, fullness_ratio,
                    horizontality_error, horizontality_residual, is_horizontal,
                    is_linearly_full, projective_distance, second_wronskian,
                    singularity_poly, singularity_report, singularity_type_at)
from .document import curve_to_document, document_to_curve, dumps, load
from .errors import (ConsistencyError, ConstructionError, DegenerateInputError, DegenerationWarning,
                     DegreeMismatchError, DocumentError, DomainError, PivotError,
                     PreconditionError, QuadratureAccuracyError, ResolutionError, TwistorError)
from .fibration import Quaternion, antiholomorphic_lift, project, project_curve
from .geometry import (AreaResult, annulus_bound, annulus_mass, bubble_limit, bubble_profile,
                       conformal_factor, fs_density, induced_area)
from .groups import (GroupElement, MoebiusMap, act_post, act_pre, diagonal_element,
                     stabilizer_element, su2_moving_to_zero)
from .invariance import (InvarianceWitness, even_degree_obstruction_demo, invariance_check,
                         make_invariant, normalize_beta)

__version__ = "0.1.0"
