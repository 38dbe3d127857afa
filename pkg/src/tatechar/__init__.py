"""tatechar: p-adic character maps of elliptic-curve Tate modules.

Exact arithmetic in truncated local rings, torsion towers of an elliptic
curve with good ordinary reduction, Weil/Cartier pairings over artinian
rings, the character map assembled from them, the chord-slope model of the
universal vectorial extension with its theta map, and a verification
battery tying the structural identities together.
"""

from .errors import *                                           # noqa: F401,F403
from .localring import (                                        # noqa: F401
    LocalRing,
    PrecisionBudget,
    RingElement,
    frobenius,
    make_ring,
    padic_exp,
    padic_log,
    ring_arith,
    teichmuller,
    unit_decompose,
    valuation,
)
from .curve import (                                            # noqa: F401
    LocalCurve,
    LocalPoint,
    TateVector,
    division_polynomial,
    elliptic_log,
    p_torsion_level,
    point_add,
    point_order_mod,
    reduce_point,
    scalar_mul,
    torsion_basis,
)
from .residue import (                                          # noqa: F401
    enumerate_points,
    make_residue_curve,
    point_order,
    weil_pairing_ff,
)
from .characters import (                                       # noqa: F401
    Character,
    CharComponent,
    char_from_images,
    char_with_given_log,
    conjugate,
    evaluate,
    is_smooth_at_level,
    log_star,
)
from .vext import ExtPoint, ThetaValue, ext_add, theta, theta_dual_pair  # noqa: F401
from .alpha import (                                            # noqa: F401
    AlphaResult,
    UnipotentRep,
    VerificationReport,
    alpha_n,
    alpha_tower,
    cartier_pairing_local,
    cm_conjugate_search,
    galois_equivariance_check,
    isogeny_functoriality_check,
    lie_alpha_check,
    rho_unipotent,
    smoothness_check,
)
from .presets import PRESETS, curve_from_spec                   # noqa: F401
from . import verify                                            # noqa: F401

__version__ = "0.1.0"
