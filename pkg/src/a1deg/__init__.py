"""Exact arithmetic in Grothendieck-Witt rings and Milnor-Witt K-theory,
with A^1-degrees of polynomial maps computed from the EKL form."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .fields import (Q, PrimeField, Rationals, SimpleExtension, SquareClass,  # noqa: F401
                     extension, is_separable_extension, is_square, minimal_polynomial,
                     square_class, trace)
from .forms import (BilinearForm, diagonalize, discriminant, hasse_witt,  # noqa: F401
                    hilbert_symbol, is_isometric, rank, signature)
from .gw import (GWElement, angle, gw_equals, gw_from_form, gw_normal_form,  # noqa: F401
                 hyperbolic, in_fundamental_power, milnor_symbol_image, parse_gw)
from .localdeg import (ClosedPoint, PolynomialMap, RationalPoint, ekl_form,  # noqa: F401
                       global_degree, local_degree, local_degree_at_closed_point,
                       quotient_algebra)
from .mwk import (MWElement, ValuationSpec, cohomological_transfer,  # noqa: F401
                  degree0_to_gw, functional_transfer, mw_symbol, parse_mw,
                  real_realization, residue)
