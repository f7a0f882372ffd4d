"""quintic_periods: residue-cocycle periods of first-order curve families.

Library layout:

* :mod:`quintic_periods.numkernel` -- polynomials, root finding, residue
  backends, expression parsing with branch-tracked fifth roots;
* :mod:`quintic_periods.multipoly` -- sparse multivariate polynomials;
* :mod:`quintic_periods.geometry`  -- hypersurfaces, curve jets, Moebius
  machinery, containment/tangency residuals;
* :mod:`quintic_periods.griffiths` -- the residue cocycle, contraction signs
  and their bruteforce oracle, per-pair integrands;
* :mod:`quintic_periods.period`    -- period assembly, sweeps, closed-form
  comparison, monomial scans;
* :mod:`quintic_periods.catalog`   -- built-in hypersurfaces and the fifty
  line families with corrected and literal modes;
* :mod:`quintic_periods.cli`       -- `quintic-periods` command line.
"""

from .catalog import (
    ClosedFormRef,
    LineFamilyDescriptor,
    closed_form_g,
    fermat_hypersurface,
    line_families,
    mobius_null_family,
    mustata_conic_equations,
    paper_line_slice,
    shioda_quintic,
)
from .errors import QuinticPeriodsError
from .geometry import (
    CurveFamily,
    CurveJet,
    Hypersurface,
    MobiusMap,
    containment_residual,
    mobius_deformation,
    mobius_reparam,
    smooth_spot_check,
    tangency_residual,
)
from .griffiths import (
    contract_bruteforce,
    contraction_sign,
    gm_monomial_derivative,
    j2star,
    pair_integrand,
    residue_cocycle,
)
from .multipoly import MultiPoly
from .numkernel import BinaryForm, RationalFunction, UniPoly, parse_expression
from .period import compare_closed_form, monomial_scan, period_at, sweep

__version__ = "0.1.0"

__all__ = [
    "BinaryForm",
    "ClosedFormRef",
    "CurveFamily",
    "CurveJet",
    "Hypersurface",
    "LineFamilyDescriptor",
    "MobiusMap",
    "MultiPoly",
    "QuinticPeriodsError",
    "RationalFunction",
    "UniPoly",
    "closed_form_g",
    "compare_closed_form",
    "containment_residual",
    "contract_bruteforce",
    "contraction_sign",
    "fermat_hypersurface",
    "gm_monomial_derivative",
    "j2star",
    "line_families",
    "mobius_deformation",
    "mobius_null_family",
    "mobius_reparam",
    "monomial_scan",
    "pair_integrand",
    "paper_line_slice",
    "parse_expression",
    "period_at",
    "residue_cocycle",
    "shioda_quintic",
    "smooth_spot_check",
    "sweep",
    "tangency_residual",
    "__version__",
]
