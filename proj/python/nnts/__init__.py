"""Nonnegative trigonometric sum (NNTS) densities on the circle.

Thin bindings over the C++ library: density and cdf evaluation, maximum
likelihood fitting by Fisher scoring on the sphere, order selection and CSV
loaders.
"""

from ._nnts import (
    AngularSample,
    FitResult,
    GroupedSample,
    IoError,
    LrTest,
    NntsError,
    NntsParams,
    NoAcceptableModel,
    ParseError,
    Partition,
    SelectionRow,
    SelectionTable,
    SolverConfig,
    ZeroCellProbability,
    ZeroDensityAtDatum,
    aic,
    bic,
    calendar_partition,
    canonicalize,
    cdf,
    chi_square_sf,
    density,
    equal_partition,
    fisher_info,
    fit,
    fit_baseline,
    interval_matrix,
    load_continuous,
    load_grouped,
    loglik,
    lr_test,
    riemannian_grad,
    selection_table,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
