"""Numerical laboratory for time-frequency and wavelet localization operators."""

__version__ = "0.1.0"

from .errors import (DegenerateSpectrum, FitFailure, GridTooCoarse, NonConvergence, OutOfRange,
                     RootNotBracketed, SolverFailure, TFLocalError, TruncationRisk, ZeroSignal)
from .geometry import (Annulus, Disk, Empty, HalfPlanePseudoDisk, Polygon, QuadratureSpec, RadialMeasure,
                       Rotation, Union, Whole, domain_from_dict, square)
from .fock_op import (GalerkinOperator, Spectrum, assemble_indicator, assemble_symbol,
                      build_counterexample_symbol, disk_spectrum_closed, eigendecompose)

__all__ = [
    "__version__",
    "Annulus", "Disk", "Empty", "HalfPlanePseudoDisk", "Polygon", "QuadratureSpec", "RadialMeasure",
    "Rotation", "Union", "Whole", "domain_from_dict", "square",
    "GalerkinOperator", "Spectrum", "assemble_indicator", "assemble_symbol",
    "build_counterexample_symbol", "disk_spectrum_closed", "eigendecompose",
    "DegenerateSpectrum", "FitFailure", "GridTooCoarse", "NonConvergence", "OutOfRange",
    "RootNotBracketed", "SolverFailure", "TFLocalError", "TruncationRisk", "ZeroSignal",
]
