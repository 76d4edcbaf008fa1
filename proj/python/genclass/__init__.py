"""Hilbert and generalized class polynomials on X0+(119)."""

from ._genclass import (
    PrecisionError,
    PreconditionError,
    class_number,
    cm,
    density,
    fp_roots,
    genclass,
    heights,
    hilbert,
    norm_to_x,
    nsystem,
    r_curve,
    report_row,
)

__all__ = [
    "PrecisionError",
    "PreconditionError",
    "class_number",
    "cm",
    "density",
    "fp_roots",
    "genclass",
    "heights",
    "hilbert",
    "norm_to_x",
    "nsystem",
    "r_curve",
    "report_row",
]
