"""Exterior algebra, flow characteristics and harmonic relaxation."""

from ._core import (
    DimensionError,
    DomainError,
    Element,
    Error,
    Flow,
    InvalidArgument,
    NonConvergenceError,
    ParseError,
    __version__,
    blade,
    circulation,
    classify,
    dot,
    flux,
    hodge,
    norm,
    normalized_measure,
    plot_svg,
    relax_surface,
    run_cli,
    solve_laplace,
    verify,
    wedge,
)
