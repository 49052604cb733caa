"""Exact rank-two D0-D6 Donaldson-Thomas invariants.

Two independent routes to the same numbers: the combinatorial
wall-crossing sum over coloured vertex configurations and spanning trees,
and closed generating series built from the MacMahon function.
"""
__version__ = "0.1.0"

from .combinatorics import (  # noqa: E402
    BACKEND,
    KClass,
    Slope,
    TreeGraph,
    VertexConfig,
    enumerate_configs,
    enumerate_trees,
    s_coeff,
    slope_of,
    tree_sum,
    u_coeff,
    u_pieces,
)
from .invariants import (  # noqa: E402
    InvariantKind,
    closed_dt2_series,
    closed_eu2_series,
    dt1_series,
    dt_piece,
    dt_seed,
    eu_seed,
    is_integer_valued,
    omega2,
    verify,
    wallcross,
)
from .series import ChiPoly, PowerSeries, macmahon, n_series  # noqa: E402
