"""Fringe-projection HDR 3D scanning toolkit."""

from ._core import (
    FringescanError,
    build_coefficients,
    fuse_phase_maps,
    gen_phase_shifting,
    match_pair,
    naive_phase_shifting,
    predict_phase_variance,
    run,
    sat_map,
    solve_generalized,
    solve_pixel,
    solve_standard,
    temporal_unwrap,
    triangulate,
    wrap_phase,
)

__all__ = [
    "FringescanError",
    "build_coefficients",
    "fuse_phase_maps",
    "gen_phase_shifting",
    "match_pair",
    "naive_phase_shifting",
    "predict_phase_variance",
    "run",
    "sat_map",
    "solve_generalized",
    "solve_pixel",
    "solve_standard",
    "temporal_unwrap",
    "triangulate",
    "wrap_phase",
]
