"""Network function computation over finite rings."""

from ._core import (
    Algebra,
    NetcompError,
    Network,
    NetworkCode,
    TargetFunction,
    butterfly_arith_code,
    butterfly_capacity,
    butterfly_mod_code,
    classify,
    footprint_bound,
    km_construct,
    min_cut_size,
    routing_capacity,
    routing_capacity_by_cuts,
    run_cli,
    search,
    verify,
)

__all__ = [
    "Algebra",
    "NetcompError",
    "Network",
    "NetworkCode",
    "TargetFunction",
    "butterfly_arith_code",
    "butterfly_capacity",
    "butterfly_mod_code",
    "classify",
    "footprint_bound",
    "km_construct",
    "min_cut_size",
    "routing_capacity",
    "routing_capacity_by_cuts",
    "run_cli",
    "search",
    "verify",
]
