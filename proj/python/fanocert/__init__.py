"""Exact and interval certification of codimension bounds for Fano complete intersections."""

from ._core import (
    DomainError,
    __version__,
    alpha,
    beta,
    binomial,
    bound,
    certify,
    certify_sign,
    evaluate,
    gamma_e,
    gamma_min,
    gamma_threshold,
    hypothesis_ok,
    lemma32,
    parse_degrees,
    run_cli,
    slopes,
    sweep,
    tail_product,
)

__all__ = [
    "DomainError",
    "__version__",
    "alpha",
    "beta",
    "binomial",
    "bound",
    "certify",
    "certify_sign",
    "evaluate",
    "gamma_e",
    "gamma_min",
    "gamma_threshold",
    "hypothesis_ok",
    "lemma32",
    "parse_degrees",
    "run_cli",
    "slopes",
    "sweep",
    "tail_product",
]
