"""Designs and test simulators."""

from src.experiment.design import DesignSpec, latin_hypercube, maximin_lhd, min_distance
from src.experiment.functions import get_simulator, goldstein_price_log, hartman6

__all__ = [
    "DesignSpec",
    "latin_hypercube",
    "maximin_lhd",
    "min_distance",
    "get_simulator",
    "goldstein_price_log",
    "hartman6",
]
