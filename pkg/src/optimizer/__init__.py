"""Genetic-algorithm optimizer."""

from src.optimizer.ga import ga_minimize
from src.optimizer.schema import GaConfig, GaResult, GaTrace

__all__ = ["GaConfig", "GaResult", "GaTrace", "ga_minimize"]
