"""Configuration module."""

from .load import BenchConfig
