"""Gaussian-process emulator with pluggable linear-algebra backends."""
