#!/usr/bin/env python3
"""Main entry point for the GP emulator benchmark CLI."""

from src.cli import main

if __name__ == "__main__":
    main()
