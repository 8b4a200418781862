"""Braid-word compiler for single-qubit gates on three Fibonacci anyons."""

__version__ = "0.1.0"
