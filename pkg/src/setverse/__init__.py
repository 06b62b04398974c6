"""Finite workbench for the axiomatic multiverse of sets."""

__version__ = "0.1.0"
