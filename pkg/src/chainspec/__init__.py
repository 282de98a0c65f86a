"""Exact spectral toolkit for chain graphs."""
