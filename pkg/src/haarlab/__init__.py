"""Haar integration over easy groups, limit laws, random matrices and graph spectra."""

__version__ = "0.1.0"

from . import errors, graphs, haar, laws, numeric, partitions, rmt  # noqa: E402,F401
