"""Spectral solvers for the integral fractional Laplacian on the 2D and 3D unit balls."""

__version__ = "0.1.0"
