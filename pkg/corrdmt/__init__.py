"""Finite-SNR diversity-multiplexing tradeoff toolkit for correlated MIMO Rayleigh channels."""

__version__ = "0.1.0"
