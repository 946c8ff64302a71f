"""Noise and GKP error-probability analysis for switching-free,
teleportation-based time-domain optical quantum computation."""

__version__ = "0.1.0"
