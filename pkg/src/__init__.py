"""
Contest Solver

Equilibria of two-player logit contests over constrained choice sets, with
finite-game analysis and brute-force verification.
"""

__version__ = "1.0.0"
