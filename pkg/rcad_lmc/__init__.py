"""
RCAD-LMC

Derivative-free Langevin Monte Carlo with random-coordinate gradient surrogates:
overdamped and underdamped kernels, RCD and variance-reduced RCAD flux estimators,
analytic oracles and a stepsize-sweep harness.
"""

__version__ = "0.1.0"
