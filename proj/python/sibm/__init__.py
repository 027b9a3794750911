"""Python bindings for the stochastic Ising block model laboratory."""

from ._sibm import *  # noqa: F401,F403
