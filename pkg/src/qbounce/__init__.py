"""qbounce: quantum states of ultracold neutrons bouncing above a mirror.

Computes the gravitationally bound spectrum (shifted Airy functions),
resonant-transition observables, Earth-rotation energy shifts, and the
loss-rate budget of a storage trap with imperfect mirrors and walls.
"""

from .airy import BACKEND, airy_ai, airy_ai_prime, airy_zero, airy_zeros
from .constants import GravityScales, PhysicalConstants
from .eigenstates import EigenstateTable

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "EigenstateTable",
    "GravityScales",
    "PhysicalConstants",
    "airy_ai",
    "airy_ai_prime",
    "airy_zero",
    "airy_zeros",
    "__version__",
]
