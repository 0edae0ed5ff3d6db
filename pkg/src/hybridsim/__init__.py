"""Design and simulation tools for coupling a trapped ion to a superconducting LC circuit."""

__version__ = "0.1.0"
