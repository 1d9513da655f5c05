"""Exact verification toolkit for ramification of linear series and the S^2W divisor computations."""

__version__ = "0.1.0"
