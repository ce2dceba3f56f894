"""Exact quadratic-tangle calculus for Temperley-Lieb and subfactor planar algebras."""

__version__ = "0.1.0"
