"""Finite metabelian quotients of knot groups, their covers, and exact
first-homology computations driven by the Alexander polynomial mod p."""

__version__ = "0.1.0"
