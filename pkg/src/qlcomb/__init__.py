"""Exact combinatorics for affine Weyl groups, level duality and block matching."""
