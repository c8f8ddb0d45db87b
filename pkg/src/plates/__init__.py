"""Exact calculus of permutohedral plates."""
