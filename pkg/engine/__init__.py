"""Numerical core: states, distributions, entropies, excess audits and the mu search."""
