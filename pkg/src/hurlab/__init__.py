"""Computational toolkit for geodesic permutation PMQs and Hurwitz spaces."""
