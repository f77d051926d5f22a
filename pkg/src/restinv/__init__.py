"""Exact-arithmetic toolkit for restriction of Coxeter group invariants.

Decides, for a finite Coxeter group W and a parabolic subgroup W_I, whether
restriction of invariants to the fixed subspace X_I is surjective onto the
invariants of the normalizer complement acting on X_I, via the exponent
criterion; derives the normality classification of regular decomposition
classes for Weyl groups.
"""

__version__ = "0.1.0"
