"""Exact symbolic kernel for the q-Onsager algebra.

Subpackages build on each other in this order: scalars (exact Q(q, c)
arithmetic), freealg (the free algebra on B0, B1), rewrite (degree-bounded
noncommutative Groebner engine), roots (root vectors and named elements),
pbw (ordered-basis straightening engine), classical (the Onsager Lie algebra
oracle), exprlang and cli (front end).
"""

__version__ = "0.1.0"
