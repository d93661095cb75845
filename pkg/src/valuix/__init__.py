"""Exact valuative invariants of monomial-type singularities.

Everything is computed in exact rational arithmetic: Newton regions and
their covolumes, monomial and shifted-monomial valuations, multiplier
ideals and log canonical thresholds, nef envelopes on toric fans, mixed
multiplicities and intersection numbers, and atomic Monge-Ampere
measures on the space of normalized monomial valuations.
"""

__version__ = "0.1.0"
