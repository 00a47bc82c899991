"""Symplectic period geometry toolkit.

Modules: `numerics` (matrix kernel and tolerance policy), `sympgrp`
(symplectic/general-symplectic groups), `siegel` (upper half-space and the
fractional-linear action), `derham` (period-vector cohomology and frames),
`qseries` (exact Eisenstein q-expansions), `elliptic` (Weierstrass lattice
sums), `flows` (unipotent flows and their leaves), `cli` (verification
entry point).
"""

__version__ = "0.1.0"

__all__ = [
    "numerics",
    "sympgrp",
    "siegel",
    "derham",
    "qseries",
    "elliptic",
    "flows",
    "cli",
]
