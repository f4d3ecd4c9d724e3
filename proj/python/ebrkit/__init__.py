"""Rank-one Kraus decompositions of entanglement-breaking channels.

Thin wrapper over the compiled ``_ebrkit`` extension: discrete Weyl matrices,
Choi/Kraus machinery, SIC POVM verification, MUB witnesses, and the
decomposition searches. Matrices and vectors are numpy complex arrays.
"""

from ._ebrkit import *  # noqa: F401,F403
from ._ebrkit import __version__  # noqa: F401
