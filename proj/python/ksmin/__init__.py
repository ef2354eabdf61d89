"""Concrete smallest Kripke structures.

Thin wrapper over the _ksmin extension: parsing and serialization of
.kripke/.kgram files, bisimulation quotients, graph-grammar folding,
bounded unwinding and CTL checking.
"""

from ._ksmin import *  # noqa: F401,F403
