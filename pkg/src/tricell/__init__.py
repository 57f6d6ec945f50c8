"""Verification engine for the 244-cell mod-2 chain complex of the variety
of codimension-four triple-point subalgebras on the circle.

The package enumerates the cell census, ingests a verbatim transcription of
the published boundary data, repairs it through an auditable errata ledger,
recomputes all mod-2 homology groups with explicit generators, and certifies
each cell family's defining jet conditions by exact-rational rank
computation.
"""

__version__ = "0.1.0"
