"""Exception taxonomy.

Three failure classes are kept apart on purpose: malformed inputs
(wrong shapes, unparseable files) are structural; mathematically
invalid inputs to an operation (a space that fails its invariants, a
form outside the admissible subspace) are precondition violations; and
a disagreement between two routes that must compute the same answer is
an internal consistency error, i.e. a bug in this library or numerics
gone bad, never a user mistake.
"""

from __future__ import annotations


class StructuralError(ValueError):
    """Shapes, dimensions or file syntax are wrong; no math was attempted."""


class PreconditionError(ValueError):
    """Input is well-formed but violates a documented operation precondition."""


class InternalConsistencyError(RuntimeError):
    """Two independent evaluation routes disagreed beyond tolerance."""
