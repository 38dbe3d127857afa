"""Exception hierarchy shared by all tatechar modules."""


class TatecharError(Exception):
    """Base class for all library errors."""


class InvalidModulus(TatecharError):
    """Modulus polynomial fails the requested kind's invariant."""


class UnsupportedPrime(TatecharError):
    """p < 5; short Weierstrass arithmetic needs 2 and 3 invertible."""


class NonUnit(TatecharError):
    """Inverse (or Teichmuller lift) of a non-unit was requested."""


class RingMismatch(TatecharError):
    """Operands live in incompatible rings."""


class RamifiedRing(TatecharError):
    """Operation only provided on unramified towers."""


class RamifiedAutomorphism(TatecharError):
    """Galois conjugation is implemented for Frobenius powers only."""


class OutOfDomain(TatecharError):
    """Argument outside the convergence domain of a p-adic series."""


class PrecisionExhausted(TatecharError):
    """Requested guarantees cannot be met at the working precision."""


class CapExceeded(TatecharError):
    """A configurable enumeration or degree cap was exceeded."""


class NotTorsion(TatecharError):
    """Pairing input is not killed by the stated level."""


class RetriesExhausted(TatecharError):
    """Randomized auxiliary shifts kept hitting degenerate values."""


class HenselFailure(TatecharError):
    """A Hensel/Newton lift met a non-unit derivative."""


class SupersingularReduction(TatecharError):
    """p-part of torsion requested for a supersingular reduction."""


class IterationCapExceeded(TatecharError):
    """Order search did not terminate within the iteration cap."""


class DegenerateConfiguration(TatecharError):
    """Addition chain hit a configuration the cocycle law excludes."""


class OrderMismatch(TatecharError):
    """Character image violates the continuity (torsion) constraint."""


class InsufficientDepth(TatecharError):
    """Character argument not given to the required depth."""


class NoMatch(TatecharError):
    """Exhaustive search found no point with the requested character."""


class NormalizationUnresolved(TatecharError):
    """The pinned global normalization unit failed to verify."""


class ConfigError(TatecharError):
    """CLI configuration did not parse or referenced unknown presets."""


class ComputationError(TatecharError):
    """A CLI task failed; carries the underlying module error."""
