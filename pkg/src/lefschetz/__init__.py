"""Weak Lefschetz property for ideals generated by powers of general linear forms.

Closed-form Hilbert functions, a randomized exact-rank oracle over a prime
field, divisor arithmetic on blowups of P^2, Gelfand-Tsetlin pattern counts
and an analyzer that cross-checks symbolic verdicts against the oracle.
"""

from lefschetz.hilbert import AlgebraSpec, HilbertFunction
from lefschetz.oracle import OracleConfig

__all__ = ["AlgebraSpec", "HilbertFunction", "OracleConfig"]
__version__ = "0.1.0"
