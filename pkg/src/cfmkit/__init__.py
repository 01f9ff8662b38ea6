"""cfmkit: exact compressed Fourier matrices over finite fields.

Builds concrete finite fields, evaluates characters and Gauss sums in
exact cyclotomic arithmetic, assembles compressed Fourier matrices,
decides the nonvanishing-minors property by exhaustive exact
enumeration, and verifies/constructs the support uncertainty bounds for
symmetric group-ring elements.
"""

__version__ = "0.1.0"
