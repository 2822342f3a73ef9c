"""Certified upper bounds for the Hankel determinants H2(2) and H3(1) over S.

The package chains truncated power series, Grunsky coefficients of the odd
transform ``sqrt(f(z^2))`` and the coefficient identities built on them, and
then certifies the maxima of the two resulting majorants with interval
branch-and-bound.
"""

from hankelcert.errors import HankelCertError

__version__ = "0.1.0"

__all__ = ["HankelCertError", "__version__"]
