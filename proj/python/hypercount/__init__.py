"""Point counts on a y^2 + b x^2 + c xy = d + e x^2 y^2 + f x^3 y over F_q.

Thin python layer over the C++ core: finite-field tables, character sums,
the p-adic hypergeometric evaluator and the verification campaigns.
"""

from _hypercount import *  # noqa: F401,F403
from _hypercount import __version__  # noqa: F401
