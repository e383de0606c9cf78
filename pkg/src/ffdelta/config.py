"""Tunable limits and default thresholds.

Every guard and empirical threshold used by the toolkit lives here so that
experiment reports can record exactly which knobs were in effect.  All of
them can be overridden per call; these are only the defaults.
"""

import os

#: Hard ceiling on the field size q and on the space size q**d.  Dense
#: indicators and full-length transforms are allocated up to this size.
#: Override with the FFDELTA_MAX_ELEMENTS environment variable.
MAX_ELEMENTS = int(os.environ.get("FFDELTA_MAX_ELEMENTS", 2**20))

#: Pair-operation guard for the exhaustive quadruple-counting energy loop:
#: refuse when |A|^2 * |B| exceeds this.
BRUTE_GUARD = 10**8

#: Absolute tolerance when a float that must be an integer is rounded.
#: Exceeding it is an error (numerical breakdown), never a warning.
ROUNDING_TOL = 0.25

#: Default empirical ratio threshold for order-of-magnitude checks whose
#: implied constants are not pinned by an exact proof.  Recorded in every
#: report; this is an experiment parameter, not a claim.
RATIO_THRESHOLD = 1.0 / 8.0

#: A set counts as Salem for the difference-set checks when its scaled
#: maximal nonzero Fourier coefficient is at most this.
SALEM_THRESHOLD = 2.0

#: Largest admissible exceptional-translate set for the bounded-overlap
#: difference checks.
W_MAX = 4
