# SPDX-License-Identifier: Apache-2.0
"""Secrecy-rate optimization for continuous-aperture transmitters.

Thin python layer over the compiled core: channel evaluation, Gauss-Legendre
quadrature, the channel-subspace penalty-SCA optimizer, the two-stage ZF-MRT
design, comparison baselines and the seeded experiment harness.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
