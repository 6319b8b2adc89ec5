"""Spectra and stability charts of perturbed gyroscopic systems.

Thin wrapper over the compiled extension; everything lives in `_core`.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
