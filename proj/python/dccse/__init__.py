"""DCC-SE keyword-search core with an executable KT-IND-CKA attack harness.

The heavy lifting lives in the compiled ``_dccse`` module; this package
re-exports its surface.
"""

from ._dccse import *  # noqa: F401,F403
from ._dccse import __doc__  # noqa: F401

__version__ = "0.1.0"
