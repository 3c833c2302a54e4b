"""Select the block-counting kernel at import time.

The compiled extension is used when it imports; ``INFOMETER_PURE=1`` forces
the pure-Python path.
"""

import os

from . import _pure

if os.environ.get("INFOMETER_PURE"):
    kernel = _pure
else:
    try:
        from . import _kernel as kernel
    except ImportError:
        kernel = _pure

NAME = "compiled" if kernel is not _pure else "pure"
