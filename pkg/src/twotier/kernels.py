"""Backend selection for the split search.

The compiled ``_csplit`` extension is used when it was built; otherwise the
numpy implementation in ``_pysplit``. Set ``TWOTIER_PURE=1`` before import to
force the fallback.
"""

import os

from . import _pysplit

pure = _pysplit

try:
    if os.environ.get("TWOTIER_PURE"):
        raise ImportError("pure backend requested")
    from . import _csplit as compiled
except ImportError:
    compiled = None

backend = compiled if compiled is not None else pure
BACKEND_NAME = "cython" if compiled is not None else "numpy"

best_split_regression = backend.best_split_regression
best_split_classification = backend.best_split_classification
