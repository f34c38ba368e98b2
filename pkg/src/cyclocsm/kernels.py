"""Backend selection for the hot sieve kernel.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``CYCLOCSM_PURE`` is set to a non-empty value, the
numpy fallback is used.  Both expose ``multiplicative_table`` with the same
signature.
"""
import os

from . import _pykernels as pure

compiled = None
if not os.environ.get("CYCLOCSM_PURE"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

backend = compiled if compiled is not None else pure
BACKEND = "compiled" if compiled is not None else "pure"
multiplicative_table = backend.multiplicative_table
