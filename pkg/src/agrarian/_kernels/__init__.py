"""Modular arithmetic kernels.

The compiled extension is used when it was built; setting
``AGRARIAN_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

BACKEND = "python"

if os.environ.get("AGRARIAN_PURE_PYTHON") != "1":
    try:
        from ._ckernels import PRIME, det_mod_p, eval_terms_mod_p, rank_mod_p

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._pykernels import PRIME, det_mod_p, eval_terms_mod_p, rank_mod_p

__all__ = ["BACKEND", "PRIME", "det_mod_p", "eval_terms_mod_p", "rank_mod_p"]
