"""Kernel backend selection.

The hot loops (axiom checks, rejection sampling, pairwise distances) exist
twice: a Cython extension (``_fast``) and a pure-Python reference
(``pure``). The compiled one is used when importable; set the environment
variable ``PROPCOM_PURE_KERNEL=1`` to force the fallback. Both produce
bit-identical results, so backend choice never changes any output, only
speed (see ``benchmarks/bench_kernels.py``).
"""

import os

from . import pure

COMPILED = False
if not os.environ.get("PROPCOM_PURE_KERNEL"):
    try:
        from . import _fast  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        _fast = None
else:
    _fast = None

impl = _fast if COMPILED else pure


def backend_name() -> str:
    return impl.NAME


def handle_for(election):
    """Kernel handle for an election, cached on the instance."""
    cached = election._kernel_handle
    if cached is None or cached[0] is not impl:
        cached = (impl, impl.prepare(election.n, election.m, election.k, election.ballots))
        election._kernel_handle = cached
    return cached[1]
