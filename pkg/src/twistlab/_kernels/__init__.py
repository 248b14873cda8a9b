"""Kernel backend selection.

The compiled Cython extension is preferred when present; the numpy
implementation in ``pure.py`` is the drop-in fallback. Setting the
environment variable TWISTLAB_PURE=1 forces the fallback (useful for
the parity tests and the benchmark).
"""

import os

if os.environ.get("TWISTLAB_PURE"):
    from . import pure as impl

    BACKEND = "pure"
else:
    try:
        from . import _fast as impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import pure as impl

        BACKEND = "pure"

xlog_power = impl.xlog_power
orlicz_values = impl.orlicz_values
orlicz_deriv = impl.orlicz_deriv
orlicz_gauge_sum = impl.orlicz_gauge_sum
legendre_conjugate = impl.legendre_conjugate
