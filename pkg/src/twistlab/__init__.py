"""twistlab: finite-dimensional numerics and verification suites for twisted
Hilbert sequence spaces built from strip-analytic selectors.

Subpackages follow the functional split: sequences (vector arithmetic),
orlicz (gauges and duals), calderon (the extremal selector), twisted
(quasi-norms and pairings), diagrams (map families and block operators),
weighted (the weighted Hilbert couple), experiments/cli (the verification
runner). The hot kernels live in ``twistlab._kernels`` with a compiled
backend and a numpy fallback chosen at import.
"""

from ._kernels import BACKEND as kernel_backend

__all__ = ["kernel_backend"]
__version__ = "0.1.0"
