"""Python face of the continuous-variable perceptron simulator.

Everything lives in the compiled ``_cvqp`` extension; this package simply
re-exports it. When working from a plain CMake build tree (no installed
wheel), point ``CVQP_PYMODULE_DIR`` at the directory containing the built
extension before importing.
"""

import os
import sys

_module_dir = os.environ.get("CVQP_PYMODULE_DIR")
if _module_dir and _module_dir not in sys.path:
    sys.path.insert(0, _module_dir)

from _cvqp import *  # noqa: F401,F403
from _cvqp import __doc__ as _core_doc

__doc__ = (__doc__ or "") + "\n\n" + (_core_doc or "")
