"""Exact Rees algebras over QQ and GF(p): closures, elimination, blow-up charts and invariants."""

from .field import *  # noqa: F401,F403
from .poly import *  # noqa: F401,F403
from .polyalg import *  # noqa: F401,F403
from .rees import *  # noqa: F401,F403
from .elimination import *  # noqa: F401,F403
from .transform import *  # noqa: F401,F403
from .invariants import *  # noqa: F401,F403
from .probes import *  # noqa: F401,F403
from .session import Report, ScriptError, run_session, run_text  # noqa: F401

__version__ = "0.1.0"
