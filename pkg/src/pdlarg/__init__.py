"""Prioritised default logic and its structured-argumentation counterpart.

The default-logic side lives in :mod:`pdlarg.pdl`, the argumentation side in
:mod:`pdlarg.arguments` and :mod:`pdlarg.dung`, and :mod:`pdlarg.verify`
checks that the two agree.
"""

__version__ = "0.1.0"

from .errors import (CapacityError, InputError, OrderConflictError, ParseError, PdlargError,
                     ValidationError, VocabularyError)
from .logic import *  # noqa: F401,F403
from .theory import *  # noqa: F401,F403
from .pdl import *  # noqa: F401,F403
from .sp import *  # noqa: F401,F403
from .arguments import *  # noqa: F401,F403
from .dung import *  # noqa: F401,F403
from .verify import *  # noqa: F401,F403
from .io import *  # noqa: F401,F403
from .generate import *  # noqa: F401,F403
from .export import *  # noqa: F401,F403
