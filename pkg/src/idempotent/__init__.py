"""Idempotent (tropical) mathematics: semirings, linear and spectral algebra,
group representations, transforms and the dequantization bridge."""
from .errors import *  # noqa: F401,F403
from .semiring import *  # noqa: F401,F403
from .linalg import *  # noqa: F401,F403
from .spectral import *  # noqa: F401,F403
from .groups import *  # noqa: F401,F403
from .representations import *  # noqa: F401,F403
from .transforms import *  # noqa: F401,F403
from .dequantization import *  # noqa: F401,F403

__version__ = "0.1.0"
