from ._heightgap import *          # noqa: F401,F403
from ._heightgap import __doc__    # noqa: F401
