from ._qnipm import *  # noqa: F401,F403
from ._qnipm import __doc__  # noqa: F401
