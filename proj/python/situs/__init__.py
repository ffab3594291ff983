try:
    from .situs_native import *  # noqa: F401,F403
except ImportError:
    from situs_native import *  # noqa: F401,F403
