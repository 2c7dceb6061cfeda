"""Phase times for relativistic tunneling through two successive square
barriers: exact closed form, transparent-limit approximations, a Dirac
transfer-matrix scattering oracle, and the superluminality threshold maps."""

try:
    from ._tunnelgate import *  # noqa: F401,F403
    from ._tunnelgate import __version__  # noqa: F401
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _tunnelgate import *  # noqa: F401,F403
    from _tunnelgate import __version__  # noqa: F401
