"""
Exception hierarchy raised by the services and domain types.
"""


class SymcapError(Exception):
    """Base class for every error raised by this package"""


class DimensionMismatchError(SymcapError, ValueError):
    """Operands have incompatible shapes"""


class InvalidMatrixError(SymcapError, ValueError):
    """A matrix violates the invariants of its domain type"""


class InfeasibleParameterError(SymcapError, ValueError):
    """Parameters do not describe a point of the reduced set"""


class UnsupportedGroupError(SymcapError):
    """The requested closed form or reduction is not available for the group"""


class NotStandardSymmetryError(SymcapError):
    """The eigenphases of a unitary satisfy an integer relation"""


class NoDeclaredSymmetryError(SymcapError):
    """A channel model carries no symmetry annotation"""


class GroupClosureError(SymcapError):
    """A finite multiset was used where a group is required"""


class ChannelSamplerError(SymcapError):
    """A custom sampler produced draws of the wrong shape"""


class ConfigError(SymcapError, ValueError):
    """A run configuration is invalid"""
