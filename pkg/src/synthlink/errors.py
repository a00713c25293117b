"""Exception hierarchy.

``ConfigurationError`` covers invalid parameters (bad spec, fraction out of
range, unknown preset); ``DataFormatError`` covers malformed or inconsistent
input data. The CLI maps them to exit codes 1 and 2 respectively.
"""


class SynthLinkError(Exception):
    """Base class for all package errors."""


class ConfigurationError(SynthLinkError, ValueError):
    """Invalid parameters or a violated precondition."""


class DataFormatError(SynthLinkError, ValueError):
    """Malformed file contents or a graph that breaks the model's invariants."""
