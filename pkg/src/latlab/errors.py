"""Shared exception types."""


class SpecError(ValueError):
    """An unparseable or out-of-range family specification (usage error)."""


class ConstructionError(ValueError):
    """A well-formed specification that cannot produce the requested object."""
