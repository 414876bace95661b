# src/errors.py
from __future__ import annotations


class ExlabError(ValueError):
    """Base class for every domain error raised by the library."""


class ComplexError(ExlabError):
    """Malformed complex or vertex outside the complex's range."""


class PreconditionError(ExlabError):
    """An operation was called outside its documented precondition."""


class ScenarioError(ExlabError):
    """Bad event label, unknown event or inconsistent box scenario."""


class ConfigError(ExlabError):
    """Invalid environment configuration."""


class LPError(ExlabError):
    """The linear program has no optimum."""


class InfeasibleError(LPError):
    pass


class UnboundedError(LPError):
    pass
