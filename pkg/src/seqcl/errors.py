"""Exception types shared across the package."""


class SeqclError(Exception):
    """Base class for all seqcl runtime errors."""


class ConfigError(SeqclError):
    """Invalid configuration or usage; maps to CLI exit code 2."""


class ParseError(SeqclError):
    """Malformed corpus file (carries a line number in the message)."""


class SchemeError(SeqclError):
    """Label inconsistent with the declared labeling scheme."""


class CheckpointError(SeqclError):
    """Unreadable, truncated, or internally inconsistent checkpoint."""
