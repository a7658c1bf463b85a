"""Exception types shared across the pipeline and the artifact format."""


class TalkgraphError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(TalkgraphError):
    """An input file is missing a required column or header."""


class ParseError(TalkgraphError):
    """An input row or line could not be decoded; message carries its number."""


class EmptyInputError(TalkgraphError):
    """An operation received or produced no usable data."""


class NotFoundError(TalkgraphError):
    """A talk id or title does not exist in the loaded data."""


class ArtifactError(TalkgraphError):
    """Base class for artifact-file problems."""


class ArtifactVersionError(ArtifactError):
    """The artifact declares a format version this code does not support."""


class ArtifactTruncatedError(ArtifactError):
    """The artifact file ends before a declared section is complete."""


class ArtifactChecksumError(ArtifactError):
    """A section's payload does not match its stored checksum."""


class ArtifactStructureError(ArtifactError):
    """The artifact is structurally invalid (bad magic, wrong kind, missing section)."""
