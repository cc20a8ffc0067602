"""Exception types shared across the package."""


class FragrecError(Exception):
    """Base class for all package errors."""


class InputError(FragrecError):
    """Fatal problem with user-supplied inputs (corpus, catalog, config)."""


class AlignmentError(FragrecError):
    """Annotation keys cannot be aligned with the index segmentation."""
