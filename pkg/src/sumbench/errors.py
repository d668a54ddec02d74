"""Exception types shared across the workbench.

Every error raised by this package derives from ``SumbenchError`` so the CLI
can surface any failure as a one-line diagnostic with the error name.
"""


class SumbenchError(Exception):
    """Base class for all workbench errors."""


# corpus
class SchemaError(SumbenchError):
    """A record is missing a required field or carries an unknown one."""


class DuplicateIdError(SumbenchError):
    """Two records (or candidate lines) share the same id."""


class EmptyCorpusError(SumbenchError):
    """Cleaning dropped every record."""


class UnknownFieldError(SumbenchError):
    """A field name does not exist on the corpus record type."""


class CorpusTooSmallError(SumbenchError):
    """The corpus has fewer records than the split rule needs."""


# text processing / rouge
class InvalidNError(SumbenchError):
    """n-gram order must be a positive integer."""


class EmptyReferenceError(SumbenchError):
    """The reference text has no tokens after normalization."""


class MissingCandidateError(SumbenchError):
    """Requested record ids have no candidate summary."""

    def __init__(self, missing_ids):
        self.missing_ids = sorted(missing_ids)
        super().__init__(f"no candidate summary for ids: {', '.join(self.missing_ids)}")


class MissingRecordError(SumbenchError):
    """Requested record ids are absent from the corpus."""

    def __init__(self, missing_ids):
        self.missing_ids = sorted(missing_ids)
        super().__init__(f"ids not in corpus: {', '.join(self.missing_ids)}")


# baseline
class NoSentencesError(SumbenchError):
    """The text contains no sentences to score."""


# candidates
class MissingModelNameError(SumbenchError):
    """A candidate file header does not name its model."""


# report
class MixedProvenanceError(SumbenchError):
    """Summaries being tabled were computed under different settings."""


class EmptyInputError(SumbenchError):
    """A table builder received nothing to tabulate."""


class UnknownIdError(SumbenchError):
    """The requested record id is not in the corpus."""


# rater service
class UnknownTaskError(SumbenchError):
    """No rating task with this task_id exists."""


class OutOfRangeError(SumbenchError):
    """A rating value lies outside the 1-10 integer scale."""


class DuplicateRatingError(SumbenchError):
    """This rater already rated this task."""


class EmptyStoreError(SumbenchError):
    """The rating store holds no ratings to aggregate."""
