"""Domain exceptions shared across the package."""


class LogTriageError(Exception):
    """Base class for all domain errors."""


class EmptyLogError(LogTriageError):
    """No usable terms survived preprocessing; the log is unanalyzable."""


class DuplicateAlarmError(LogTriageError):
    """An alarm with this id is already in the corpus."""


class UnknownRecordError(LogTriageError):
    """Referenced record id does not exist."""


class UnknownLabelError(LogTriageError):
    """Cause label is not registered for this corpus."""


class NoHistoryError(LogTriageError):
    """No historical records available; no prediction possible."""


class InsufficientDaysError(LogTriageError):
    """Incremental evaluation needs at least two distinct testing days."""


class NoPredictionsError(LogTriageError):
    """Accuracy requested over zero analyzed alarms."""


class DegenerateClassError(LogTriageError):
    """AUC undefined: the class has no positives or no negatives."""
