"""Exception and warning types shared across the package."""


class TopicSumError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(TopicSumError):
    """A configuration value is out of range, unknown, or inconsistent."""


class EmptyDocument(TopicSumError):
    """A document contained no usable text."""


class EmptyCorpus(TopicSumError):
    """No sentence in the corpus survived preprocessing."""


class NoTopics(TopicSumError):
    """Topic inference produced no topics, so no hypergraph can be built."""


class EmptySelection(TopicSumError):
    """No sentence fits the word budget, so no summary can be produced."""


class OracleGuard(TopicSumError):
    """A brute-force oracle was asked to run on an instance too large for it."""


class MetricUndefined(TopicSumError):
    """An evaluation metric is undefined for the given input."""


class ConvergenceWarning(UserWarning):
    """Power iteration hit the iteration cap before reaching tolerance.

    The warning carries the last iterate so callers can inspect or use it.
    """

    def __init__(self, message, scores=None, iterations=None):
        super().__init__(message)
        self.scores = scores
        self.iterations = iterations
