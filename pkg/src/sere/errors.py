"""Exception hierarchy shared across the package."""


class SereError(Exception):
    """Base class for all errors raised by this package."""


class NoMatchError(SereError):
    """The search backend returned no article for the query term."""

    def __init__(self, term: str):
        super().__init__(f"no article found for {term!r}")
        self.term = term


class AllSourcesFailedError(SereError):
    """Every harvest source failed; no candidate set could be built."""


class ScoreDomainError(SereError):
    """Hit counts outside the domain of the distance formula."""


class ProviderError(SereError):
    """A remote (or simulated remote) data source failed.

    ``retriable`` distinguishes transient faults (timeouts, 5xx, rate
    limits) from permanent ones (malformed payloads, 4xx).
    """

    def __init__(self, message: str, endpoint: str = "", retriable: bool = False):
        super().__init__(message)
        self.endpoint = endpoint
        self.retriable = retriable


class NetworkError(ProviderError):
    def __init__(self, message: str, endpoint: str = ""):
        super().__init__(message, endpoint=endpoint, retriable=True)


class HttpStatusError(ProviderError):
    def __init__(self, status: int, endpoint: str = ""):
        super().__init__(
            f"HTTP {status} from {endpoint}",
            endpoint=endpoint,
            retriable=status >= 500,
        )
        self.status = status


class RateLimitError(ProviderError):
    def __init__(self, endpoint: str = ""):
        super().__init__(f"rate limited by {endpoint}", endpoint=endpoint, retriable=True)


class MalformedResponseError(ProviderError):
    def __init__(self, message: str, endpoint: str = ""):
        super().__init__(message, endpoint=endpoint, retriable=False)


class CapabilityNotSupported(SereError):
    """The provider does not implement the requested capability."""

    def __init__(self, capability: str):
        super().__init__(f"provider does not support {capability}")
        self.capability = capability


class CorpusFormatError(SereError):
    """A corpus file failed validation; carries the offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DuplicateTitleError(CorpusFormatError):
    def __init__(self, line: int, title: str):
        super().__init__(line, f"duplicate article title {title!r}")
        self.title = title
