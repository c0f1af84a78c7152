from coneseries.standalone.config import default_settings, get_settings
from coneseries.standalone.errors import ConeSeriesError, UsageError
from coneseries.standalone.serialize import canonical_json, input_digest
from coneseries.standalone.thread import RaisingThread

__all__ = [
    "ConeSeriesError",
    "UsageError",
    "default_settings",
    "get_settings",
    "canonical_json",
    "input_digest",
    "RaisingThread",
]
