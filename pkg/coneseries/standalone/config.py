import os
from typing import Optional

default_settings = {
    "max_points": 100000,
    "max_dimension": 4,
    "gap_horizon": 50,
    "hensel_max_steps": 10000,
    "dioph_search_limit": 100000,
    "max_workers": 1,
    "cache_directory": None,
    "log_level": "WARNING",
}

environment_dict = {
    "max_points": ("CONESERIES_MAX_POINTS", int),
    "max_workers": ("CONESERIES_MAX_WORKERS", int),
    "cache_directory": ("CONESERIES_CACHE_DIRECTORY", str),
    "log_level": ("CONESERIES_LOG_LEVEL", str),
}


def get_settings(settings: Optional[dict] = None, **kwargs) -> dict:
    """
    Merge explicit settings with the environment and the defaults. Explicit keyword arguments win over the settings
    dictionary, which wins over environment variables, which win over default_settings.

    Args:
        settings (dict, optional): partial settings dictionary
        **kwargs: individual settings, ignored when None

    Returns:
        dict: complete settings dictionary
    """
    if settings is None:
        settings = {}
    settings = settings.copy()
    settings.update({k: v for k, v in kwargs.items() if v is not None})
    for key, (variable, convert) in environment_dict.items():
        if key not in settings and variable in os.environ:
            settings[key] = convert(os.environ[variable])
    settings.update({k: v for k, v in default_settings.items() if k not in settings})
    return settings
