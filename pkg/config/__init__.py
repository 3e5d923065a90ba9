# Config package - Environment-derived runtime settings

from . import settings
from .settings import RuntimeSettings, load_settings, resolve_output_dir

__all__ = ["settings", "RuntimeSettings", "load_settings", "resolve_output_dir"]
