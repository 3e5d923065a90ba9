# Data Access Layer - Config files and run artifacts


from . import config_dal, diagnostics_dal, manifest_dal, snapshot_dal

__all__ = [
    "config_dal",
    "diagnostics_dal",
    "manifest_dal",
    "snapshot_dal",
]
