"""
This module provides configuration support for tree_partitions.

Settings are plain values with defaults; a YAML file (read with ruamel.yaml)
may override any of them.
"""
import logging
import pathlib
from dataclasses import dataclass, fields, replace

import ruamel.yaml

from .errors import InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings():
    """
    Tunable limits and defaults.

    The exact and brute-force searches refuse instances above their limit
    instead of sampling, so the limits are part of what a run means and are
    recorded in run manifests.
    """
    exact_pathwidth_limit: int = 20
    brute_pathwidth_limit: int = 9
    brute_path_partition_limit: int = 20
    brute_tree_partition_limit: int = 8
    log_level: str = "WARNING"
    sweep_jobs: int = 1

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


class SettingsMgr():
    """
    Hold the settings in effect for the process.

    Settings files are dispatched by suffix, new formats can be provided with
    the decorator @SettingsMgr.register_settings_parser
    """
    _settings = Settings()
    _settings_parsers = dict()

    @classmethod
    def register_settings_parser(cls, extension):
        """Register a parser turning a settings file into a dict"""
        def anon_reg_func(callback):
            logger.debug("registering settings parser for '%s'", extension)
            cls._settings_parsers[extension] = callback
            return callback
        return anon_reg_func

    @classmethod
    def current(cls):
        """Return the settings in effect"""
        return cls._settings

    @classmethod
    def reset(cls):
        """Restore the built-in defaults"""
        cls._settings = Settings()

    @classmethod
    def update(cls, **overrides):
        """Replace individual settings, rejecting unknown keys"""
        known = {f.name for f in fields(Settings)}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise InputError(f"Unknown settings {unknown}; known settings are {sorted(known)}")
        cls._settings = replace(cls._settings, **overrides)
        return cls._settings

    @classmethod
    def load(cls, settings_path):
        """Load settings from a file, dispatching on its suffix"""
        suffix = pathlib.Path(settings_path).suffix
        if suffix not in cls._settings_parsers:
            raise InputError(f"No settings parser for '{suffix}' files")
        data = cls._settings_parsers[suffix](settings_path) or {}
        logger.debug("loaded settings %s from %s", data, settings_path)
        return cls.update(**data)


@SettingsMgr.register_settings_parser('.yml')
@SettingsMgr.register_settings_parser('.yaml')
def load_settings_yml(settings_path):
    """Parse a settings file written in yaml"""
    yaml = ruamel.yaml.YAML(typ='safe')
    with open(settings_path, "r") as settings_file:
        data = yaml.load(settings_file)
    if data is not None and not isinstance(data, dict):
        raise InputError(f"Settings file {settings_path} must hold a mapping")
    return data


def resolve_limit(limit, name):
    """Return limit, or the configured value of the named setting when limit is None"""
    if limit is None:
        return getattr(SettingsMgr.current(), name)
    return limit
