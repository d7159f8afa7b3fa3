"""
Configuration manager for the toolkit config (kjb.toml).
"""

import copy
import logging
import os
import sys

import tomlkit

from app.config.factor_definitions import DEFAULTS

APP_NAME = "kjb"

logger = logging.getLogger(__name__)

# Frozen builds keep kjb.toml next to the executable.
if getattr(sys, "frozen", False):
    _APP_DIR = os.path.dirname(sys.executable)
else:
    _APP_DIR = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

CONFIG_FILE = os.path.join(_APP_DIR, "kjb.toml")


class ConfigManager:
    def __init__(self, path: str | None = None):
        self.path = path or CONFIG_FILE
        self._doc = self._load()

    # ------------------------------------------------------------------
    # Low-level load / save
    # ------------------------------------------------------------------
    def _load(self) -> tomlkit.TOMLDocument:
        if os.path.isfile(self.path):
            try:
                with open(self.path, "r", encoding="utf-8") as f:
                    return tomlkit.parse(f.read())
            except Exception as exc:
                logger.warning("Ignoring unreadable config %s: %s", self.path, exc)
        return tomlkit.document()

    def save(self):
        with open(self.path, "w", encoding="utf-8") as f:
            f.write(tomlkit.dumps(self._doc))

    def reload(self):
        self._doc = self._load()

    # ------------------------------------------------------------------
    # Raw access
    # ------------------------------------------------------------------
    def get(self, section: str, key: str, default=None):
        table = self._doc.get(section)
        if table is not None and key in table:
            value = table[key]
            return value.unwrap() if hasattr(value, "unwrap") else value
        if default is not None:
            return default
        return DEFAULTS.get(section, {}).get(key)

    def set(self, section: str, key: str, value):
        if section not in self._doc:
            self._doc[section] = tomlkit.table()
        self._doc[section][key] = value
        self.save()

    def as_dict(self) -> dict:
        merged = copy.deepcopy(DEFAULTS)
        for section, values in self._doc.unwrap().items():
            if isinstance(values, dict):
                merged.setdefault(section, {}).update(values)
        return merged

    # ------------------------------------------------------------------
    # Oracle
    # ------------------------------------------------------------------
    def get_seed(self) -> int:
        return int(self.get("oracle", "seed"))

    def get_budget(self) -> int:
        return int(self.get("oracle", "budget"))

    def set_budget(self, budget: int):
        self.set("oracle", "budget", budget)

    # ------------------------------------------------------------------
    # Verification limits
    # ------------------------------------------------------------------
    def get_max_rank(self) -> int:
        return int(self.get("verify", "max_rank"))

    def get_max_n(self) -> int:
        return int(self.get("verify", "max_n"))

    def get_max_dim(self) -> int:
        return int(self.get("verify", "max_dim"))

    # ------------------------------------------------------------------
    # Output
    # ------------------------------------------------------------------
    def get_indent(self) -> int:
        return int(self.get("output", "indent"))
