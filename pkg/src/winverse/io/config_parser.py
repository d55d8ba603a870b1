import os

from ruamel.yaml import YAML

root_path = os.path.dirname(os.path.dirname(__file__))
DEFAULT_CONFIG = os.path.join(root_path, 'assets', 'config.yml')


class ConfigParser:
    """
    YAML configuration layered over the packaged defaults.

    Keys missing from the user file fall back to ``assets/config.yml``.
    """

    def __init__(self, config_path=None):
        self.config_path = config_path
        self.yaml = YAML(typ="safe")
        self.config_data = self.load(DEFAULT_CONFIG)
        if config_path is not None:
            self.config_data = self._recursive_update(self.config_data, self.load(config_path) or {})

    def load(self, path=None):
        """Load data from a YAML file."""
        path = path or self.config_path
        if not os.path.isfile(path):
            raise FileNotFoundError(f"Config file not found: {path}")
        with open(path, 'r') as file:
            data = self.yaml.load(file)
        return dict(data or {})

    def _recursive_update(self, data, updates):
        """Recursively update dictionary values."""
        for key, value in updates.items():
            if isinstance(value, dict) and key in data:
                data[key] = self._recursive_update(dict(data[key]), value)
            else:
                data[key] = value
        return data

    def update(self, updates):
        """Update the current config with new values; None values are ignored."""
        updates = {key: value for key, value in updates.items() if value is not None}
        self.config_data = self._recursive_update(self.config_data, updates)

    def get(self, key, default=None):
        """Retrieve a value from the configuration."""
        return self.config_data.get(key, default)

    def __getitem__(self, key):
        return self.get(key, None)

    def __repr__(self):
        return repr(self.config_data)
