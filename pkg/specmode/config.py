"""
Run configuration for the CLI.

A RunConfig is built from an optional JSON file, then explicit command line
flags are layered on top (flags win). The same setting can arrive under
different names, e.g. "nHard" from a hand-written file or "n_hard" from a
flag, so keys go through a synonym table and values are coerced to their
declared types. Whatever the source, the result reads the same way:
config.n_hard, config.fmin == config.f_min, and so on.
"""

import json

from specmode.errors import ConfigError


def _positive_int(value):
    value = int(value)
    if value < 1:
        raise ValueError("must be a positive integer")
    return value


def _uint64(value):
    value = int(value)
    if not 0 <= value < 2**64:
        raise ValueError("must fit in an unsigned 64 bit integer")
    return value


def _output_format(value):
    value = str(value).lower()
    if value not in ("csv", "json"):
        raise ValueError("must be csv or json")
    return value


def cast_types(items, types, synonyms):
    new_items = {}
    for item, value in items.items():
        name = synonyms.get(item, item)
        if value is None:
            continue
        if name in types:
            try:
                value = types[name](value)
            except (TypeError, ValueError) as e:
                raise ConfigError("Bad value for '{}': {}".format(item, e))
        new_items[name] = value
    return new_items


class RunConfig:
    # Alternative spellings accepted in config files, mapped to canonical names
    synonyms = {
        "nHard": "n_hard",
        "nhard": "n_hard",
        "fmin": "f_min",
        "F_min": "f_min",
        "fMin": "f_min",
        "P": "purity",
        "eps": "epsilon",
        "out": "output",
        "fmt": "format",
    }

    types = {
        "n": _positive_int,
        "n_hard": _positive_int,
        "m": _positive_int,
        "b": _positive_int,
        "epsilon": float,
        "purity": float,
        "f_min": float,
        "seed": _uint64,
        "samples": _positive_int,
        "budget": _positive_int,
        "steps": _positive_int,
        "format": _output_format,
        "n_min": _positive_int,
        "n_max": _positive_int,
        "n_hard_min": _positive_int,
        "n_hard_max": _positive_int,
        "p_min": float,
        "p_max": float,
        "f_min_start": float,
        "f_min_stop": float,
    }

    def __init__(self, *args, **kwds):
        # Take either a dict as positional arg or kwds
        if args:
            kwds = dict(args[0])
        self.__dict__.update(cast_types(kwds, self.types, self.synonyms))

    def __getattr__(self, name):
        try:
            return self.__dict__[self.synonyms[name]]
        except KeyError:
            raise AttributeError("'RunConfig' object has no attribute '{}'".format(name))

    def __contains__(self, name):
        return self.synonyms.get(name, name) in self.__dict__

    def __repr__(self):
        return "RunConfig({})".format(self.__dict__)

    def get(self, name, default=None):
        return self.__dict__.get(self.synonyms.get(name, name), default)

    def require(self, *names):
        missing = [name for name in names if name not in self]
        if missing:
            raise ConfigError("Missing required setting(s): {}".format(", ".join(missing)))
        values = [self.get(name) for name in names]
        return values[0] if len(values) == 1 else values

    def merged(self, overrides):
        """New config with `overrides` applied on top, skipping unset (None) flags."""
        items = dict(self.__dict__)
        items.update(cast_types(overrides, self.types, self.synonyms))
        return RunConfig(items)

    def grid(self, start_key, stop_key, default_start, default_stop):
        """Evenly spaced grid between two settings, `steps` points inclusive."""
        start = float(self.get(start_key, default_start))
        stop = float(self.get(stop_key, default_stop))
        steps = self.get("steps", 21)
        if stop < start:
            raise ConfigError("Empty grid: {}={} is above {}={}".format(start_key, start, stop_key, stop))
        if steps == 1:
            return [start]
        return [start + (stop - start) * i / (steps - 1) for i in range(steps)]

    def integer_range(self, start_key, stop_key, default_start, default_stop):
        start = int(self.get(start_key, default_start))
        stop = int(self.get(stop_key, default_stop))
        if stop < start:
            raise ConfigError("Empty range: {}={} is above {}={}".format(start_key, start, stop_key, stop))
        return list(range(start, stop + 1))

    @classmethod
    def load(cls, path=None, overrides=None):
        items = {}
        if path is not None:
            try:
                with open(path) as f:
                    items = json.load(f)
            except (OSError, ValueError) as e:
                raise ConfigError("Can't read config {}: {}".format(path, e))
            if not isinstance(items, dict):
                raise ConfigError("Config {} must hold a JSON object".format(path))
        config = cls(items)
        if overrides:
            config = config.merged(overrides)
        return config
