#	uospost - Union-of-subspaces modeling of class-conditional posteriors
#	Copyright (C) 2025-2026 The uospost authors
#
#	This file is part of uospost.
#
#	uospost is free software; you can redistribute it and/or modify
#	it under the terms of the GNU General Public License as published by
#	the Free Software Foundation; this program is ONLY licensed under
#	version 3 of the License, later versions are explicitly excluded.
#
#	uospost is distributed in the hope that it will be useful,
#	but WITHOUT ANY WARRANTY; without even the implied warranty of
#	MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#	GNU General Public License for more details.
#
#	You should have received a copy of the GNU General Public License
#	along with uospost; if not, write to the Free Software
#	Foundation, Inc., 59 Temple Place, Suite 330, Boston, MA  02111-1307  USA

import os
import argparse
import logging
from .FriendlyArgumentParser import FriendlyArgumentParser, pathname
from .Exceptions import ConfigurationError

_log = logging.getLogger(__spec__.name)

class RunConfig():
	"""Flat 'key = value' file holding default values for command-line flags.
	Keys are flag names (dashes or underscores); explicit flags win."""
	_TRUE_VALUES = ("1", "true", "yes", "on")
	_FALSE_VALUES = ("0", "false", "no", "off")

	def __init__(self, values: dict[str, str] | None = None, base_dir: str = "."):
		self._values = values if (values is not None) else { }
		self._base_dir = base_dir

	@classmethod
	def load_from_file(cls, filename: str):
		values = { }
		with open(filename, encoding = "utf-8") as f:
			for (lineno, line) in enumerate(f, 1):
				line = line.split("#", 1)[0].strip()
				if line == "":
					continue
				if "=" not in line:
					raise ConfigurationError(f"{filename}:{lineno}: expected 'key = value', got {line!r}")
				(key, value) = (part.strip() for part in line.split("=", 1))
				key = key.lstrip("-").replace("-", "_")
				if key in values:
					raise ConfigurationError(f"{filename}:{lineno}: duplicate key {key!r}")
				values[key] = value
		_log.debug("Loaded %d settings from %s", len(values), filename)
		return cls(values, base_dir = os.path.dirname(os.path.abspath(filename)))

	@property
	def values(self):
		return dict(self._values)

	def _convert(self, key: str, value: str, action: argparse.Action):
		if (action.nargs == 0) and isinstance(action.const, bool):
			if value.lower() in self._TRUE_VALUES:
				return action.const
			if value.lower() in self._FALSE_VALUES:
				return not action.const
			raise ConfigurationError(f"{key}: expected a boolean, got {value!r}")
		if action.nargs in ("+", "*"):
			return [ self._convert_single(key, item.strip(), action) for item in value.split(",") if item.strip() != "" ]
		return self._convert_single(key, value, action)

	def _convert_single(self, key: str, value: str, action: argparse.Action):
		try:
			converted = action.type(value) if (action.type is not None) else value
		except (ValueError, argparse.ArgumentTypeError) as e:
			raise ConfigurationError(f"{key}: {e}") from e
		if (action.choices is not None) and (converted not in action.choices):
			raise ConfigurationError(f"{key}: {value!r} is not one of {', '.join(str(choice) for choice in action.choices)}")
		if (action.type is pathname) and not os.path.isabs(converted):
			converted = os.path.join(self._base_dir, converted)
		return converted

	def resolve(self, parser: FriendlyArgumentParser) -> dict:
		actions = parser.option_actions()
		actions.pop("config", None)
		actions.pop("help", None)
		unknown = sorted(set(self._values) - set(actions))
		if len(unknown) > 0:
			raise ConfigurationError(f"unknown configuration key(s): {', '.join(unknown)}")
		return { actions[key].dest: self._convert(key, value, actions[key]) for (key, value) in self._values.items() }

	def apply(self, parser: FriendlyArgumentParser):
		parser.set_defaults(**self.resolve(parser))
