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

import sys
import argparse
import textwrap

class FriendlyArgumentParser(argparse.ArgumentParser):
	"""Prints the error followed by the full help page and exits with status
	1 on any usage error."""
	EXIT_USAGE = 1

	def error(self, msg):
		for line in textwrap.wrap(f"Error: {msg}", subsequent_indent = "  "):
			print(line, file = sys.stderr)
		print(file = sys.stderr)
		self.print_help(file = sys.stderr)
		sys.exit(self.EXIT_USAGE)

	def option_actions(self):
		"""Every long option keyed by its name, dashes as underscores."""
		return { option[2:].replace("-", "_"): action for action in self._actions for option in action.option_strings if option.startswith("--") }

def positive_int(value: str):
	result = int(value)
	if result < 1:
		raise argparse.ArgumentTypeError(f"must be a positive integer: {value}")
	return result

def nonnegative_int(value: str):
	result = int(value)
	if result < 0:
		raise argparse.ArgumentTypeError(f"must not be negative: {value}")
	return result

def positive_float(value: str):
	result = float(value)
	if not (result > 0):
		raise argparse.ArgumentTypeError(f"must be positive: {value}")
	return result

def nonnegative_float(value: str):
	result = float(value)
	if not (result >= 0):
		raise argparse.ArgumentTypeError(f"must not be negative: {value}")
	return result

def unit_interval(value: str):
	result = float(value)
	if not (0 < result <= 1):
		raise argparse.ArgumentTypeError(f"must lie in (0, 1]: {value}")
	return result

def pathname(value: str):
	if value == "":
		raise argparse.ArgumentTypeError("empty filename")
	return value

def float_list(value: str):
	if isinstance(value, (list, tuple)):
		return [ float(item) for item in value ]
	try:
		result = [ float(item) for item in value.split(",") if item.strip() != "" ]
	except ValueError:
		raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {value}")
	if len(result) == 0:
		raise argparse.ArgumentTypeError("empty list")
	return result
