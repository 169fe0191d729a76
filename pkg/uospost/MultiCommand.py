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
import logging
import textwrap
import dataclasses

from .FriendlyArgumentParser import FriendlyArgumentParser
from .RunConfig import RunConfig

@dataclasses.dataclass(frozen = True)
class RegisteredCommand():
	name: str
	description: str
	parser_generator: "callable"
	action: type

class MultiCommand():
	"""Dispatches 'prog command [options]' to one of the registered actions.
	Commands can be abbreviated to any unique prefix. A '-C' configuration
	file supplies defaults for every option of the chosen command."""
	EXIT_USAGE = 1

	def __init__(self, description: str | None = None, prog: str | None = None):
		self._description = description
		self._prog = prog if (prog is not None) else sys.argv[0]
		self._commands = { }

	def register(self, name: str, description: str, parser_generator: "callable", action: type):
		if name in self._commands:
			raise ValueError(f"Command '{name}' already registered.")
		self._commands[name] = RegisteredCommand(name = name, description = description, parser_generator = parser_generator, action = action)

	@property
	def commands(self):
		return list(self._commands)

	def _show_syntax(self, msg: str | None = None):
		f = sys.stderr if (msg is not None) else sys.stdout
		if msg is not None:
			print(f"Error: {msg}", file = f)
		print(f"usage: {self._prog} [command] [options]", file = f)
		print(file = f)
		if self._description is not None:
			print(self._description, file = f)
			print(file = f)
		print("Available commands:", file = f)
		for command in self._commands.values():
			name_column = command.name
			for description_line in textwrap.wrap(command.description, width = 56):
				print(f"    {name_column:<15s}    {description_line}", file = f)
				name_column = ""
		print(file = f)
		print("Options vary from command to command. To receive further info, type", file = f)
		print(f"    {self._prog} [command] --help", file = f)

	def match_command(self, value: str) -> RegisteredCommand | None:
		if value in self._commands:
			return self._commands[value]
		matches = sorted(name for name in self._commands if name.startswith(value))
		if len(matches) == 1:
			return self._commands[matches[0]]
		if len(matches) == 0:
			self._show_syntax(f"'{value}' is not a command.")
		else:
			self._show_syntax(f"'{value}' is ambiguous, could be any of {', '.join(matches)}.")
		return None

	def build_parser(self, command: RegisteredCommand) -> FriendlyArgumentParser:
		parser = FriendlyArgumentParser(prog = f"{self._prog} {command.name}", description = command.description, add_help = False)
		command.parser_generator(parser)
		parser.add_argument("--help", action = "help", help = "Show this help page.")
		return parser

	def parse(self, cmdline: list[str]):
		"""Returns (command, args), or None after the syntax was shown."""
		command = self.match_command(cmdline[0])
		if command is None:
			return None
		parser = self.build_parser(command)
		args = parser.parse_args(cmdline[1:])
		if getattr(args, "config", None) is not None:
			# Second pass: file values become defaults, explicit flags still win
			RunConfig.load_from_file(args.config).apply(parser)
			args = parser.parse_args(cmdline[1:])
		return (command, args)

	def run(self, cmdline: list[str]) -> int:
		if len(cmdline) == 0:
			self._show_syntax("No command supplied.")
			return self.EXIT_USAGE
		if cmdline[0] in ("-h", "--help"):
			self._show_syntax()
			return 0
		parsed = self.parse(cmdline)
		if parsed is None:
			return self.EXIT_USAGE
		(command, args) = parsed
		return command.action(command.name, args).run()

class LoggingAction():
	"""Action base that configures logging from the '-v' count of its
	arguments: warnings by default, -v for info, -vv for debug."""

	def __init__(self, cmd: str, args):
		self._cmd = cmd
		self._args = args
		loglevel = { 0: logging.WARNING, 1: logging.INFO }.get(getattr(args, "verbose", 0), logging.DEBUG)
		logging.basicConfig(format = "{name:>20s} [{levelname:.1s}]: {message}", style = "{", level = loglevel)
		logging.getLogger("uospost").setLevel(loglevel)

	@property
	def cmd(self):
		return self._cmd

	@property
	def args(self):
		return self._args

	def run(self):
		raise NotImplementedError(self.__class__.__name__)
