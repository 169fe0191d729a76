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

import logging
from .MultiCommand import LoggingAction
from .WorkerPool import WorkerPool
from .Tools import JSONTools, OutputTransaction
from .FileFormats import MatrixFile, DictionaryFile, AlignmentFile, TransitionFile
from .Enums import MatrixFormat
from .Exceptions import ValidationError, FileFormatError, ConfigurationError

_log = logging.getLogger(__spec__.name)

class CmdlineAction(LoggingAction):
	"""Base of every command: logging, worker count, atomic output files and
	the mapping of failures to exit codes (1 for invalid input, 2 for I/O)."""
	REQUIRED_OPTIONS = ( )
	EXIT_VALIDATION = 1
	EXIT_IO = 2

	def __init__(self, cmd: str, args):
		super().__init__(cmd, args)
		self._transaction = OutputTransaction()
		self._workers = None

	@property
	def workers(self):
		if self._workers is None:
			self._workers = WorkerPool.default_size(getattr(self._args, "threads", None))
		return self._workers

	@property
	def matrix_format(self):
		return MatrixFormat(getattr(self._args, "format", "binary"))

	def _check_required(self):
		for name in self.REQUIRED_OPTIONS:
			if getattr(self._args, name, None) is None:
				raise ConfigurationError(f"option --{name.replace('_', '-')} is required (on the command line or in the configuration file)")

	def read_matrix(self, filename: str):
		return MatrixFile.read(filename)

	def read_dictionary(self, filename: str):
		return DictionaryFile.read(filename)

	def read_alignment(self, filename: str, num_classes: int | None = None):
		return AlignmentFile.read(filename, num_classes = num_classes)

	def read_transitions(self, filename: str):
		return TransitionFile.read(filename)

	def write_matrix(self, filename: str, matrix):
		MatrixFile.write(self._transaction.stage(filename), matrix, self.matrix_format)

	def write_dictionary(self, filename: str, dictionary):
		DictionaryFile.write(self._transaction.stage(filename), dictionary)

	def write_alignment(self, filename: str, alignment):
		AlignmentFile.write(self._transaction.stage(filename), alignment)

	def write_transitions(self, filename: str, model):
		TransitionFile.write(self._transaction.stage(filename), model)

	def write_json(self, filename: str, data: dict):
		with self._transaction.open(filename) as f:
			JSONTools.write(data, f)

	def execute(self):
		raise NotImplementedError(self.__class__.__name__)

	def run(self):
		try:
			self._check_required()
			result = self.execute()
			self._transaction.commit()
			return result or 0
		except ValidationError as e:
			self._transaction.rollback()
			_log.error("%s: %s", e.__class__.__name__, e)
			return self.EXIT_VALIDATION
		except (FileFormatError, OSError) as e:
			self._transaction.rollback()
			_log.error("%s: %s", e.__class__.__name__, e)
			return self.EXIT_IO
		except BaseException:
			self._transaction.rollback()
			raise
