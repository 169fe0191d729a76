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
import json
import hashlib
import logging
import tempfile
import contextlib
import numpy as np

_log = logging.getLogger(__spec__.name)

class JSONTools():
	@classmethod
	def canonicalize(cls, serializable_object):
		canonical_representation = json.dumps(serializable_object, separators = (",", ":"), sort_keys = True)
		return canonical_representation

	@classmethod
	def jsonhash(cls, serializable_object):
		canonical_representation = cls.canonicalize(serializable_object).encode("ascii")
		return hashlib.sha256(canonical_representation).hexdigest()

	@classmethod
	def write(cls, serializable_object, f):
		json.dump(serializable_object, f, sort_keys = True, indent = "\t")
		f.write("\n")

class SeedTools():
	@classmethod
	def derive(cls, seed: int, *keys: int) -> int:
		"""Independent child seed for a (seed, key, ...) tuple, e.g., one per
		class, so that class-parallel work stays reproducible."""
		sequence = np.random.SeedSequence([ int(seed) ] + [ int(key) for key in keys ])
		return int(sequence.generate_state(1, dtype = np.uint64)[0] >> np.uint64(1))

	@classmethod
	def rng(cls, seed: int, *keys: int):
		return np.random.default_rng(np.random.SeedSequence([ int(seed) ] + [ int(key) for key in keys ]))

class OutputTransaction():
	"""Collects all output files of a command. Every file is first written
	under a temporary name next to its destination; only commit() renames them
	into place, rollback() removes them. Committed files get the permissions
	of a plain open(), i.e., 0666 minus the umask."""

	def __init__(self):
		self._staged = [ ]

	@staticmethod
	def _umask():
		mask = os.umask(0)
		os.umask(mask)
		return mask

	def stage(self, filename: str) -> str:
		directory = os.path.dirname(os.path.abspath(filename))
		(fd, tmpname) = tempfile.mkstemp(prefix = "." + os.path.basename(filename) + ".", suffix = ".tmp", dir = directory)
		os.close(fd)
		# mkstemp creates 0600
		os.chmod(tmpname, 0o666 & ~self._umask())
		self._staged.append((tmpname, filename))
		return tmpname

	@contextlib.contextmanager
	def open(self, filename: str, mode: str = "w"):
		tmpname = self.stage(filename)
		with open(tmpname, mode) as f:
			yield f

	def commit(self):
		for (tmpname, final_name) in self._staged:
			os.replace(tmpname, final_name)
			_log.debug("Wrote %s", final_name)
		self._staged = [ ]

	def rollback(self):
		for (tmpname, final_name) in self._staged:
			with contextlib.suppress(FileNotFoundError):
				os.unlink(tmpname)
		self._staged = [ ]

	def __enter__(self):
		return self

	def __exit__(self, exc_type, exc_value, traceback):
		if exc_type is None:
			self.commit()
		else:
			self.rollback()
