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
import logging
import concurrent.futures
from .Exceptions import InvalidParameter

_log = logging.getLogger(__spec__.name)

class WorkerPool():
	"""Bounded pool of worker threads. Results are handed back in submission
	order, so anything computed through the pool is independent of the pool
	size. A pool of size one runs every task inline."""
	ENVIRONMENT_VARIABLE = "UOS_THREADS"

	def __init__(self, pool_max_size: int = 1, exception_callback: "callable | None" = None):
		if pool_max_size < 1:
			raise InvalidParameter(f"worker pool needs at least one worker: {pool_max_size}")
		self._pool_max_size = pool_max_size
		self._exception_callback = exception_callback
		self._executor = None
		self._pending = [ ]
		self._exception_count = 0

	@classmethod
	def default_size(cls, requested: int | None = None):
		if requested is not None:
			return requested
		env_value = os.environ.get(cls.ENVIRONMENT_VARIABLE)
		if env_value is not None:
			try:
				value = int(env_value)
			except ValueError:
				raise InvalidParameter(f"{cls.ENVIRONMENT_VARIABLE} must be an integer, got {env_value!r}")
			if value >= 1:
				return value
			_log.warning("Ignoring %s=%s, need a positive worker count", cls.ENVIRONMENT_VARIABLE, env_value)
		return os.cpu_count() or 1

	@property
	def pool_max_size(self):
		return self._pool_max_size

	@property
	def exception_count(self):
		return self._exception_count

	def submit(self, task: "callable", *args, **kwargs):
		if self._pool_max_size == 1:
			try:
				self._pending.append(("done", task(*args, **kwargs)))
			except Exception as e:
				self._pending.append(("error", e))
		else:
			if self._executor is None:
				self._executor = concurrent.futures.ThreadPoolExecutor(max_workers = self._pool_max_size)
			self._pending.append(("future", self._executor.submit(task, *args, **kwargs)))

	def wait(self):
		"""Returns all results in submission order; re-raises the first
		failure after every task has finished."""
		results = [ ]
		first_exception = None
		for (kind, payload) in self._pending:
			if kind == "future":
				try:
					payload = payload.result()
					kind = "done"
				except Exception as e:
					payload = e
					kind = "error"
			if kind == "error":
				self._exception_count += 1
				if self._exception_callback is not None:
					self._exception_callback(payload)
				if first_exception is None:
					first_exception = payload
				results.append(None)
			else:
				results.append(payload)
		self._pending = [ ]
		if first_exception is not None:
			raise first_exception
		return results

	def map(self, task: "callable", iterable):
		for item in iterable:
			self.submit(task, item)
		return self.wait()

	def close(self):
		if self._executor is not None:
			self._executor.shutdown(wait = True)
			self._executor = None

	def __enter__(self):
		return self

	def __exit__(self, *args):
		self.close()
