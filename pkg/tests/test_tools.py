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
import threading
import pytest
from uospost.Tools import JSONTools, SeedTools, OutputTransaction
from uospost.WorkerPool import WorkerPool
from uospost.Exceptions import InvalidParameter

def test_jsonhash_ignores_key_order():
	assert JSONTools.jsonhash({ "a": 1, "b": [ 1, 2 ] }) == JSONTools.jsonhash({ "b": [ 1, 2 ], "a": 1 })
	assert JSONTools.jsonhash({ "a": 1 }) != JSONTools.jsonhash({ "a": 2 })

def test_derived_seeds():
	assert SeedTools.derive(7, 1) == SeedTools.derive(7, 1)
	assert SeedTools.derive(7, 1) != SeedTools.derive(7, 2)
	assert SeedTools.derive(7, 1) != SeedTools.derive(8, 1)
	assert SeedTools.rng(3, 0).random() == SeedTools.rng(3, 0).random()

def test_transaction_commit(tmp_path):
	target = tmp_path / "out.txt"
	with OutputTransaction() as transaction:
		with transaction.open(str(target)) as f:
			f.write("hello")
		assert not target.exists()
	assert target.read_text() == "hello"
	assert os.listdir(tmp_path) == [ "out.txt" ]

def test_transaction_applies_umask(tmp_path):
	target = tmp_path / "out.txt"
	previous = os.umask(0o027)
	try:
		with OutputTransaction() as transaction:
			with transaction.open(str(target)) as f:
				f.write("hello")
	finally:
		os.umask(previous)
	assert (target.stat().st_mode & 0o777) == 0o640

def test_transaction_rollback(tmp_path):
	target = tmp_path / "out.txt"
	with pytest.raises(RuntimeError):
		with OutputTransaction() as transaction:
			with transaction.open(str(target)) as f:
				f.write("hello")
			raise RuntimeError("failed")
	assert os.listdir(tmp_path) == [ ]

def test_pool_keeps_submission_order():
	with WorkerPool(4) as pool:
		assert pool.map(lambda value: value * value, range(20)) == [ value * value for value in range(20) ]

def test_pool_inline_for_single_worker():
	with WorkerPool(1) as pool:
		assert pool.map(lambda value: threading.get_ident(), range(3)) == [ threading.get_ident() ] * 3

def test_pool_reraises_first_failure():
	failures = [ ]

	def task(value):
		if value in (2, 5):
			raise ValueError(value)
		return value

	with WorkerPool(3, exception_callback = failures.append) as pool:
		with pytest.raises(ValueError) as error:
			pool.map(task, range(8))
		assert error.value.args == (2, )
		assert pool.exception_count == 2
	assert len(failures) == 2

def test_pool_size(monkeypatch):
	monkeypatch.setenv("UOS_THREADS", "3")
	assert WorkerPool.default_size() == 3
	assert WorkerPool.default_size(5) == 5
	monkeypatch.setenv("UOS_THREADS", "x")
	with pytest.raises(InvalidParameter):
		WorkerPool.default_size()
	monkeypatch.delenv("UOS_THREADS")
	assert WorkerPool.default_size() >= 1
	with pytest.raises(InvalidParameter):
		WorkerPool(0)
