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

import struct
import logging
import numpy as np
from .CoreModel import ClassAlignment, RealMatrix, as_real_matrix
from .GroupedDictionary import GroupedDictionary
from .Evaluation import TransitionModel
from .Enums import MatrixFormat
from .Exceptions import FileFormatError, UosException

_log = logging.getLogger(__spec__.name)

class MatrixFile():
	MAGIC = b"UOSM0001"
	_HEADER = struct.Struct("<II")

	@classmethod
	def write(cls, filename: str, matrix: RealMatrix, matrix_format: MatrixFormat = MatrixFormat.Binary):
		matrix = np.asarray(matrix, dtype = np.float64)
		if matrix.ndim != 2:
			raise FileFormatError(f"only two-dimensional matrices can be stored, got shape {matrix.shape}")
		match MatrixFormat(matrix_format):
			case MatrixFormat.Binary:
				with open(filename, "wb") as f:
					f.write(cls.MAGIC)
					f.write(cls._HEADER.pack(*matrix.shape))
					f.write(np.ascontiguousarray(matrix, dtype = "<f8").tobytes())
			case MatrixFormat.Text:
				with open(filename, "w") as f:
					print(f"# {cls.MAGIC.decode()} {matrix.shape[0]} {matrix.shape[1]}", file = f)
					for row in matrix:
						print("\t".join(repr(float(value)) for value in row), file = f)

	@classmethod
	def _read_binary(cls, filename: str, data: bytes):
		offset = len(cls.MAGIC)
		if len(data) < offset + cls._HEADER.size:
			raise FileFormatError(f"{filename}: truncated matrix header")
		(rows, cols) = cls._HEADER.unpack_from(data, offset)
		offset += cls._HEADER.size
		expected = rows * cols * 8
		if len(data) - offset != expected:
			raise FileFormatError(f"{filename}: header announces {rows} x {cols} values ({expected} bytes), payload has {len(data) - offset} bytes")
		return np.frombuffer(data, dtype = "<f8", offset = offset).reshape(rows, cols).astype(np.float64)

	@classmethod
	def _read_text(cls, filename: str, text: str):
		shape = None
		rows = [ ]
		for (lineno, line) in enumerate(text.splitlines(), 1):
			line = line.strip()
			if line.startswith("#"):
				fields = line[1:].split()
				if (len(fields) == 3) and (fields[0] == cls.MAGIC.decode()):
					shape = (int(fields[1]), int(fields[2]))
				continue
			if line == "":
				continue
			try:
				rows.append([ float(value) for value in line.split() ])
			except ValueError as e:
				raise FileFormatError(f"{filename}:{lineno}: {e}") from e
		if len(set(len(row) for row in rows)) > 1:
			raise FileFormatError(f"{filename}: rows have differing numbers of columns")
		matrix = np.array(rows, dtype = np.float64).reshape(len(rows), len(rows[0]) if rows else (shape[1] if shape else 0))
		if (shape is not None) and (matrix.shape != shape):
			raise FileFormatError(f"{filename}: header announces {shape[0]} x {shape[1]}, found {matrix.shape[0]} x {matrix.shape[1]}")
		return matrix

	@classmethod
	def read(cls, filename: str) -> RealMatrix:
		with open(filename, "rb") as f:
			data = f.read()
		if data.startswith(cls.MAGIC):
			matrix = cls._read_binary(filename, data)
		else:
			try:
				text = data.decode("utf-8")
			except UnicodeDecodeError as e:
				raise FileFormatError(f"{filename}: neither a binary matrix file nor UTF-8 text") from e
			matrix = cls._read_text(filename, text)
		_log.debug("Read %d x %d matrix from %s", matrix.shape[0], matrix.shape[1], filename)
		return as_real_matrix(matrix, what = filename)

class DictionaryFile():
	MAGIC = b"UOSD0001"
	_HEADER = struct.Struct("<III")

	@classmethod
	def write(cls, filename: str, dictionary: GroupedDictionary):
		with open(filename, "wb") as f:
			f.write(cls.MAGIC)
			f.write(cls._HEADER.pack(dictionary.m, dictionary.n, dictionary.num_groups))
			f.write(struct.pack(f"<{dictionary.num_groups}I", *dictionary.group_sizes))
			f.write(np.asarray(dictionary.atoms, dtype = "<f8").tobytes(order = "F"))

	@classmethod
	def read(cls, filename: str) -> GroupedDictionary:
		with open(filename, "rb") as f:
			data = f.read()
		if not data.startswith(cls.MAGIC):
			raise FileFormatError(f"{filename}: not a dictionary file (bad magic)")
		offset = len(cls.MAGIC)
		if len(data) < offset + cls._HEADER.size:
			raise FileFormatError(f"{filename}: truncated dictionary header")
		(m, n, num_groups) = cls._HEADER.unpack_from(data, offset)
		offset += cls._HEADER.size
		if len(data) < offset + 4 * num_groups:
			raise FileFormatError(f"{filename}: truncated group table")
		group_sizes = struct.unpack_from(f"<{num_groups}I", data, offset)
		offset += 4 * num_groups
		if len(data) - offset != 8 * m * n:
			raise FileFormatError(f"{filename}: expected {m} x {n} atoms ({8 * m * n} bytes), payload has {len(data) - offset} bytes")
		atoms = np.frombuffer(data, dtype = "<f8", offset = offset).reshape((m, n), order = "F").astype(np.float64)
		try:
			return GroupedDictionary(atoms, group_sizes)
		except UosException as e:
			raise FileFormatError(f"{filename}: {e}") from e

class AlignmentFile():
	@classmethod
	def write(cls, filename: str, alignment: ClassAlignment):
		with open(filename, "w") as f:
			for label in alignment.labels:
				print(int(label), file = f)

	@classmethod
	def read(cls, filename: str, num_classes: int | None = None) -> ClassAlignment:
		labels = [ ]
		with open(filename) as f:
			for (lineno, line) in enumerate(f, 1):
				line = line.strip()
				if (line == "") or line.startswith("#"):
					continue
				try:
					labels.append(int(line))
				except ValueError as e:
					raise FileFormatError(f"{filename}:{lineno}: not an integer label: {line!r}") from e
		return ClassAlignment(np.array(labels, dtype = np.int64), num_classes = num_classes)

class TransitionFile():
	@classmethod
	def write(cls, filename: str, model: TransitionModel):
		with open(filename, "w") as f:
			print(model.num_states, file = f)
			for row in model.transitions:
				print(" ".join(repr(float(value)) for value in row), file = f)
			print(" ".join(repr(float(value)) for value in model.initial), file = f)

	@classmethod
	def read(cls, filename: str) -> TransitionModel:
		with open(filename) as f:
			lines = [ line.strip() for line in f if (line.strip() != "") and not line.lstrip().startswith("#") ]
		try:
			num_states = int(lines[0])
			rows = [ [ float(value) for value in line.split() ] for line in lines[1:] ]
		except (IndexError, ValueError) as e:
			raise FileFormatError(f"{filename}: malformed transition model: {e}") from e
		if (len(rows) != num_states + 1) or any(len(row) != num_states for row in rows):
			raise FileFormatError(f"{filename}: expected {num_states} transition rows plus one initial row, each with {num_states} values")
		return TransitionModel.from_probabilities(np.array(rows[:-1]), np.array(rows[-1]))
