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

import dataclasses
import functools
import numpy as np
from .CoreModel import RealMatrix, RealVector, readonly, as_real_matrix
from .Exceptions import InvalidParameter, DimensionMismatch, ClassOutOfRange

@dataclasses.dataclass(frozen = True, slots = True)
class GroupSpan():
	label: int
	start: int
	count: int

	@property
	def stop(self):
		return self.start + self.count

	@property
	def slice(self):
		return slice(self.start, self.stop)

class GroupedDictionary():
	"""Concatenation D = [D_1 ... D_L] of per-class atom sets. Atoms are the
	columns of an m x n matrix; group k spans a contiguous range of columns."""
	NORM_TOLERANCE = 1e-9
	POWER_ITERATIONS = 20
	POWER_TOLERANCE = 1e-6

	def __init__(self, atoms: RealMatrix, group_sizes: list[int], labels: list[int] | None = None):
		atoms = as_real_matrix(atoms, what = "dictionary")
		group_sizes = [ int(size) for size in group_sizes ]
		if len(group_sizes) == 0:
			raise InvalidParameter("dictionary needs at least one group")
		if any(size < 1 for size in group_sizes):
			raise InvalidParameter(f"every group needs at least one atom, got sizes {group_sizes}")
		if sum(group_sizes) != atoms.shape[1]:
			raise DimensionMismatch(f"group sizes sum to {sum(group_sizes)}, but dictionary has {atoms.shape[1]} atoms")
		if labels is None:
			labels = list(range(len(group_sizes)))
		if len(labels) != len(group_sizes):
			raise DimensionMismatch(f"{len(labels)} group labels for {len(group_sizes)} groups")

		squared_norms = (atoms ** 2).sum(axis = 0)
		if np.any(squared_norms > 1 + self.NORM_TOLERANCE):
			offender = int(np.argmax(squared_norms))
			raise InvalidParameter(f"atom {offender} has squared norm {squared_norms[offender]:.12f} above one")

		self._atoms = atoms
		self._groups = [ ]
		start = 0
		for (label, size) in zip(labels, group_sizes):
			self._groups.append(GroupSpan(label = int(label), start = start, count = size))
			start += size
		self._groups = tuple(self._groups)

	@classmethod
	def single_group(cls, atoms: RealMatrix, label: int = 0):
		return cls(atoms, [ atoms.shape[1] ], labels = [ label ])

	@classmethod
	def concatenate(cls, dictionaries: list["GroupedDictionary"]):
		if len(dictionaries) == 0:
			raise InvalidParameter("nothing to concatenate")
		dims = set(dictionary.m for dictionary in dictionaries)
		if len(dims) != 1:
			raise DimensionMismatch(f"dictionaries of different atom dimensions cannot be concatenated: {sorted(dims)}")
		atoms = np.hstack([ dictionary.atoms for dictionary in dictionaries ])
		group_sizes = [ group.count for dictionary in dictionaries for group in dictionary.groups ]
		labels = [ group.label for dictionary in dictionaries for group in dictionary.groups ]
		return cls(atoms, group_sizes, labels = labels)

	@property
	def atoms(self):
		return self._atoms

	@property
	def m(self):
		return self._atoms.shape[0]

	@property
	def n(self):
		return self._atoms.shape[1]

	@property
	def groups(self):
		return self._groups

	@property
	def num_groups(self):
		return len(self._groups)

	@property
	def group_sizes(self):
		return [ group.count for group in self._groups ]

	@functools.cached_property
	def group_index(self):
		"""Group position of every atom."""
		return readonly(np.repeat(np.arange(self.num_groups), self.group_sizes))

	@functools.cached_property
	def gram(self):
		return readonly(self._atoms.T @ self._atoms)

	@functools.cached_property
	def lipschitz_estimate(self):
		"""Power-method estimate of ||D||_2^2, the gradient Lipschitz constant
		of 0.5 * ||z - D a||^2. Computed once per dictionary."""
		vector = np.ones(self.n) / np.sqrt(self.n)
		estimate = 0.0
		for iteration in range(self.POWER_ITERATIONS):
			product = self._atoms.T @ (self._atoms @ vector)
			new_estimate = float(np.linalg.norm(product))
			if new_estimate == 0:
				break
			vector = product / new_estimate
			converged = abs(new_estimate - estimate) <= self.POWER_TOLERANCE * new_estimate
			estimate = new_estimate
			if converged:
				break
		return estimate if (estimate > 0) else 1.0

	def group(self, index: int) -> GroupSpan:
		if not (0 <= index < self.num_groups):
			raise ClassOutOfRange(f"group {index} requested, dictionary has {self.num_groups} groups")
		return self._groups[index]

	def group_atoms(self, index: int) -> RealMatrix:
		return self._atoms[:, self.group(index).slice]

	def layout_equals(self, other: "GroupedDictionary"):
		return self._groups == other.groups

	def __eq__(self, other):
		return isinstance(other, GroupedDictionary) and self.layout_equals(other) and np.array_equal(self.atoms, other.atoms)

	def __str__(self):
		return f"Dictionary: {self.m} x {self.n}, {self.num_groups} groups"

class SparseCode():
	"""Coefficient vector aligned to the atoms of a dictionary; shares the
	dictionary's group layout."""

	def __init__(self, coefficients: RealVector, groups: tuple[GroupSpan]):
		coefficients = np.array(coefficients, dtype = np.float64)
		if coefficients.ndim != 1:
			raise DimensionMismatch(f"sparse code must be one-dimensional, got shape {coefficients.shape}")
		if (len(groups) == 0) or (groups[-1].stop != len(coefficients)):
			raise DimensionMismatch(f"sparse code has {len(coefficients)} coefficients, layout covers {groups[-1].stop if groups else 0}")
		if not np.all(np.isfinite(coefficients)):
			raise InvalidParameter("sparse code contains non-finite coefficients")
		self._coefficients = readonly(coefficients)
		self._groups = tuple(groups)

	@classmethod
	def for_dictionary(cls, coefficients: RealVector, dictionary: GroupedDictionary):
		return cls(coefficients, dictionary.groups)

	@property
	def coefficients(self):
		return self._coefficients

	@property
	def groups(self):
		return self._groups

	@property
	def num_groups(self):
		return len(self._groups)

	def group_view(self, index: int) -> RealVector:
		if not (0 <= index < len(self._groups)):
			raise ClassOutOfRange(f"class {index} requested, code has {len(self._groups)} groups")
		return self._coefficients[self._groups[index].slice]

	def group_sums(self) -> RealVector:
		"""Per-group sum of coefficient magnitudes (alpha-sum vector)."""
		return np.array([ np.abs(self.group_view(index)).sum() for index in range(self.num_groups) ])

	def __len__(self):
		return len(self._coefficients)

def group_view(code: SparseCode, index: int) -> RealVector:
	return code.group_view(index)

def group_sums_matrix(codes: RealMatrix, groups: tuple[GroupSpan]) -> RealMatrix:
	"""Alpha-sum vectors for a frame-major stack of codes."""
	codes = np.abs(np.atleast_2d(codes))
	return np.stack([ codes[:, group.slice].sum(axis = 1) for group in groups ], axis = 1)
