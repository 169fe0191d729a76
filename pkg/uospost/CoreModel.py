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
import numpy as np
from numpy.typing import NDArray
from .Exceptions import NegativeEntry, NotNormalized, NonFinite, DimensionMismatch, ClassOutOfRange, InvalidParameter, EmptyInput

RealVector = NDArray[np.float64]
RealMatrix = NDArray[np.float64]

# DNN-exported posteriors carry float rounding, exact sums would reject them
SIMPLEX_TOLERANCE = 1e-6

def readonly(array: np.ndarray) -> np.ndarray:
	array.setflags(write = False)
	return array

def as_real_vector(values, what: str = "vector") -> RealVector:
	vector = np.array(values, dtype = np.float64)
	if vector.ndim != 1:
		raise DimensionMismatch(f"{what} must be one-dimensional, got shape {vector.shape}")
	if not np.all(np.isfinite(vector)):
		raise NonFinite(f"{what} contains NaN or infinite entries")
	return readonly(vector)

def as_real_matrix(values, what: str = "matrix") -> RealMatrix:
	"""Frame-major matrix: one row per frame, one column per dimension."""
	matrix = np.array(values, dtype = np.float64)
	if matrix.ndim != 2:
		raise DimensionMismatch(f"{what} must be two-dimensional, got shape {matrix.shape}")
	if not np.all(np.isfinite(matrix)):
		bad_rows = np.flatnonzero(~np.all(np.isfinite(matrix), axis = 1))
		raise NonFinite(f"{what} contains NaN or infinite entries (first bad row {bad_rows[0]})")
	return readonly(matrix)

@dataclasses.dataclass(frozen = True)
class PosteriorVector():
	values: RealVector

	@property
	def m(self):
		return len(self.values)

	def __len__(self):
		return len(self.values)

def validate_posterior(values) -> PosteriorVector:
	vector = np.array(values, dtype = np.float64)
	if (vector.ndim != 1) or (len(vector) < 1):
		raise EmptyInput("posterior vector must be a non-empty one-dimensional vector")
	if not np.all(np.isfinite(vector)):
		raise NonFinite("posterior vector contains NaN or infinite entries")
	if np.any(vector < 0):
		raise NegativeEntry(f"posterior vector has negative entry {vector.min()} at index {int(np.argmin(vector))}")
	if np.any(vector > 1 + SIMPLEX_TOLERANCE):
		raise NotNormalized(f"posterior vector has entry {vector.max()} above one")
	total = float(vector.sum())
	if abs(total - 1) > SIMPLEX_TOLERANCE:
		raise NotNormalized(f"posterior vector sums to {total:.9f}, deviation from one exceeds {SIMPLEX_TOLERANCE}")
	return PosteriorVector(values = readonly(vector))

class ClassAlignment():
	"""Frame-level class labels, 0-based and dense. Produced by an external
	forced alignment, never by this package (except for synthetic data)."""

	def __init__(self, labels, num_classes: int | None = None):
		labels = np.asarray(labels)
		if labels.size == 0:
			labels = np.zeros(0, dtype = np.int64)
		if labels.ndim != 1:
			raise DimensionMismatch(f"alignment must be one-dimensional, got shape {labels.shape}")
		if not np.issubdtype(labels.dtype, np.integer):
			if not np.all(np.mod(labels, 1) == 0):
				raise InvalidParameter("alignment labels must be integers")
		labels = labels.astype(np.int64)
		if num_classes is None:
			num_classes = (int(labels.max()) + 1) if (len(labels) > 0) else 0
		if num_classes < 0:
			raise InvalidParameter(f"number of classes must not be negative: {num_classes}")
		if (len(labels) > 0) and ((labels.min() < 0) or (labels.max() >= num_classes)):
			raise ClassOutOfRange(f"alignment labels must lie in [0, {num_classes}), found range [{labels.min()}, {labels.max()}]")
		self._labels = readonly(labels)
		self._num_classes = num_classes

	@property
	def labels(self):
		return self._labels

	@property
	def num_classes(self):
		return self._num_classes

	def counts(self):
		return np.bincount(self._labels, minlength = self._num_classes)

	def frames_of(self, label: int):
		return np.flatnonzero(self._labels == label)

	def check_matches(self, matrix: np.ndarray, what: str = "matrix"):
		if matrix.shape[0] != len(self):
			raise DimensionMismatch(f"alignment has {len(self)} labels but {what} has {matrix.shape[0]} frames")

	def collapsed(self):
		return collapse_runs(self._labels)

	def __len__(self):
		return len(self._labels)

	def __eq__(self, other):
		return isinstance(other, ClassAlignment) and (self.num_classes == other.num_classes) and np.array_equal(self.labels, other.labels)

	def __str__(self):
		return f"Alignment: {len(self)} frames, {self.num_classes} classes"

def collapse_runs(sequence) -> list[int]:
	result = [ ]
	for value in sequence:
		value = int(value)
		if (len(result) == 0) or (result[-1] != value):
			result.append(value)
	return result

@dataclasses.dataclass(frozen = True)
class CodingConfig():
	"""Penalty weights are on the scale of ||z - D a||^2 + lambda * ||a||_1.
	Solvers minimise half of that objective, so they work with lambda / 2;
	minimisers are identical. This is the only place the factor is applied."""
	lambda1: float = 0.2
	lambda2: float | None = None
	tolerance: float = 1e-6
	max_iterations: int = 1000

	def __post_init__(self):
		if self.lambda2 is None:
			object.__setattr__(self, "lambda2", self.lambda1)
		if not (self.lambda1 >= 0):
			raise InvalidParameter(f"lambda1 must be non-negative: {self.lambda1}")
		if not (self.lambda2 >= 0):
			raise InvalidParameter(f"lambda2 must be non-negative: {self.lambda2}")
		if not (self.tolerance > 0):
			raise InvalidParameter(f"tolerance must be positive: {self.tolerance}")
		if (int(self.max_iterations) != self.max_iterations) or (self.max_iterations < 1):
			raise InvalidParameter(f"max_iterations must be a positive integer: {self.max_iterations}")

	@property
	def internal_lambda1(self):
		return self.lambda1 / 2

	@property
	def internal_lambda2(self):
		return self.lambda2 / 2

	def to_dict(self):
		return dataclasses.asdict(self)

class SubspaceSpec():
	ORTHONORMALITY_TOLERANCE = 1e-10

	def __init__(self, ambient_dim: int, bases: list[np.ndarray]):
		self._ambient_dim = ambient_dim
		checked = [ ]
		for (label, basis) in enumerate(bases):
			basis = np.array(basis, dtype = np.float64)
			if (basis.ndim != 2) or (basis.shape[0] != ambient_dim):
				raise DimensionMismatch(f"basis of class {label} has shape {basis.shape}, expected {ambient_dim} rows")
			if basis.shape[1] >= ambient_dim:
				raise InvalidParameter(f"basis of class {label} has intrinsic dimension {basis.shape[1]}, must be below {ambient_dim}")
			deviation = np.abs(basis.T @ basis - np.eye(basis.shape[1])).max(initial = 0)
			if deviation > self.ORTHONORMALITY_TOLERANCE:
				raise InvalidParameter(f"basis of class {label} is not orthonormal (deviation {deviation:.2e})")
			checked.append(readonly(basis))
		self._bases = tuple(checked)

	@property
	def ambient_dim(self):
		return self._ambient_dim

	@property
	def bases(self):
		return self._bases

	@property
	def num_classes(self):
		return len(self._bases)

	@property
	def intrinsic_dims(self):
		return tuple(basis.shape[1] for basis in self._bases)

	def projector_residual(self, points: np.ndarray, label: int):
		basis = self._bases[label]
		points = np.atleast_2d(points)
		return np.linalg.norm(points - (points @ basis) @ basis.T, axis = 1)

	def to_dict(self):
		return {
			"ambient_dim": self.ambient_dim,
			"intrinsic_dims": list(self.intrinsic_dims),
		}

@dataclasses.dataclass(frozen = True)
class RpcaDecomposition():
	low_rank: RealMatrix
	sparse: RealMatrix
	original: RealMatrix
	iterations_used: int
	converged: bool
	residual: float
	lambda_rpca: float
	objective_trace: tuple[float, ...] = ( )

	def __post_init__(self):
		if not (self.low_rank.shape == self.sparse.shape == self.original.shape):
			raise DimensionMismatch(f"decomposition shapes differ: L {self.low_rank.shape}, N {self.sparse.shape}, M {self.original.shape}")

	@property
	def relative_residual(self):
		return float(np.linalg.norm(self.original - self.low_rank - self.sparse) / max(1.0, np.linalg.norm(self.original)))
