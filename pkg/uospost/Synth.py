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

import math
import logging
import dataclasses
import numpy as np
import scipy.linalg
import scipy.stats
from .CoreModel import SubspaceSpec, ClassAlignment, RealMatrix, readonly
from .Enums import SubspaceLayout
from .Exceptions import InvalidParameter, AngleInfeasible
from .Tools import SeedTools

_log = logging.getLogger(__spec__.name)

SHIFT_EPSILON = 1e-12
HOME_COEFFICIENT = (1.5, 2.5)
ANGLE_TOLERANCE = 1e-6

@dataclasses.dataclass(frozen = True)
class SynthConfig():
	m: int = 50
	num_classes: int = 5
	rank: int = 3
	frames_per_class: int = 200
	noise_sigma: float = 0.0
	subspace_angle_min: float = 30.0
	seed: int = 0
	layout: SubspaceLayout = SubspaceLayout.Blocks
	run_length: tuple[int, int] = (5, 20)
	max_attempts: int = 100

	def __post_init__(self):
		if self.num_classes < 1:
			raise InvalidParameter(f"need at least one class: {self.num_classes}")
		if not (1 <= self.rank < self.m):
			raise InvalidParameter(f"intrinsic dimension must lie in [1, {self.m}): {self.rank}")
		if self.frames_per_class < 1:
			raise InvalidParameter(f"need at least one frame per class: {self.frames_per_class}")
		if not (self.noise_sigma >= 0):
			raise InvalidParameter(f"noise level must not be negative: {self.noise_sigma}")
		if not (0 < self.subspace_angle_min <= 90):
			raise InvalidParameter(f"minimum principal angle must lie in (0, 90] degrees: {self.subspace_angle_min}")
		if not (1 <= self.run_length[0] <= self.run_length[1]):
			raise InvalidParameter(f"invalid run length range: {self.run_length}")
		object.__setattr__(self, "layout", SubspaceLayout(self.layout))

	@property
	def blocks_feasible(self):
		return self.num_classes * self.rank <= self.m

	def with_seed(self, seed: int):
		return dataclasses.replace(self, seed = seed)

	def with_noise(self, noise_sigma: float):
		return dataclasses.replace(self, noise_sigma = noise_sigma)

	def to_dict(self):
		result = dataclasses.asdict(self)
		result["layout"] = self.layout.value
		result["run_length"] = list(self.run_length)
		return result

@dataclasses.dataclass(frozen = True)
class SynthDataset():
	clean: RealMatrix
	noisy: RealMatrix
	raw: RealMatrix						# Noise-free points before the simplex mapping
	alignment: ClassAlignment
	spec: SubspaceSpec
	config: SynthConfig

	@property
	def num_frames(self):
		return len(self.clean)

def principal_angles(basis_a: RealMatrix, basis_b: RealMatrix) -> np.ndarray:
	"""Principal angles in degrees, largest first."""
	return np.degrees(scipy.linalg.subspace_angles(basis_a, basis_b))

def min_principal_angle(spec: SubspaceSpec) -> float:
	angles = [ principal_angles(spec.bases[i], spec.bases[j]).min() for i in range(spec.num_classes) for j in range(i + 1, spec.num_classes) ]
	return float(min(angles)) if (len(angles) > 0) else 90.0

class SubspaceGenerator():
	def __init__(self, config: SynthConfig):
		self._config = config

	def _block_bases(self, rng: np.random.Generator):
		# Class l owns coordinate l plus a disjoint block of the remaining ones
		(m, num_classes, rank) = (self._config.m, self._config.num_classes, self._config.rank)
		others = rng.permutation(np.arange(num_classes, m))
		bases = [ ]
		for (label, block) in enumerate(np.array_split(others, num_classes)):
			basis = np.zeros((m, rank))
			basis[label, 0] = 1
			if rank > 1:
				for (column, support) in enumerate(np.array_split(block, rank - 1), 1):
					entries = rng.uniform(0.2, 1.0, size = len(support))
					basis[support, column] = entries / np.linalg.norm(entries)
			bases.append(basis)
		return bases

	def _rotated_block_bases(self, rng: np.random.Generator):
		# One orthogonal map for all classes keeps every principal angle at 90 degrees
		bases = self._block_bases(rng)
		rotation = scipy.stats.ortho_group.rvs(self._config.m, random_state = rng)
		return [ rotation @ basis for basis in bases ]

	def _rotated_bases(self, rng: np.random.Generator):
		(m, num_classes, rank) = (self._config.m, self._config.num_classes, self._config.rank)
		if (num_classes * rank > m) and (self._config.subspace_angle_min >= 90):
			raise AngleInfeasible(f"{num_classes} mutually orthogonal subspaces of dimension {rank} do not fit into dimension {m}")
		best = 0.0
		for attempt in range(self._config.max_attempts):
			bases = [ scipy.linalg.qr(rng.standard_normal((m, rank)), mode = "economic")[0] for label in range(num_classes) ]
			spec = SubspaceSpec(m, bases)
			angle = min_principal_angle(spec)
			if angle >= self._config.subspace_angle_min - ANGLE_TOLERANCE:
				_log.debug("Rotated subspaces accepted after %d attempts, minimum angle %.1f degrees", attempt + 1, angle)
				return bases
			best = max(best, angle)
		raise AngleInfeasible(f"no draw of {num_classes} random {rank}-dimensional subspaces in dimension {m} reached {self._config.subspace_angle_min} degrees within {self._config.max_attempts} attempts (best {best:.1f})")

	def generate(self) -> SubspaceSpec:
		rng = SeedTools.rng(self._config.seed, 0)
		layout = self._config.layout
		if (layout in (SubspaceLayout.Blocks, SubspaceLayout.RotatedBlocks)) and (not self._config.blocks_feasible):
			_log.info("%d classes of dimension %d exceed dimension %d, using rotated subspaces", self._config.num_classes, self._config.rank, self._config.m)
			layout = SubspaceLayout.Rotated
		match layout:
			case SubspaceLayout.Blocks:
				bases = self._block_bases(rng)
			case SubspaceLayout.RotatedBlocks:
				bases = self._rotated_block_bases(rng)
			case SubspaceLayout.Rotated:
				bases = self._rotated_bases(rng)
		spec = SubspaceSpec(self._config.m, bases)
		if min_principal_angle(spec) < self._config.subspace_angle_min - ANGLE_TOLERANCE:
			raise AngleInfeasible(f"generated subspaces violate the {self._config.subspace_angle_min} degree minimum angle")
		return spec

def generate_subspaces(config: SynthConfig) -> SubspaceSpec:
	return SubspaceGenerator(config).generate()

def to_simplex_shifted(points: RealMatrix) -> RealMatrix:
	"""Row-wise positivity shift followed by l1 normalisation; an affine map
	plus scaling, so the subspace structure survives up to that scaling."""
	shift = np.maximum(-points.min(axis = 1, keepdims = True), 0) + SHIFT_EPSILON
	shifted = points + shift
	return shifted / shifted.sum(axis = 1, keepdims = True)

def _clip_to_simplex(points: RealMatrix, fallback: RealMatrix) -> RealMatrix:
	"""Maps noisy frames back onto the simplex by clipping negatives to zero
	and l1 normalisation, the same rule projection uses for its output. The
	shift mapping of clean frames would add |min| to every coordinate, which
	for noisy frames spreads most of the mass evenly over all classes. Rows
	that clip to all zeros keep their fallback (clean) frame."""
	clipped = np.maximum(points, 0)
	totals = clipped.sum(axis = 1, keepdims = True)
	return np.where(totals > 0, clipped / np.maximum(totals, np.finfo(float).tiny), fallback)

class DatasetGenerator():
	def __init__(self, spec: SubspaceSpec, config: SynthConfig):
		if spec.ambient_dim != config.m:
			raise InvalidParameter(f"subspaces live in dimension {spec.ambient_dim}, configuration asks for {config.m}")
		self._spec = spec
		self._config = config

	def _coefficients(self, rng: np.random.Generator, rank: int):
		coefficients = rng.uniform(0, 1, size = (self._config.frames_per_class, rank))
		coefficients[:, 0] = rng.uniform(*HOME_COEFFICIENT, size = self._config.frames_per_class)
		return coefficients

	def _labels(self):
		rng = SeedTools.rng(self._config.seed, 3)
		(low, high) = self._config.run_length
		runs = [ ]
		for label in range(self._spec.num_classes):
			remaining = self._config.frames_per_class
			while remaining > 0:
				length = min(remaining, int(rng.integers(low, high + 1)))
				runs.append((label, length))
				remaining -= length
		order = rng.permutation(len(runs))
		return np.concatenate([ np.full(runs[index][1], runs[index][0], dtype = np.int64) for index in order ])

	def generate(self) -> SynthDataset:
		labels = self._labels()
		num_frames = len(labels)
		raw = np.empty((num_frames, self._spec.ambient_dim))
		noisy = np.empty((num_frames, self._spec.ambient_dim))
		clean = np.empty((num_frames, self._spec.ambient_dim))
		for (label, basis) in enumerate(self._spec.bases):
			positions = np.flatnonzero(labels == label)
			points = self._coefficients(SeedTools.rng(self._config.seed, 1, label), basis.shape[1]) @ basis.T
			simplex_points = to_simplex_shifted(points)
			raw[positions] = points
			clean[positions] = simplex_points
			if self._config.noise_sigma == 0:
				noisy[positions] = simplex_points
			else:
				noise = SeedTools.rng(self._config.seed, 2, label).normal(0, self._config.noise_sigma, size = simplex_points.shape)
				noisy[positions] = _clip_to_simplex(simplex_points + noise, fallback = simplex_points)
		alignment = ClassAlignment(labels, num_classes = self._spec.num_classes)
		_log.info("Generated %d frames of dimension %d in %d classes (%d label runs), noise sigma %.3f", num_frames, self._spec.ambient_dim, self._spec.num_classes, len(alignment.collapsed()), self._config.noise_sigma)
		return SynthDataset(clean = readonly(clean), noisy = readonly(noisy), raw = readonly(raw), alignment = alignment, spec = self._spec, config = self._config)

def generate_dataset(spec: SubspaceSpec, config: SynthConfig) -> SynthDataset:
	return DatasetGenerator(spec, config).generate()
