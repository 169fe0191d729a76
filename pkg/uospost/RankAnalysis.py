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
import dataclasses
import numpy as np
import scipy.linalg
from .CoreModel import ClassAlignment, RealMatrix, as_real_matrix
from .GroupedDictionary import SparseCode, GroupSpan, group_sums_matrix
from .Enums import VariabilityMode
from .Exceptions import EmptyInput, InvalidParameter, SvdFailure, DimensionMismatch
from .WorkerPool import WorkerPool
from .Tools import SeedTools

_log = logging.getLogger(__spec__.name)

LOG_FLOOR = 1e-10
SHARE_TOLERANCE = 1e-12

def singular_values(matrix: RealMatrix):
	try:
		return scipy.linalg.svdvals(matrix)
	except (np.linalg.LinAlgError, ValueError):
		_log.debug("Divide-and-conquer SVD failed on %s matrix, retrying with gesvd", matrix.shape)
	try:
		return scipy.linalg.svd(matrix, compute_uv = False, lapack_driver = "gesvd")
	except (np.linalg.LinAlgError, ValueError) as e:
		raise SvdFailure(f"singular value decomposition of {matrix.shape[0]} x {matrix.shape[1]} matrix failed: {e}") from e

def effective_rank(matrix: RealMatrix, variability: float = 0.95, mode: VariabilityMode = VariabilityMode.Squared) -> int:
	"""Smallest number of leading singular values whose share of the total
	reaches the requested variability. No mean-centering is applied."""
	matrix = as_real_matrix(matrix, what = "rank input")
	if matrix.size == 0:
		raise EmptyInput("effective rank of an empty matrix is undefined")
	if not (0 < variability <= 1):
		raise InvalidParameter(f"variability must lie in (0, 1]: {variability}")
	values = singular_values(matrix)
	weights = (values ** 2) if (VariabilityMode(mode) == VariabilityMode.Squared) else values
	total = float(weights.sum())
	if total == 0:
		return 0
	shares = np.cumsum(weights) / total
	index = int(np.searchsorted(shares, variability - SHARE_TOLERANCE, side = "left"))
	return min(index + 1, len(values))

def log_transform(posteriors: RealMatrix, floor: float = LOG_FLOOR) -> RealMatrix:
	return np.log(np.maximum(posteriors, floor))

def split_correct_incorrect(posteriors: RealMatrix, alignment: ClassAlignment) -> tuple[list[RealMatrix], list[RealMatrix]]:
	"""Per true class: frames whose argmax is the class itself, and all others."""
	posteriors = as_real_matrix(posteriors, what = "posterior matrix")
	alignment.check_matches(posteriors, what = "posterior matrix")
	correct_mask = np.argmax(posteriors, axis = 1) == alignment.labels if (len(posteriors) > 0) else np.zeros(0, dtype = bool)
	correct = [ ]
	incorrect = [ ]
	for label in range(alignment.num_classes):
		in_class = alignment.labels == label
		correct.append(posteriors[in_class & correct_mask])
		incorrect.append(posteriors[in_class & ~correct_mask])
	return (correct, incorrect)

@dataclasses.dataclass
class ClassRank():
	label: int
	frames: int
	correct_frames: int
	incorrect_frames: int
	rank_correct: int | None = None
	rank_incorrect: int | None = None
	rank_all: int | None = None
	sampled_frames: int | None = None	# Per bucket, when correct and incorrect are balanced

@dataclasses.dataclass
class RankReport():
	system: str
	variability: float
	mode: VariabilityMode
	balanced: bool = False
	classes: list[ClassRank] = dataclasses.field(default_factory = list)
	skipped: list[tuple[int, str]] = dataclasses.field(default_factory = list)

	@staticmethod
	def _mean(values):
		values = [ value for value in values if value is not None ]
		return (float(np.mean(values)) if (len(values) > 0) else None)

	@property
	def mean_correct(self):
		return self._mean(entry.rank_correct for entry in self.classes)

	@property
	def mean_incorrect(self):
		return self._mean(entry.rank_incorrect for entry in self.classes)

	@property
	def mean_all(self):
		return self._mean(entry.rank_all for entry in self.classes)

	@property
	def total_frames(self):
		return sum(entry.frames for entry in self.classes)

	def to_dict(self):
		return {
			"system": self.system,
			"variability": self.variability,
			"mode": self.mode.value,
			"balanced": self.balanced,
			"mean_correct": self.mean_correct,
			"mean_incorrect": self.mean_incorrect,
			"mean_all": self.mean_all,
			"classes": [ dataclasses.asdict(entry) for entry in self.classes ],
			"skipped": [ { "class": label, "bucket": bucket } for (label, bucket) in self.skipped ],
		}

class RankAnalyzer():
	"""Effective ranks of the correct, incorrect and complete frame buckets of
	every class. Buckets larger than sample_per_class are subsampled. With
	balanced set, both the correct and the incorrect bucket of a class are
	subsampled to the size of the smaller one, so that their ranks are
	measured on equally many frames."""

	MIN_BUCKET_FRAMES = 2
	BUCKETS = ("correct", "incorrect", "all")

	def __init__(self, sample_per_class: int = 1000, variability: float = 0.95, mode: VariabilityMode = VariabilityMode.Squared, seed: int = 0, workers: int = 1, balanced: bool = False):
		if sample_per_class < self.MIN_BUCKET_FRAMES:
			raise InvalidParameter(f"need to sample at least {self.MIN_BUCKET_FRAMES} frames per class: {sample_per_class}")
		if not (0 < variability <= 1):
			raise InvalidParameter(f"variability must lie in (0, 1]: {variability}")
		self._sample_per_class = sample_per_class
		self._variability = variability
		self._mode = VariabilityMode(mode)
		self._seed = seed
		self._workers = workers
		self._balanced = balanced

	def _bucket_rank(self, frames: RealMatrix, label: int, bucket_no: int, limit: int):
		if (len(frames) < self.MIN_BUCKET_FRAMES) or (limit < self.MIN_BUCKET_FRAMES):
			return None
		if len(frames) > limit:
			rng = SeedTools.rng(self._seed, label, bucket_no)
			frames = frames[np.sort(rng.choice(len(frames), size = limit, replace = False))]
		return effective_rank(log_transform(frames), variability = self._variability, mode = self._mode)

	def rank_table(self, posteriors: RealMatrix, alignment: ClassAlignment, system: str = "DNN") -> RankReport:
		posteriors = as_real_matrix(posteriors, what = "posterior matrix")
		(correct, incorrect) = split_correct_incorrect(posteriors, alignment)

		def analyze(label: int):
			buckets = (correct[label], incorrect[label], posteriors[alignment.labels == label])
			limits = [ self._sample_per_class ] * 3
			if self._balanced:
				limits[0] = limits[1] = min(len(buckets[0]), len(buckets[1]), self._sample_per_class)
			ranks = [ self._bucket_rank(frames, label, bucket_no, limit) for (bucket_no, (frames, limit)) in enumerate(zip(buckets, limits)) ]
			return ClassRank(label = label, frames = len(buckets[2]), correct_frames = len(buckets[0]), incorrect_frames = len(buckets[1]), rank_correct = ranks[0], rank_incorrect = ranks[1], rank_all = ranks[2], sampled_frames = limits[0] if self._balanced else None)

		with WorkerPool(self._workers) as pool:
			entries = pool.map(analyze, range(alignment.num_classes))

		report = RankReport(system = system, variability = self._variability, mode = self._mode, balanced = self._balanced, classes = entries)
		for entry in entries:
			for (bucket, rank) in zip(self.BUCKETS, (entry.rank_correct, entry.rank_incorrect, entry.rank_all)):
				if rank is None:
					report.skipped.append((entry.label, bucket))
		if len(report.skipped) > 0:
			_log.warning("%s: %d class buckets had fewer than %d frames and were skipped", system, len(report.skipped), self.MIN_BUCKET_FRAMES)
		return report

def rank_table(posteriors: RealMatrix, alignment: ClassAlignment, sample_per_class: int = 1000, variability: float = 0.95, seed: int = 0, mode: VariabilityMode = VariabilityMode.Squared, system: str = "DNN", workers: int = 1, balanced: bool = False) -> RankReport:
	return RankAnalyzer(sample_per_class = sample_per_class, variability = variability, mode = mode, seed = seed, workers = workers, balanced = balanced).rank_table(posteriors, alignment, system = system)

def rank_tables(systems: dict[str, RealMatrix], alignment: ClassAlignment, **kwargs) -> list[RankReport]:
	"""One report per named system (e.g. DNN, projected, RPCA), same sampling seed for all."""
	analyzer = RankAnalyzer(**kwargs)
	return [ analyzer.rank_table(posteriors, alignment, system = name) for (name, posteriors) in systems.items() ]

@dataclasses.dataclass
class AlphaSumRank():
	label: int
	frames: int
	rank: int | None
	degenerate: bool = False

def alpha_sum_rank(codes: list[SparseCode] | RealMatrix, alignment: ClassAlignment, groups: tuple[GroupSpan] | None = None, variability: float = 0.95, mode: VariabilityMode = VariabilityMode.Squared) -> list[AlphaSumRank]:
	"""Effective rank of the stacked alpha-sum vectors of every true class.
	A rank of one means every frame of the class activates the same groups in
	the same proportions."""
	if isinstance(codes, (list, tuple)):
		if len(codes) == 0:
			sums = np.zeros((0, len(groups) if groups else 0))
		else:
			sums = np.stack([ code.group_sums() for code in codes ])
	else:
		if groups is None:
			raise InvalidParameter("group layout is required for a dense code matrix")
		sums = group_sums_matrix(as_real_matrix(codes, what = "code matrix"), groups)
	if len(sums) != len(alignment):
		raise DimensionMismatch(f"alignment has {len(alignment)} labels but there are {len(sums)} codes")

	result = [ ]
	for label in range(alignment.num_classes):
		stack = sums[alignment.labels == label]
		if (len(stack) == 0) or not np.any(stack):
			_log.warning("class %d: no nonzero alpha-sum vectors, skipped", label)
			result.append(AlphaSumRank(label = label, frames = len(stack), rank = None))
			continue
		entry = AlphaSumRank(label = label, frames = len(stack), rank = effective_rank(stack, variability = variability, mode = mode), degenerate = (len(stack) < 2))
		if entry.degenerate:
			_log.info("class %d: alpha-sum rank from a single frame", label)
		result.append(entry)
	return result
