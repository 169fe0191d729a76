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
from .CoreModel import CodingConfig, PosteriorVector, RealVector, RealMatrix, as_real_vector, as_real_matrix, readonly
from .GroupedDictionary import GroupedDictionary, SparseCode
from .SparseSolvers import SparseCoder
from .Enums import CodingMode
from .Exceptions import DimensionMismatch

_log = logging.getLogger(__spec__.name)

DEGENERATE_MASS = 1e-12

@dataclasses.dataclass(frozen = True)
class Degenerate():
	total_mass: float

@dataclasses.dataclass
class ProjectionStats():
	frames: int = 0
	degenerate_frames: list[int] = dataclasses.field(default_factory = list)
	not_converged: int = 0
	mean_distance: float = 0.0

	@property
	def degenerate_count(self):
		return len(self.degenerate_frames)

	def to_dict(self):
		return {
			"frames": self.frames,
			"degenerate_count": self.degenerate_count,
			"degenerate_frames": list(self.degenerate_frames),
			"not_converged": self.not_converged,
			"mean_distance": self.mean_distance,
		}

def reconstruct(dictionary: GroupedDictionary, code: SparseCode | RealVector) -> RealVector:
	coefficients = code.coefficients if isinstance(code, SparseCode) else as_real_vector(code, what = "sparse code")
	if len(coefficients) != dictionary.n:
		raise DimensionMismatch(f"code has {len(coefficients)} coefficients, dictionary has {dictionary.n} atoms")
	return dictionary.atoms @ coefficients

def to_simplex(vector: RealVector) -> PosteriorVector | Degenerate:
	clipped = np.maximum(as_real_vector(vector, what = "reconstruction"), 0)
	total = float(clipped.sum())
	if total < DEGENERATE_MASS:
		return Degenerate(total_mass = total)
	return PosteriorVector(values = readonly(clipped / total))

def project_posteriors(frames: RealMatrix, dictionary: GroupedDictionary, config: CodingConfig, mode: CodingMode = CodingMode.HiLasso, workers: int = 1) -> tuple[RealMatrix, ProjectionStats]:
	"""Moves every frame onto the span of the training posteriors: group-sparse
	code, reconstruction, then back onto the simplex. Frames whose
	reconstruction has no positive mass are passed through unchanged."""
	frames = as_real_matrix(frames, what = "posterior matrix")
	if frames.shape[1] != dictionary.m:
		raise DimensionMismatch(f"posteriors have {frames.shape[1]} columns, dictionary atoms have dimension {dictionary.m}")
	coder = SparseCoder(dictionary, config)
	(codes, reports) = coder.batch_encode(frames, mode = mode, workers = workers)
	reconstructions = codes @ dictionary.atoms.T

	projected = np.empty_like(frames)
	stats = ProjectionStats(frames = len(frames), not_converged = sum(1 for report in reports if not report.converged))
	for (index, reconstruction) in enumerate(reconstructions):
		result = to_simplex(reconstruction)
		if isinstance(result, Degenerate):
			projected[index] = frames[index]
			stats.degenerate_frames.append(index)
		else:
			projected[index] = result.values
	if len(frames) > 0:
		stats.mean_distance = float(np.linalg.norm(projected - frames, axis = 1).mean())
	if stats.degenerate_count > 0:
		_log.info("Projection: %d of %d frames had no positive reconstruction mass and were passed through", stats.degenerate_count, len(frames))
	return (readonly(projected), stats)
