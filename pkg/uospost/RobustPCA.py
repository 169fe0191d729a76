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
from .CoreModel import ClassAlignment, RpcaDecomposition, RealMatrix, as_real_matrix, readonly
from .RankAnalysis import log_transform
from .Enums import RpcaDomain
from .Exceptions import InvalidParameter, SvdFailure
from .WorkerPool import WorkerPool

_log = logging.getLogger(__spec__.name)

ENHANCE_FLOOR = 1e-3

@dataclasses.dataclass(frozen = True)
class RpcaConfig():
	lambda_rpca: float | None = None
	residual_tol: float = 1e-7
	max_iterations: int = 500
	rho: float = 1.5

	def __post_init__(self):
		if (self.lambda_rpca is not None) and not (self.lambda_rpca > 0):
			raise InvalidParameter(f"RPCA lambda must be positive: {self.lambda_rpca}")
		if not (self.residual_tol > 0):
			raise InvalidParameter(f"residual tolerance must be positive: {self.residual_tol}")
		if self.max_iterations < 1:
			raise InvalidParameter(f"max_iterations must be positive: {self.max_iterations}")
		if not (self.rho > 1):
			raise InvalidParameter(f"penalty growth factor must exceed one: {self.rho}")

	def lambda_for(self, shape: tuple[int, int]):
		if self.lambda_rpca is not None:
			return self.lambda_rpca
		return 1 / math.sqrt(max(shape))

	def to_dict(self):
		return dataclasses.asdict(self)

def _svd(matrix: RealMatrix):
	try:
		return scipy.linalg.svd(matrix, full_matrices = False, lapack_driver = "gesdd")
	except (np.linalg.LinAlgError, ValueError):
		_log.debug("gesdd failed on %s matrix, retrying with gesvd", matrix.shape)
	try:
		return scipy.linalg.svd(matrix, full_matrices = False, lapack_driver = "gesvd")
	except (np.linalg.LinAlgError, ValueError) as e:
		raise SvdFailure(f"singular value decomposition of {matrix.shape[0]} x {matrix.shape[1]} matrix failed: {e}") from e

def _shrink_singular_values(matrix: RealMatrix, tau: float):
	(u, s, vt) = _svd(matrix)
	shrunk = np.maximum(s - tau, 0)
	keep = shrunk > 0
	return ((u[:, keep] * shrunk[keep]) @ vt[keep], float(shrunk.sum()))

def singular_value_threshold(matrix: RealMatrix, tau: float) -> RealMatrix:
	if not (tau >= 0):
		raise InvalidParameter(f"threshold must not be negative: {tau}")
	matrix = as_real_matrix(matrix, what = "matrix")
	return _shrink_singular_values(matrix, tau)[0]

def _soft(matrix: RealMatrix, tau: float):
	return np.sign(matrix) * np.maximum(np.abs(matrix) - tau, 0)

def rpca_decompose(matrix: RealMatrix, config: RpcaConfig = RpcaConfig()) -> RpcaDecomposition:
	"""Principal component pursuit by the inexact augmented Lagrange multiplier
	method: min ||L||_* + lambda * ||N||_1 subject to M = L + N."""
	matrix = as_real_matrix(matrix, what = "RPCA input")
	if (matrix.shape[0] < 2) or (matrix.shape[1] < 2):
		raise InvalidParameter(f"RPCA needs at least a 2 x 2 matrix, got {matrix.shape[0]} x {matrix.shape[1]}")
	lam = config.lambda_for(matrix.shape)
	norm_fro = float(np.linalg.norm(matrix))
	if norm_fro == 0:
		zeros = readonly(np.zeros_like(matrix))
		return RpcaDecomposition(low_rank = zeros, sparse = zeros, original = matrix, iterations_used = 0, converged = True, residual = 0.0, lambda_rpca = lam, objective_trace = (0.0, ))

	norm_two = float(_svd(matrix)[1][0])
	dual_scale = max(norm_two, np.abs(matrix).max() / lam)
	multiplier = matrix / dual_scale
	mu = 1.25 / norm_two
	mu_max = mu * 1e7
	stop_scale = max(1.0, norm_fro)

	low_rank = np.zeros_like(matrix)
	sparse = np.zeros_like(matrix)
	trace = [ ]
	residual = math.inf
	converged = False
	iterations = 0
	for iteration in range(1, config.max_iterations + 1):
		iterations = iteration
		sparse = _soft(matrix - low_rank + multiplier / mu, lam / mu)
		(low_rank, nuclear_norm) = _shrink_singular_values(matrix - sparse + multiplier / mu, 1 / mu)
		gap = matrix - low_rank - sparse
		multiplier = multiplier + mu * gap
		mu = min(mu * config.rho, mu_max)

		residual = float(np.linalg.norm(gap)) / stop_scale
		# Objective of the feasible pair (L, M - L)
		trace.append(nuclear_norm + lam * float(np.abs(matrix - low_rank).sum()))
		if residual <= config.residual_tol:
			converged = True
			break

	_log.debug("RPCA %d x %d: %d iterations, residual %.2e, converged %s", matrix.shape[0], matrix.shape[1], iterations, residual, converged)
	return RpcaDecomposition(low_rank = readonly(low_rank), sparse = readonly(sparse), original = matrix, iterations_used = iterations, converged = converged, residual = residual, lambda_rpca = lam, objective_trace = tuple(trace))

@dataclasses.dataclass
class ClassEnhancement():
	label: int
	frames: int
	iterations: int = 0
	converged: bool = False
	skipped: str | None = None

@dataclasses.dataclass
class EnhancementReport():
	domain: RpcaDomain
	classes: list[ClassEnhancement] = dataclasses.field(default_factory = list)

	@property
	def skipped(self):
		return [ entry.label for entry in self.classes if entry.skipped is not None ]

	@property
	def not_converged(self):
		return [ entry.label for entry in self.classes if (entry.skipped is None) and (not entry.converged) ]

	def to_dict(self):
		return {
			"domain": self.domain.value,
			"classes": [ dataclasses.asdict(entry) for entry in self.classes ],
		}

def log_above_floor(posteriors: RealMatrix, floor: float = ENHANCE_FLOOR) -> RealMatrix:
	"""Floored log-posteriors shifted so that the floor maps to zero. Exact
	zeros then become zero entries, and a posterior that only sometimes rises
	above the floor is a sparse positive deviation from it."""
	return log_transform(posteriors, floor) - math.log(floor)

class RpcaEnhancer():
	"""Per-class posterior enhancement: each class's frame matrix is split into
	a low-rank and a sparse part, and the low-rank rows replace the frames.

	In the log domain the decomposed matrix is log(max(p, floor) / floor).
	Mapping back with exp() and row normalisation cancels the shift, so only
	the decomposition sees it: the nuclear norm pulls toward the floor instead
	of toward probability one.

	The default floor lies well above the one of the rank analysis, so clipped
	zeros stay within a few nats of the small posteriors they alternate with."""

	def __init__(self, config: RpcaConfig = RpcaConfig(), domain: RpcaDomain = RpcaDomain.Log, workers: int = 1, floor: float = ENHANCE_FLOOR):
		if not (0 < floor < 1):
			raise InvalidParameter(f"log floor must lie in (0, 1): {floor}")
		self._config = config
		self._domain = RpcaDomain(domain)
		self._workers = workers
		self._floor = floor
		self._report = None

	@property
	def report(self):
		return self._report

	def _to_posteriors(self, low_rank: RealMatrix, original: RealMatrix):
		if self._domain == RpcaDomain.Log:
			values = np.exp(low_rank - low_rank.max(axis = 1, keepdims = True))
		else:
			values = np.maximum(low_rank, 0)
		totals = values.sum(axis = 1)
		usable = totals >= 1e-12
		result = original.copy()
		result[usable] = values[usable] / totals[usable, np.newaxis]
		return result

	def _enhance_class(self, frames: RealMatrix):
		matrix = log_above_floor(frames, self._floor) if (self._domain == RpcaDomain.Log) else frames
		decomposition = rpca_decompose(matrix, self._config)
		return (self._to_posteriors(decomposition.low_rank, frames), decomposition)

	def enhance(self, posteriors: RealMatrix, alignment: ClassAlignment) -> RealMatrix:
		posteriors = as_real_matrix(posteriors, what = "posterior matrix")
		alignment.check_matches(posteriors, what = "posterior matrix")
		report = EnhancementReport(domain = self._domain)
		enhanced = posteriors.copy()

		jobs = [ ]
		for label in range(alignment.num_classes):
			indices = alignment.frames_of(label)
			entry = ClassEnhancement(label = label, frames = len(indices))
			report.classes.append(entry)
			if len(indices) == 0:
				entry.skipped = "empty"
				_log.warning("class %d has no frames, nothing to enhance", label)
			elif (len(indices) < 2) or (posteriors.shape[1] < 2):
				entry.skipped = "too small"
				_log.warning("class %d: %d x %d matrix too small for RPCA, passed through unchanged", label, len(indices), posteriors.shape[1])
			else:
				jobs.append((entry, indices))

		with WorkerPool(self._workers) as pool:
			results = pool.map(lambda job: self._enhance_class(posteriors[job[1]]), jobs)

		for ((entry, indices), (rows, decomposition)) in zip(jobs, results):
			enhanced[indices] = rows
			entry.iterations = decomposition.iterations_used
			entry.converged = decomposition.converged
		if len(report.not_converged) > 0:
			_log.info("RPCA did not converge within %d iterations for %d classes", self._config.max_iterations, len(report.not_converged))
		self._report = report
		return readonly(enhanced)

def rpca_enhance_by_class(posteriors: RealMatrix, alignment: ClassAlignment, config: RpcaConfig = RpcaConfig(), domain: RpcaDomain = RpcaDomain.Log, workers: int = 1, floor: float = ENHANCE_FLOOR) -> RealMatrix:
	return RpcaEnhancer(config, domain = domain, workers = workers, floor = floor).enhance(posteriors, alignment)
