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
from .CoreModel import CodingConfig, RealVector, RealMatrix, as_real_vector, as_real_matrix, readonly
from .GroupedDictionary import GroupedDictionary, SparseCode
from .Enums import CodingMode
from .Exceptions import UosException, DimensionMismatch, InvalidParameter, FrameError
from .WorkerPool import WorkerPool

_log = logging.getLogger(__spec__.name)

def soft_threshold(x, t):
	if np.any(np.asarray(t) < 0):
		raise InvalidParameter(f"soft-threshold level must not be negative: {t}")
	result = np.sign(x) * np.maximum(np.abs(x) - t, 0)
	if np.ndim(result) == 0:
		return float(result)
	return result

@dataclasses.dataclass(frozen = True)
class SolverReport():
	iterations_used: int
	final_objective: float
	converged: bool
	duality_gap_or_rel_change: float
	objective_trace: tuple[float, ...] = ( )

class SparseCoder():
	"""Sparse coding of posterior frames over one grouped dictionary. All
	objectives use the halved convention of CodingConfig."""

	def __init__(self, dictionary: GroupedDictionary, config: CodingConfig):
		self._dictionary = dictionary
		self._config = config

	@property
	def dictionary(self):
		return self._dictionary

	@property
	def config(self):
		return self._config

	def _check_frame(self, z: RealVector) -> RealVector:
		z = as_real_vector(z, what = "posterior frame")
		if len(z) != self._dictionary.m:
			raise DimensionMismatch(f"frame has dimension {len(z)}, dictionary atoms have dimension {self._dictionary.m}")
		return z

	def _check_frames(self, frames: RealMatrix) -> RealMatrix:
		frames = as_real_matrix(frames, what = "posterior matrix")
		if frames.shape[1] != self._dictionary.m:
			raise DimensionMismatch(f"frames have dimension {frames.shape[1]}, dictionary atoms have dimension {self._dictionary.m}")
		return frames

	def lasso_objective(self, z: RealVector, alpha: RealVector) -> float:
		residual = z - self._dictionary.atoms @ alpha
		return float(0.5 * (residual @ residual) + self._config.internal_lambda1 * np.abs(alpha).sum())

	def hilasso_objective(self, z: RealVector, alpha: RealVector) -> float:
		residual = z - self._dictionary.atoms @ alpha
		group_norms = np.sqrt(np.bincount(self._dictionary.group_index, weights = alpha ** 2, minlength = self._dictionary.num_groups))
		return float(0.5 * (residual @ residual) + self._config.internal_lambda1 * np.abs(alpha).sum() + self._config.internal_lambda2 * group_norms.sum())

	@staticmethod
	def _lasso_gap(correlations, sq_norms, alpha, fitted, lam):
		# Columns are frames; fitted = G alpha, correlations = D^T z
		c_alpha = (correlations * alpha).sum(axis = 0)
		residual_sq = np.maximum(sq_norms - 2 * c_alpha + (alpha * fitted).sum(axis = 0), 0)
		primal = 0.5 * residual_sq + lam * np.abs(alpha).sum(axis = 0)
		dual_norm = np.abs(correlations - fitted).max(axis = 0)
		with np.errstate(divide = "ignore", invalid = "ignore"):
			scale = np.where(dual_norm > lam, lam / dual_norm, 1.0)
		dual = scale * (sq_norms - c_alpha) - 0.5 * (scale ** 2) * residual_sq
		return (np.maximum(primal - dual, 0), primal)

	def _coordinate_descent(self, frames: RealMatrix):
		"""Cyclic coordinate descent, ascending atom order, run on a stack of
		frames at once. Each frame stops on its own duality gap."""
		lam = self._config.internal_lambda1
		gram = self._dictionary.gram
		diag = np.diag(gram)
		correlations = self._dictionary.atoms.T @ frames.T
		sq_norms = (frames ** 2).sum(axis = 1)
		thresholds = self._config.tolerance * np.maximum(1.0, sq_norms)
		(n, batch) = correlations.shape

		alpha = np.zeros((n, batch))
		fitted = np.zeros((n, batch))
		iterations = np.zeros(batch, dtype = int)
		(gaps, objectives) = self._lasso_gap(correlations, sq_norms, alpha, fitted, lam)
		traces = [ [ float(objective) ] for objective in objectives ]
		converged = gaps <= thresholds
		active = np.flatnonzero(~converged)

		for sweep in range(1, self._config.max_iterations + 1):
			if len(active) == 0:
				break
			sub_alpha = alpha[:, active]
			sub_fitted = fitted[:, active]
			sub_corr = correlations[:, active]
			for j in range(n):
				if diag[j] <= 0:
					continue
				old = sub_alpha[j].copy()
				rho = sub_corr[j] - sub_fitted[j] + diag[j] * old
				new = np.sign(rho) * np.maximum(np.abs(rho) - lam, 0) / diag[j]
				delta = new - old
				if np.any(delta != 0):
					sub_fitted += np.outer(gram[:, j], delta)
					sub_alpha[j] = new
			sub_fitted = gram @ sub_alpha
			alpha[:, active] = sub_alpha
			fitted[:, active] = sub_fitted
			iterations[active] = sweep

			(sub_gaps, sub_objectives) = self._lasso_gap(sub_corr, sq_norms[active], sub_alpha, sub_fitted, lam)
			gaps[active] = sub_gaps
			objectives[active] = sub_objectives
			for (frame_index, objective) in zip(active, sub_objectives):
				traces[frame_index].append(float(objective))
			done = sub_gaps <= thresholds[active]
			converged[active[done]] = True
			active = active[~done]

		reports = [ SolverReport(iterations_used = int(iterations[i]), final_objective = float(objectives[i]), converged = bool(converged[i]), duality_gap_or_rel_change = float(gaps[i]), objective_trace = tuple(traces[i])) for i in range(batch) ]
		return (alpha.T, reports)

	def _require_lasso_penalty(self):
		if not (self._config.lambda1 > 0):
			raise InvalidParameter(f"lasso coding needs a positive lambda1, got {self._config.lambda1}")

	def lasso_encode(self, z: RealVector) -> tuple[SparseCode, SolverReport]:
		self._require_lasso_penalty()
		z = self._check_frame(z)
		(alpha, reports) = self._coordinate_descent(z[np.newaxis, :])
		return (SparseCode.for_dictionary(alpha[0], self._dictionary), reports[0])

	def lasso_encode_stack(self, frames: RealMatrix) -> tuple[RealMatrix, list[SolverReport]]:
		"""Codes a stack of frames in one vectorised run; used by dictionary
		training where per-frame calls would dominate the runtime."""
		self._require_lasso_penalty()
		frames = self._check_frames(frames)
		return self._coordinate_descent(frames)

	def _group_prox(self, v: RealVector, t1: float, t2: float) -> RealVector:
		u = np.sign(v) * np.maximum(np.abs(v) - t1, 0)
		if t2 > 0:
			index = self._dictionary.group_index
			norms = np.sqrt(np.bincount(index, weights = u ** 2, minlength = self._dictionary.num_groups))
			factors = np.where(norms > t2, 1 - t2 / np.maximum(norms, np.finfo(float).tiny), 0.0)
			u = u * factors[index]
		return u

	def hilasso_encode(self, z: RealVector) -> tuple[SparseCode, SolverReport]:
		"""Accelerated proximal gradient with function-value restart. The
		composite prox is entrywise soft-threshold followed by groupwise l2
		shrinkage. Accepted iterates never increase the objective."""
		if (self._config.lambda1 == 0) and (self._config.lambda2 == 0):
			raise InvalidParameter("hierarchical lasso needs lambda1 or lambda2 to be positive")
		z = self._check_frame(z)
		atoms = self._dictionary.atoms
		lipschitz = self._dictionary.lipschitz_estimate
		lam1 = self._config.internal_lambda1
		lam2 = self._config.internal_lambda2

		x = np.zeros(self._dictionary.n)
		y = x
		t = 1.0
		objective = self.hilasso_objective(z, x)
		trace = [ objective ]
		change = math.inf
		converged = False
		iterations = 0
		for iteration in range(1, self._config.max_iterations + 1):
			iterations = iteration
			gradient = atoms.T @ (atoms @ y - z)
			while True:
				candidate = self._group_prox(y - gradient / lipschitz, lam1 / lipschitz, lam2 / lipschitz)
				step = candidate - y
				step_sq = float(step @ step)
				if step_sq == 0:
					break
				image = atoms @ step
				if float(image @ image) <= lipschitz * step_sq * (1 + 1e-12):
					break
				# Power-method estimate was too low for this direction
				lipschitz *= 2

			new_objective = self.hilasso_objective(z, candidate)
			if new_objective > objective:
				if y is x:
					# No decrease even without momentum, stationary up to rounding
					change = 0.0
					converged = True
					break
				t = 1.0
				y = x
				continue

			t_next = (1 + math.sqrt(1 + 4 * t * t)) / 2
			y = candidate + ((t - 1) / t_next) * (candidate - x)
			x = candidate
			t = t_next
			change = abs(objective - new_objective) / max(abs(objective), np.finfo(float).tiny)
			objective = new_objective
			trace.append(objective)
			if change <= self._config.tolerance:
				converged = True
				break

		report = SolverReport(iterations_used = iterations, final_objective = objective, converged = converged, duality_gap_or_rel_change = change, objective_trace = tuple(trace))
		return (SparseCode.for_dictionary(x, self._dictionary), report)

	def encode(self, z: RealVector, mode: CodingMode = CodingMode.HiLasso):
		match CodingMode(mode):
			case CodingMode.Lasso:
				return self.lasso_encode(z)
			case CodingMode.HiLasso:
				return self.hilasso_encode(z)

	def batch_encode(self, frames: RealMatrix, mode: CodingMode = CodingMode.HiLasso, workers: int = 1) -> tuple[RealMatrix, list[SolverReport]]:
		frames = self._check_frames(frames)
		mode = CodingMode(mode)

		def encode_frame(index: int):
			try:
				(code, report) = self.encode(frames[index], mode)
			except UosException as e:
				raise FrameError(index, e) from e
			return (code.coefficients, report)

		with WorkerPool(workers) as pool:
			results = pool.map(encode_frame, range(len(frames)))

		codes = np.zeros((len(frames), self._dictionary.n))
		reports = [ ]
		for (index, (coefficients, report)) in enumerate(results):
			codes[index] = coefficients
			reports.append(report)
		not_converged = sum(1 for report in reports if not report.converged)
		if not_converged > 0:
			_log.info("%s coding: %d of %d frames did not converge within %d iterations", mode.value, not_converged, len(frames), self._config.max_iterations)
		return (readonly(codes), reports)

def lasso_encode(z: RealVector, dictionary: GroupedDictionary, config: CodingConfig) -> tuple[SparseCode, SolverReport]:
	return SparseCoder(dictionary, config).lasso_encode(z)

def hilasso_encode(z: RealVector, dictionary: GroupedDictionary, config: CodingConfig) -> tuple[SparseCode, SolverReport]:
	return SparseCoder(dictionary, config).hilasso_encode(z)

def batch_encode(frames: RealMatrix, dictionary: GroupedDictionary, config: CodingConfig, mode: CodingMode = CodingMode.HiLasso, workers: int = 1) -> tuple[RealMatrix, list[SolverReport]]:
	return SparseCoder(dictionary, config).batch_encode(frames, mode = mode, workers = workers)
