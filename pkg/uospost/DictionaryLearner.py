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
from .CoreModel import CodingConfig, ClassAlignment, RealMatrix, as_real_matrix
from .GroupedDictionary import GroupedDictionary
from .SparseSolvers import SparseCoder
from .Exceptions import EmptyInput, EmptyClass, InvalidParameter
from .WorkerPool import WorkerPool
from .Tools import SeedTools

_log = logging.getLogger(__spec__.name)

@dataclasses.dataclass
class LearnerState():
	accum_A: np.ndarray				# sum of alpha alpha^T, n x n
	accum_B: np.ndarray				# sum of z alpha^T, m x n
	samples_seen: int
	rng_seed: int

	@classmethod
	def empty(cls, m: int, n: int, rng_seed: int):
		return cls(accum_A = np.zeros((n, n)), accum_B = np.zeros((m, n)), samples_seen = 0, rng_seed = rng_seed)

	def accumulate(self, frames: RealMatrix, codes: RealMatrix):
		self.accum_A += codes.T @ codes
		self.accum_B += frames.T @ codes
		self.samples_seen += len(frames)

	def is_consistent(self, tolerance: float = 1e-8):
		if not np.allclose(self.accum_A, self.accum_A.T, rtol = 0, atol = tolerance):
			return False
		scale = max(1.0, float(np.trace(self.accum_A)))
		return bool(np.linalg.eigvalsh(self.accum_A).min() >= -tolerance * scale)

@dataclasses.dataclass
class ClassTrainingReport():
	label: int
	frames: int
	atoms: int
	capped: bool = False
	empty: bool = False
	objective_trace: list[float] = dataclasses.field(default_factory = list)
	rejected_epochs: int = 0
	refined_epochs: int = 0
	reinitialized_atoms: int = 0

def random_dictionary(m: int, n: int, seed: int) -> GroupedDictionary:
	"""Gaussian atoms scaled to unit norm; the untrained baseline."""
	atoms = np.random.default_rng(seed).standard_normal((m, n))
	atoms /= np.linalg.norm(atoms, axis = 0)
	return GroupedDictionary.single_group(atoms)

class OnlineDictionaryLearner():
	"""Mini-batch online dictionary learning: lasso coding of a mini-batch,
	accumulation of sufficient statistics, then one block-coordinate pass over
	the atoms, each projected back onto the unit l2 ball."""
	UNUSED_ATOM_THRESHOLD = 1e-10

	def __init__(self, config: CodingConfig, n_atoms: int = 100, epochs: int = 10, batch_size: int = 64, workers: int = 1):
		if n_atoms < 1:
			raise InvalidParameter(f"need at least one atom per class: {n_atoms}")
		if epochs < 0:
			raise InvalidParameter(f"number of epochs must not be negative: {epochs}")
		if batch_size < 1:
			raise InvalidParameter(f"mini-batch size must be positive: {batch_size}")
		self._config = config
		self._n_atoms = n_atoms
		self._epochs = epochs
		self._batch_size = batch_size
		self._workers = workers
		self._reports = [ ]

	@property
	def reports(self):
		return self._reports

	@property
	def empty_classes(self):
		return [ report.label for report in self._reports if report.empty ]

	@property
	def capped_classes(self):
		return [ report.label for report in self._reports if report.capped ]

	def surrogate_objective(self, atoms: RealMatrix, frames: RealMatrix):
		"""Mean of 0.5 * ||z - D a||^2 + lambda1/2 * ||a||_1 over the frames, with
		codes recomputed by lasso coding against the given atoms."""
		coder = SparseCoder(GroupedDictionary.single_group(atoms), self._config)
		(codes, reports) = coder.lasso_encode_stack(frames)
		residuals = frames - codes @ atoms.T
		per_frame = 0.5 * (residuals ** 2).sum(axis = 1) + self._config.internal_lambda1 * np.abs(codes).sum(axis = 1)
		return (float(per_frame.mean()), codes)

	def _initial_atoms(self, frames: RealMatrix, n_atoms: int, rng: np.random.Generator):
		indices = rng.choice(len(frames), size = n_atoms, replace = False)
		atoms = frames[indices].T.copy()
		norms = np.linalg.norm(atoms, axis = 0)
		nonzero = norms > 0
		atoms[:, nonzero] /= norms[nonzero]
		return atoms

	def _worst_frames(self, frames: RealMatrix, codes: RealMatrix, atoms: RealMatrix):
		errors = np.linalg.norm(frames - codes @ atoms.T, axis = 1)
		# Stable order: largest error first, ties by frame index
		return np.lexsort((np.arange(len(frames)), -errors))

	def _update_atoms(self, atoms: RealMatrix, state: LearnerState, frames: RealMatrix, codes: RealMatrix, report: ClassTrainingReport):
		atoms = atoms.copy()
		worst_order = None
		worst_used = 0
		for j in range(atoms.shape[1]):
			a_jj = state.accum_A[j, j]
			if a_jj < self.UNUSED_ATOM_THRESHOLD:
				if worst_order is None:
					worst_order = self._worst_frames(frames, codes, atoms)
				replacement = frames[worst_order[worst_used % len(worst_order)]]
				worst_used += 1
				norm = np.linalg.norm(replacement)
				if norm > 0:
					atoms[:, j] = replacement / norm
					report.reinitialized_atoms += 1
					_log.debug("class %d: atom %d unused, reinitialized from worst-reconstructed frame", report.label, j)
				continue
			update = (state.accum_B[:, j] - atoms @ state.accum_A[:, j]) / a_jj + atoms[:, j]
			atoms[:, j] = update / max(1.0, np.linalg.norm(update))
		return atoms

	def _refine_full_batch(self, atoms: RealMatrix, frames: RealMatrix, codes: RealMatrix):
		"""One exact block-coordinate pass on the full-batch statistics; never
		increases the reconstruction term for fixed codes."""
		gram = codes.T @ codes
		cross = frames.T @ codes
		atoms = atoms.copy()
		for j in range(atoms.shape[1]):
			if gram[j, j] < self.UNUSED_ATOM_THRESHOLD:
				continue
			update = (cross[:, j] - atoms @ gram[:, j]) / gram[j, j] + atoms[:, j]
			atoms[:, j] = update / max(1.0, np.linalg.norm(update))
		return atoms

	def learn_class_dictionary(self, frames: RealMatrix, seed: int, label: int = 0) -> GroupedDictionary:
		frames = as_real_matrix(frames, what = f"training frames of class {label}")
		if len(frames) == 0:
			raise EmptyInput(f"class {label} has no training frames")
		n_atoms = self._n_atoms
		report = ClassTrainingReport(label = label, frames = len(frames), atoms = n_atoms)
		if n_atoms > len(frames):
			_log.warning("class %d: only %d frames for %d atoms, capping group size at %d", label, len(frames), n_atoms, len(frames))
			n_atoms = len(frames)
			report.atoms = n_atoms
			report.capped = True

		rng = np.random.default_rng(seed)
		atoms = self._initial_atoms(frames, n_atoms, rng)
		state = LearnerState.empty(frames.shape[1], n_atoms, rng_seed = seed)
		(objective, codes) = self.surrogate_objective(atoms, frames)
		report.objective_trace.append(objective)

		for epoch in range(self._epochs):
			order = rng.permutation(len(frames))
			candidate = atoms
			for start in range(0, len(frames), self._batch_size):
				batch = frames[order[start : start + self._batch_size]]
				coder = SparseCoder(GroupedDictionary.single_group(candidate), self._config)
				(batch_codes, batch_reports) = coder.lasso_encode_stack(batch)
				state.accumulate(batch, batch_codes)
				candidate = self._update_atoms(candidate, state, batch, batch_codes, report)

			(candidate_objective, candidate_codes) = self.surrogate_objective(candidate, frames)
			if candidate_objective > objective:
				# Online pass made things worse, fall back to an exact full-batch step
				candidate = self._refine_full_batch(atoms, frames, codes)
				(candidate_objective, candidate_codes) = self.surrogate_objective(candidate, frames)
				if candidate_objective > objective:
					report.rejected_epochs += 1
					_log.debug("class %d epoch %d: rejected, objective %.3e > %.3e", label, epoch, candidate_objective, objective)
					report.objective_trace.append(objective)
					continue
				report.refined_epochs += 1
			(atoms, objective, codes) = (candidate, candidate_objective, candidate_codes)
			report.objective_trace.append(objective)
			_log.debug("class %d epoch %d: objective %.6e", label, epoch, objective)

		dead = np.flatnonzero(np.linalg.norm(atoms, axis = 0) == 0)
		if len(dead) > 0:
			worst_order = self._worst_frames(frames, codes, atoms)
			for (no, j) in enumerate(dead):
				replacement = frames[worst_order[no % len(worst_order)]]
				if np.linalg.norm(replacement) > 0:
					atoms[:, j] = replacement / np.linalg.norm(replacement)

		self._reports.append(report)
		return GroupedDictionary.single_group(atoms, label = label)

	def _fallback_group(self, m: int, label: int) -> GroupedDictionary:
		# Ideal posterior of the class: all mass on its own coordinate
		atom = np.zeros((m, 1))
		atom[label % m, 0] = 1
		return GroupedDictionary.single_group(atom, label = label)

	def learn_all(self, frames: RealMatrix, alignment: ClassAlignment, seed: int) -> GroupedDictionary:
		frames = as_real_matrix(frames, what = "training frames")
		alignment.check_matches(frames, what = "training frames")
		self._reports = [ ]

		def learn(label: int):
			indices = alignment.frames_of(label)
			if len(indices) == 0:
				return None
			learner = OnlineDictionaryLearner(self._config, n_atoms = self._n_atoms, epochs = self._epochs, batch_size = self._batch_size)
			dictionary = learner.learn_class_dictionary(frames[indices], seed = SeedTools.derive(seed, label), label = label)
			return (dictionary, learner.reports[0])

		with WorkerPool(self._workers) as pool:
			results = pool.map(learn, range(alignment.num_classes))

		groups = [ ]
		empty = [ ]
		for (label, result) in enumerate(results):
			if result is None:
				empty.append(EmptyClass(f"class {label} has no frames in the alignment"))
				self._reports.append(ClassTrainingReport(label = label, frames = 0, atoms = 1, empty = True))
				groups.append(self._fallback_group(frames.shape[1], label))
			else:
				(dictionary, report) = result
				self._reports.append(report)
				groups.append(dictionary)
		for error in empty:
			_log.warning("%s, using its one-hot posterior as the only atom", error)
		if len(groups) == 0:
			raise EmptyInput("alignment declares no classes")

		dictionary = GroupedDictionary.concatenate(groups)
		_log.info("Trained %d atoms in %d groups from %d frames (%.1f%% of the collection size)", dictionary.n, dictionary.num_groups, len(frames), 100 * dictionary.n / max(1, len(frames)))
		return dictionary

def learn_class_dictionary(frames: RealMatrix, n_atoms: int, config: CodingConfig, epochs: int = 10, seed: int = 0, batch_size: int = 64) -> GroupedDictionary:
	return OnlineDictionaryLearner(config, n_atoms = n_atoms, epochs = epochs, batch_size = batch_size).learn_class_dictionary(frames, seed = seed)

def learn_all(frames: RealMatrix, alignment: ClassAlignment, n_atoms_per_class: int, config: CodingConfig, epochs: int = 10, seed: int = 0, batch_size: int = 64, workers: int = 1) -> GroupedDictionary:
	return OnlineDictionaryLearner(config, n_atoms = n_atoms_per_class, epochs = epochs, batch_size = batch_size, workers = workers).learn_all(frames, alignment, seed = seed)
