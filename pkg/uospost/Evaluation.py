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
from .CoreModel import ClassAlignment, RealMatrix, RealVector, SIMPLEX_TOLERANCE, as_real_matrix, as_real_vector, collapse_runs, readonly
from .Exceptions import InvalidParameter, DimensionMismatch, NegativeEntry, NotNormalized, EmptyInput, AllPathsImpossible, EmptyReference

_log = logging.getLogger(__spec__.name)

def _safe_log(values: np.ndarray):
	with np.errstate(divide = "ignore"):
		return np.log(values)

class TransitionModel():
	"""First-order state transition model, held as log-probabilities; zero
	probabilities become -inf."""

	def __init__(self, log_transitions: RealMatrix, log_initial: RealVector):
		log_transitions = np.array(log_transitions, dtype = np.float64)
		log_initial = np.array(log_initial, dtype = np.float64)
		if (log_transitions.ndim != 2) or (log_transitions.shape[0] != log_transitions.shape[1]) or (log_transitions.shape[0] < 1):
			raise DimensionMismatch(f"transition matrix must be square and nonempty, got shape {log_transitions.shape}")
		if log_initial.shape != (log_transitions.shape[0], ):
			raise DimensionMismatch(f"initial distribution has shape {log_initial.shape}, expected ({log_transitions.shape[0]},)")
		if np.any(np.isnan(log_transitions)) or np.any(np.isnan(log_initial)) or np.any(log_transitions == np.inf) or np.any(log_initial == np.inf):
			raise InvalidParameter("log-probabilities must be finite or -inf")
		for (index, row) in enumerate(np.exp(log_transitions)):
			if abs(row.sum() - 1) > SIMPLEX_TOLERANCE:
				raise NotNormalized(f"transition row {index} sums to {row.sum():.9f}")
		if abs(np.exp(log_initial).sum() - 1) > SIMPLEX_TOLERANCE:
			raise NotNormalized(f"initial distribution sums to {np.exp(log_initial).sum():.9f}")
		self._log_transitions = readonly(log_transitions)
		self._log_initial = readonly(log_initial)

	@classmethod
	def from_probabilities(cls, transitions: RealMatrix, initial: RealVector | None = None):
		transitions = as_real_matrix(transitions, what = "transition matrix")
		if initial is None:
			initial = np.full(transitions.shape[0], 1 / transitions.shape[0])
		initial = as_real_vector(initial, what = "initial distribution")
		if np.any(transitions < 0) or np.any(initial < 0):
			raise NegativeEntry("transition model has negative probabilities")
		return cls(_safe_log(transitions), _safe_log(initial))

	@classmethod
	def self_loop(cls, num_states: int, self_loop: float = 0.9):
		if num_states < 1:
			raise InvalidParameter(f"need at least one state: {num_states}")
		if not (0 <= self_loop <= 1):
			raise InvalidParameter(f"self-loop probability must lie in [0, 1]: {self_loop}")
		if num_states == 1:
			return cls.from_probabilities(np.ones((1, 1)))
		transitions = np.full((num_states, num_states), (1 - self_loop) / (num_states - 1))
		np.fill_diagonal(transitions, self_loop)
		return cls.from_probabilities(transitions)

	@property
	def num_states(self):
		return self._log_transitions.shape[0]

	@property
	def log_transitions(self):
		return self._log_transitions

	@property
	def log_initial(self):
		return self._log_initial

	@property
	def transitions(self):
		return np.exp(self._log_transitions)

	@property
	def initial(self):
		return np.exp(self._log_initial)

	def emission_scores(self, posteriors: RealMatrix, priors: RealVector | None = None):
		posteriors = as_real_matrix(posteriors, what = "posterior matrix")
		if posteriors.shape[1] != self.num_states:
			raise DimensionMismatch(f"posteriors have {posteriors.shape[1]} columns, transition model has {self.num_states} states")
		if np.any(posteriors < 0):
			raise NegativeEntry("posterior matrix has negative entries")
		row_sums = posteriors.sum(axis = 1)
		if np.any(np.abs(row_sums - 1) > SIMPLEX_TOLERANCE):
			bad = int(np.argmax(np.abs(row_sums - 1)))
			raise NotNormalized(f"posterior frame {bad} sums to {row_sums[bad]:.9f}")
		scores = _safe_log(posteriors)
		if priors is not None:
			priors = as_real_vector(priors, what = "class priors")
			if len(priors) != self.num_states:
				raise DimensionMismatch(f"{len(priors)} priors for {self.num_states} states")
			if np.any(priors <= 0):
				raise InvalidParameter("class priors must be positive")
			# Scaled likelihoods p(s | x) / p(s)
			scores = scores - np.log(priors)
		return scores

	def path_score(self, posteriors: RealMatrix, path, priors: RealVector | None = None) -> float:
		scores = self.emission_scores(posteriors, priors)
		path = [ int(state) for state in path ]
		if len(path) != len(scores):
			raise DimensionMismatch(f"path has {len(path)} states for {len(scores)} frames")
		if len(path) == 0:
			return 0.0
		total = self._log_initial[path[0]] + scores[0, path[0]]
		for t in range(1, len(path)):
			total = (total + self._log_transitions[path[t - 1], path[t]]) + scores[t, path[t]]
		return float(total)

	def to_dict(self):
		return {
			"states": self.num_states,
			"transitions": self.transitions.tolist(),
			"initial": self.initial.tolist(),
		}

def frame_error(posteriors: RealMatrix, alignment: ClassAlignment) -> float:
	posteriors = as_real_matrix(posteriors, what = "posterior matrix")
	alignment.check_matches(posteriors, what = "posterior matrix")
	if len(posteriors) == 0:
		raise EmptyInput("frame error of zero frames is undefined")
	return float(np.mean(np.argmax(posteriors, axis = 1) != alignment.labels))

def viterbi_decode(posteriors: RealMatrix, model: TransitionModel, priors: RealVector | None = None) -> np.ndarray:
	"""Best state sequence with posteriors (or scaled likelihoods) as emission
	scores. Among equally scored predecessors the lowest state index wins."""
	scores = model.emission_scores(posteriors, priors)
	(num_frames, num_states) = scores.shape
	if num_frames == 0:
		return np.zeros(0, dtype = np.int64)
	backpointers = np.zeros((num_frames, num_states), dtype = np.int64)
	delta = model.log_initial + scores[0]
	for t in range(1, num_frames):
		candidates = delta[:, np.newaxis] + model.log_transitions
		backpointers[t] = np.argmax(candidates, axis = 0)
		delta = candidates[backpointers[t], np.arange(num_states)] + scores[t]
	if np.all(delta == -np.inf):
		raise AllPathsImpossible(f"every state path over {num_frames} frames has zero probability")
	path = np.zeros(num_frames, dtype = np.int64)
	path[-1] = int(np.argmax(delta))
	for t in range(num_frames - 1, 0, -1):
		path[t - 1] = backpointers[t, path[t]]
	return path

@dataclasses.dataclass(frozen = True)
class EditResult():
	rate: float
	insertions: int
	deletions: int
	substitutions: int
	reference_length: int

	@property
	def errors(self):
		return self.insertions + self.deletions + self.substitutions

	def to_dict(self):
		return dataclasses.asdict(self)

def edit_distance_rate(hypothesis, reference) -> EditResult:
	hypothesis = list(hypothesis)
	reference = list(reference)
	if len(reference) == 0:
		raise EmptyReference("error rate against an empty reference is undefined")
	(rows, cols) = (len(hypothesis) + 1, len(reference) + 1)
	cost = np.zeros((rows, cols), dtype = np.int64)
	cost[:, 0] = np.arange(rows)
	cost[0, :] = np.arange(cols)
	for i in range(1, rows):
		for j in range(1, cols):
			cost[i, j] = min(cost[i - 1, j - 1] + (hypothesis[i - 1] != reference[j - 1]), cost[i - 1, j] + 1, cost[i, j - 1] + 1)

	(insertions, deletions, substitutions) = (0, 0, 0)
	(i, j) = (rows - 1, cols - 1)
	while (i > 0) or (j > 0):
		if (i > 0) and (j > 0) and (cost[i, j] == cost[i - 1, j - 1] + (hypothesis[i - 1] != reference[j - 1])):
			substitutions += int(hypothesis[i - 1] != reference[j - 1])
			(i, j) = (i - 1, j - 1)
		elif (i > 0) and (cost[i, j] == cost[i - 1, j] + 1):
			insertions += 1
			i -= 1
		else:
			deletions += 1
			j -= 1
	return EditResult(rate = (insertions + deletions + substitutions) / len(reference), insertions = insertions, deletions = deletions, substitutions = substitutions, reference_length = len(reference))

def relative_change(before: float, after: float) -> float:
	if before == 0:
		return 0.0 if (after == 0) else math.inf
	return (after - before) / before

@dataclasses.dataclass(frozen = True)
class SystemResult():
	name: str
	frame_error: float
	sequence: EditResult
	frame_error_change: float = 0.0
	sequence_error_change: float = 0.0

	def to_dict(self):
		return {
			"name": self.name,
			"frame_error": self.frame_error,
			"frame_error_change": self.frame_error_change,
			"sequence_error": self.sequence.rate,
			"sequence_error_change": self.sequence_error_change,
			"insertions": self.sequence.insertions,
			"deletions": self.sequence.deletions,
			"substitutions": self.sequence.substitutions,
			"reference_length": self.sequence.reference_length,
		}

class SystemComparison():
	"""Frame error and label-sequence error of named posterior systems against
	one reference alignment. The first system is the baseline that relative
	changes refer to."""

	def __init__(self, alignment: ClassAlignment, model: TransitionModel, priors: RealVector | None = None):
		self._alignment = alignment
		self._model = model
		self._priors = priors
		self._reference = alignment.collapsed()

	def evaluate(self, name: str, posteriors: RealMatrix) -> SystemResult:
		error = frame_error(posteriors, self._alignment)
		decoded = viterbi_decode(posteriors, self._model, self._priors)
		sequence = edit_distance_rate(collapse_runs(decoded), self._reference)
		_log.debug("%s: frame error %.4f, label-sequence error %.4f", name, error, sequence.rate)
		return SystemResult(name = name, frame_error = error, sequence = sequence)

	def compare(self, systems: dict[str, RealMatrix]) -> list[SystemResult]:
		if len(systems) == 0:
			raise EmptyInput("nothing to compare")
		results = [ self.evaluate(name, posteriors) for (name, posteriors) in systems.items() ]
		baseline = results[0]
		return [ dataclasses.replace(result, frame_error_change = relative_change(baseline.frame_error, result.frame_error), sequence_error_change = relative_change(baseline.sequence.rate, result.sequence.rate)) for result in results ]

def compare_systems(before: RealMatrix, after: RealMatrix, alignment: ClassAlignment, model: TransitionModel, priors: RealVector | None = None) -> list[SystemResult]:
	before = as_real_matrix(before, what = "baseline posteriors")
	after = as_real_matrix(after, what = "enhanced posteriors")
	if before.shape != after.shape:
		raise DimensionMismatch(f"systems differ in shape: {before.shape} vs {after.shape}")
	return SystemComparison(alignment, model, priors).compare({ "before": before, "after": after })
