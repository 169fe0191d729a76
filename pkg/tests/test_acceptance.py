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
import pytest
import numpy as np
import scipy.optimize
from uospost.CoreModel import CodingConfig
from uospost.Enums import CodingMode
from uospost.GroupedDictionary import GroupedDictionary
from uospost.SparseSolvers import SparseCoder, batch_encode
from uospost.DictionaryLearner import OnlineDictionaryLearner, random_dictionary
from uospost.Projection import project_posteriors
from uospost.RankAnalysis import rank_table, alpha_sum_rank
from uospost.RobustPCA import rpca_enhance_by_class
from uospost.Evaluation import frame_error, SystemComparison, TransitionModel
from uospost.Synth import SynthConfig, generate_subspaces, generate_dataset
from uospost.Tools import SeedTools

LAMBDA = 0.05

class TrainedSuite():
	def __init__(self, seed: int):
		self.config = SynthConfig(m = 50, num_classes = 5, rank = 3, frames_per_class = 200, subspace_angle_min = 30, seed = seed)
		self.spec = generate_subspaces(self.config)
		self.training = generate_dataset(self.spec, self.config)
		self.coding = CodingConfig(lambda1 = LAMBDA)
		self.learner = OnlineDictionaryLearner(self.coding, n_atoms = 20, epochs = 3, workers = 5)
		self.dictionary = self.learner.learn_all(self.training.clean, self.training.alignment, seed = seed)

	def heldout(self, noise_sigma: float, run_length: tuple[int, int] = (5, 20)):
		config = dataclasses.replace(self.config, seed = SeedTools.derive(self.config.seed, 99), noise_sigma = noise_sigma, frames_per_class = 100, run_length = run_length)
		return generate_dataset(self.spec, config)

_suites = { }

@pytest.fixture(scope = "module", params = [ 0, 1, 2 ])
def suite(request):
	if request.param not in _suites:
		_suites[request.param] = TrainedSuite(request.param)
	return _suites[request.param]

def lasso_reference_objective(atoms, z, lam):
	"""Independent solution of the lasso as a bound-constrained smooth problem
	in the split variables a = u - v with u, v >= 0."""
	n = atoms.shape[1]

	def objective(x):
		alpha = x[:n] - x[n:]
		residual = z - atoms @ alpha
		gradient = -(atoms.T @ residual)
		return (0.5 * (residual @ residual) + lam * x.sum(), np.concatenate([ gradient + lam, -gradient + lam ]))

	result = scipy.optimize.minimize(objective, np.zeros(2 * n), jac = True, method = "L-BFGS-B", bounds = [ (0, None) ] * (2 * n), options = { "ftol": 1e-15, "gtol": 1e-12, "maxiter": 20000 })
	return float(result.fun)

def test_lasso_matches_reference_solver():
	rng = np.random.default_rng(2024)
	for problem in range(100):
		m = int(rng.integers(3, 9))
		n = int(rng.integers(2, 13))
		atoms = rng.standard_normal((m, n))
		atoms /= np.linalg.norm(atoms, axis = 0)
		z = rng.standard_normal(m)
		z /= np.linalg.norm(z)
		config = CodingConfig(lambda1 = float(rng.choice([ 0.05, 0.2, 1.0 ])), tolerance = 1e-9, max_iterations = 100000)
		coder = SparseCoder(GroupedDictionary.single_group(atoms), config)
		(code, report) = coder.lasso_encode(z)
		reference = lasso_reference_objective(atoms, z, config.internal_lambda1)
		assert coder.lasso_objective(z, code.coefficients) <= reference + 1e-6

def test_codes_stay_in_true_group(suite):
	heldout = suite.heldout(0.0)
	(codes, reports) = batch_encode(heldout.clean, suite.dictionary, suite.coding, mode = CodingMode.HiLasso, workers = 4)
	magnitudes = np.abs(codes)
	labels = heldout.alignment.labels
	in_group = np.array([ magnitudes[frame, suite.dictionary.group(label).slice].sum() for (frame, label) in enumerate(labels) ])
	totals = magnitudes.sum(axis = 1)
	assert np.all(totals > 0)
	assert np.mean(in_group >= 0.99 * totals) >= 0.95

	ranks = alpha_sum_rank(codes, heldout.alignment, groups = suite.dictionary.groups)
	assert [ entry.rank for entry in ranks ] == [ 1 ] * suite.config.num_classes

def test_projection_lowers_rank(suite):
	heldout = suite.heldout(0.1)
	(projected, stats) = project_posteriors(heldout.noisy, suite.dictionary, suite.coding, workers = 4)
	noisy_rank = rank_table(heldout.noisy, heldout.alignment).mean_all
	projected_rank = rank_table(projected, heldout.alignment).mean_all
	assert projected_rank < noisy_rank
	enhanced = rpca_enhance_by_class(heldout.noisy, heldout.alignment, workers = 4)
	assert rank_table(enhanced, heldout.alignment).mean_all <= projected_rank + 1

def test_correct_frames_have_lower_rank(suite):
	heldout = suite.heldout(0.3)
	(projected, stats) = project_posteriors(heldout.noisy, suite.dictionary, suite.coding, workers = 4)
	report = rank_table(projected, heldout.alignment, balanced = True)
	assert report.mean_incorrect is not None
	assert report.mean_correct < report.mean_incorrect

def mean_distance(posteriors, clean):
	return float(np.linalg.norm(posteriors - clean, axis = 1).mean())

def test_enhancement_moves_toward_clean(suite):
	heldout = suite.heldout(0.1)
	(projected, stats) = project_posteriors(heldout.noisy, suite.dictionary, suite.coding, workers = 4)
	enhanced = rpca_enhance_by_class(heldout.noisy, heldout.alignment, workers = 4)
	noisy_distance = mean_distance(heldout.noisy, heldout.clean)
	assert mean_distance(projected, heldout.clean) < noisy_distance
	assert mean_distance(enhanced, heldout.clean) < noisy_distance

def test_projection_lowers_frame_error(suite):
	# Label runs of one to four frames
	heldout = suite.heldout(0.2, run_length = (1, 4))
	(projected, stats) = project_posteriors(heldout.noisy, suite.dictionary, suite.coding, workers = 4)
	noisy_error = frame_error(heldout.noisy, heldout.alignment)
	projected_error = frame_error(projected, heldout.alignment)
	assert projected_error <= 0.9 * noisy_error
	assert projected_error < noisy_error

	comparison = SystemComparison(heldout.alignment, TransitionModel.self_loop(suite.config.m, 0.9))
	(noisy_result, projected_result) = comparison.compare({ "noisy": heldout.noisy, "projected": projected })
	assert projected_result.frame_error == projected_error
	assert projected_result.sequence.rate < noisy_result.sequence.rate

def test_training_progress(suite):
	for report in suite.learner.reports:
		trace = report.objective_trace
		assert len(trace) == 4
		assert all(later <= earlier for (earlier, later) in zip(trace, trace[1:]))
	heldout = suite.heldout(0.0)
	baseline = random_dictionary(suite.config.m, suite.dictionary.n, seed = suite.config.seed)
	(learned_objective, learned_codes) = suite.learner.surrogate_objective(suite.dictionary.atoms, heldout.clean)
	(baseline_objective, baseline_codes) = suite.learner.surrogate_objective(baseline.atoms, heldout.clean)
	assert learned_objective <= 0.5 * baseline_objective
