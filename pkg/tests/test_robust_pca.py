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

import pytest
import numpy as np
from uospost.CoreModel import ClassAlignment
from uospost.Enums import RpcaDomain
from uospost.RobustPCA import RpcaConfig, RpcaEnhancer, singular_value_threshold, rpca_decompose, rpca_enhance_by_class, log_above_floor, ENHANCE_FLOOR
from uospost.RankAnalysis import effective_rank, log_transform
from uospost.Synth import SynthConfig, generate_subspaces, generate_dataset
from uospost.Exceptions import InvalidParameter

def low_rank_plus_spikes(rng, rows = 200, cols = 100, rank = 2, density = 0.05, magnitude = 1.0):
	low_rank = rng.standard_normal((rows, rank)) @ rng.standard_normal((rank, cols))
	spikes = np.zeros((rows, cols))
	mask = rng.random((rows, cols)) < density
	spikes[mask] = magnitude * rng.choice([ -1.0, 1.0 ], size = int(mask.sum()))
	return (low_rank, spikes)

def test_singular_value_threshold(rng):
	matrix = rng.standard_normal((6, 4))
	assert np.allclose(singular_value_threshold(matrix, 0), matrix)
	assert np.all(singular_value_threshold(matrix, np.linalg.norm(matrix, 2)) == 0)
	rank_one = np.outer([ 1.0, 2.0, 2.0 ], [ 2.0, 1.0 ])
	sigma = np.linalg.norm(rank_one, 2)
	assert np.allclose(singular_value_threshold(rank_one, sigma / 2), rank_one / 2)
	with pytest.raises(InvalidParameter):
		singular_value_threshold(matrix, -1)

def test_zero_matrix():
	decomposition = rpca_decompose(np.zeros((5, 4)))
	assert decomposition.converged
	assert np.all(decomposition.low_rank == 0)
	assert np.all(decomposition.sparse == 0)

def test_rejects_tiny_matrix():
	with pytest.raises(InvalidParameter):
		rpca_decompose(np.ones((1, 5)))

def test_config_validation():
	assert RpcaConfig().lambda_for((200, 100)) == pytest.approx(1 / np.sqrt(200))
	assert RpcaConfig(lambda_rpca = 0.3).lambda_for((10, 10)) == 0.3
	with pytest.raises(InvalidParameter):
		RpcaConfig(rho = 1.0)
	with pytest.raises(InvalidParameter):
		RpcaConfig(lambda_rpca = 0)

def test_exact_recovery(rng):
	(low_rank, spikes) = low_rank_plus_spikes(rng)
	decomposition = rpca_decompose(low_rank + spikes)
	assert decomposition.converged
	assert decomposition.residual <= 1e-7
	assert decomposition.relative_residual <= 1e-7
	assert np.linalg.norm(decomposition.low_rank - low_rank) / np.linalg.norm(low_rank) <= 1e-4

def test_objective_beats_trivial_splits(rng):
	(low_rank, spikes) = low_rank_plus_spikes(rng, rows = 60, cols = 40)
	matrix = low_rank + spikes
	decomposition = rpca_decompose(matrix)
	lam = decomposition.lambda_rpca
	objective = np.linalg.norm(decomposition.low_rank, "nuc") + lam * np.abs(matrix - decomposition.low_rank).sum()
	assert objective <= lam * np.abs(matrix).sum()
	assert objective <= np.linalg.norm(matrix, "nuc")
	assert decomposition.objective_trace[-1] == pytest.approx(objective, rel = 1e-6)

def test_low_rank_part_has_lower_rank(rng):
	(low_rank, spikes) = low_rank_plus_spikes(rng, magnitude = 10.0)
	matrix = low_rank + spikes
	decomposition = rpca_decompose(matrix)
	assert effective_rank(decomposition.low_rank) < effective_rank(matrix)

def test_enhance_single_class_matches_decomposition(rng):
	posteriors = rng.dirichlet(np.ones(6), size = 12)
	alignment = ClassAlignment(np.zeros(12, dtype = int))
	enhanced = rpca_enhance_by_class(posteriors, alignment)
	decomposition = rpca_decompose(log_above_floor(posteriors))
	expected = np.exp(decomposition.low_rank)
	expected /= expected.sum(axis = 1)[:, np.newaxis]
	assert np.allclose(enhanced, expected)
	assert np.allclose(enhanced.sum(axis = 1), 1)

@pytest.mark.parametrize("domain", [ RpcaDomain.Log, RpcaDomain.Raw ])
def test_enhance_keeps_frame_order(rng, domain):
	posteriors = rng.dirichlet(np.ones(5), size = 20)
	labels = np.array([ 0, 1 ] * 9 + [ 2, 3 ])
	alignment = ClassAlignment(labels, num_classes = 5)
	enhancer = RpcaEnhancer(domain = domain, workers = 2)
	enhanced = enhancer.enhance(posteriors, alignment)
	assert enhanced.shape == posteriors.shape
	assert np.all(enhanced >= 0)
	assert np.allclose(enhanced.sum(axis = 1), 1)
	# Classes 2 and 3 have a single frame, class 4 none
	assert np.array_equal(enhanced[18:], posteriors[18:])
	assert enhancer.report.skipped == [ 2, 3, 4 ]

	solo = rpca_enhance_by_class(posteriors[labels == 0], ClassAlignment(np.zeros(9, dtype = int)), domain = domain)
	assert np.allclose(enhanced[labels == 0], solo)

def test_objective_trace_non_increasing(rng):
	(low_rank, spikes) = low_rank_plus_spikes(rng)
	decomposition = rpca_decompose(low_rank + spikes)
	trace = decomposition.objective_trace
	assert len(trace) == decomposition.iterations_used
	for (earlier, later) in zip(trace, trace[1:]):
		assert later <= earlier + 1e-6

def test_log_above_floor():
	posteriors = np.array([ [ 0.0, 0.25, 0.75 ], [ 1e-4, 0.5, 0.5 ] ])
	shifted = log_above_floor(posteriors)
	assert shifted[0, 0] == pytest.approx(0, abs = 1e-12)
	assert shifted[1, 0] == pytest.approx(0, abs = 1e-12)
	assert np.allclose(shifted, log_transform(posteriors) - np.log(ENHANCE_FLOOR))
	assert np.all(shifted >= -1e-12)

def test_enhancer_rejects_invalid_floor():
	for floor in (0, 1, -1e-3):
		with pytest.raises(InvalidParameter):
			RpcaEnhancer(floor = floor)

def test_enhance_removes_sporadic_activations(rng):
	# One shared class pattern, plus a few frames where some other class fires
	pattern = np.array([ 0.7, 0.2, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0 ])
	posteriors = np.tile(pattern, (40, 1)) + rng.uniform(0, 0.01, size = (40, 8)) * (pattern > 0)
	for frame in range(0, 40, 8):
		posteriors[frame, 3 + (frame // 8) % 5] = 0.4
	posteriors /= posteriors.sum(axis = 1)[:, np.newaxis]
	enhanced = rpca_enhance_by_class(posteriors, ClassAlignment(np.zeros(40, dtype = int)))
	assert np.all(np.argmax(enhanced, axis = 1) == 0)
	assert effective_rank(log_transform(enhanced)) <= effective_rank(log_transform(posteriors))
	assert enhanced[:, 3:].max() < posteriors[:, 3:].max()

@pytest.mark.parametrize("seed", [ 0, 1, 2 ])
def test_enhance_moves_noisy_frames_toward_clean(seed):
	config = SynthConfig(m = 50, num_classes = 5, rank = 3, frames_per_class = 100, noise_sigma = 0.1, seed = seed)
	dataset = generate_dataset(generate_subspaces(config), config)
	enhanced = rpca_enhance_by_class(dataset.noisy, dataset.alignment, workers = 5)
	noisy_distance = np.linalg.norm(dataset.noisy - dataset.clean, axis = 1).mean()
	enhanced_distance = np.linalg.norm(enhanced - dataset.clean, axis = 1).mean()
	assert enhanced_distance < noisy_distance
