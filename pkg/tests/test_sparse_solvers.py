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

import itertools
import pytest
import numpy as np
from conftest import random_unit_atoms, random_posteriors
from uospost.CoreModel import CodingConfig
from uospost.Enums import CodingMode
from uospost.GroupedDictionary import GroupedDictionary
from uospost.SparseSolvers import SparseCoder, soft_threshold, lasso_encode, hilasso_encode, batch_encode
from uospost.Exceptions import InvalidParameter, DimensionMismatch, FrameError

def exhaustive_lasso_optimum(atoms, z, lam):
	"""Minimum of 0.5 ||z - D a||^2 + lam ||a||_1 over all sign patterns that
	satisfy the stationarity conditions on their support."""
	n = atoms.shape[1]
	best = 0.5 * (z @ z)
	for signs in itertools.product([ -1, 0, 1 ], repeat = n):
		signs = np.array(signs, dtype = float)
		support = np.flatnonzero(signs)
		# Some optimum has linearly independent atoms on its support
		if (len(support) == 0) or (len(support) > atoms.shape[0]):
			continue
		sub = atoms[:, support]
		values = np.linalg.solve(sub.T @ sub, sub.T @ z - lam * signs[support])
		if not np.all(np.sign(values) == signs[support]):
			continue
		alpha = np.zeros(n)
		alpha[support] = values
		residual = z - atoms @ alpha
		best = min(best, 0.5 * (residual @ residual) + lam * np.abs(alpha).sum())
	return best

def test_soft_threshold():
	assert soft_threshold(3.0, 1.0) == 2.0
	assert soft_threshold(-0.5, 1.0) == 0.0
	assert soft_threshold(0.0, 0.0) == 0.0
	assert list(soft_threshold(np.array([ -3.0, 0.2, 1.5 ]), 1.0)) == [ -2.0, 0.0, 0.5 ]
	with pytest.raises(InvalidParameter):
		soft_threshold(1.0, -1.0)

def test_lasso_recovers_atom(rng):
	atoms = random_unit_atoms(rng, 8, 4)
	dictionary = GroupedDictionary.single_group(atoms)
	config = CodingConfig(lambda1 = 1e-8, tolerance = 1e-14, max_iterations = 10000)
	(code, report) = lasso_encode(atoms[:, 0], dictionary, config)
	assert report.converged
	assert np.linalg.norm(atoms[:, 0] - atoms @ code.coefficients) <= 1e-6

def test_lasso_zero_frame(rng):
	dictionary = GroupedDictionary.single_group(random_unit_atoms(rng, 5, 7))
	(code, report) = lasso_encode(np.zeros(5), dictionary, CodingConfig())
	assert np.all(code.coefficients == 0)
	assert report.converged
	assert report.iterations_used == 0

def test_lasso_matches_exhaustive_optimum(rng):
	shapes = [ (4, 6) ] + [ (int(rng.integers(4, 8)), int(rng.integers(2, 7))) for problem in range(19) ]
	for (m, n) in shapes:
		atoms = random_unit_atoms(rng, m, n)
		z = rng.standard_normal(m)
		z /= np.linalg.norm(z)
		lambda1 = float(rng.choice([ 0.05, 0.2, 1.0 ]))
		config = CodingConfig(lambda1 = lambda1, tolerance = 1e-10, max_iterations = 100000)
		coder = SparseCoder(GroupedDictionary.single_group(atoms), config)
		(code, report) = coder.lasso_encode(z)
		assert report.converged
		optimum = exhaustive_lasso_optimum(atoms, z, config.internal_lambda1)
		assert coder.lasso_objective(z, code.coefficients) == pytest.approx(optimum, abs = 1e-6)

def test_lasso_optimality_conditions(rng):
	atoms = random_unit_atoms(rng, 10, 6)
	config = CodingConfig(lambda1 = 0.2, tolerance = 1e-14, max_iterations = 100000)
	for problem in range(10):
		z = rng.standard_normal(10)
		(code, report) = lasso_encode(z, GroupedDictionary.single_group(atoms), config)
		assert report.converged
		alpha = code.coefficients
		correlation = atoms.T @ (z - atoms @ alpha)
		lam = config.internal_lambda1
		support = alpha != 0
		assert np.all(np.abs(correlation[support] - lam * np.sign(alpha[support])) <= 1e-5)
		assert np.all(np.abs(correlation[~support]) <= lam + 1e-5)

def test_lasso_scales_with_frame_and_penalty(rng):
	atoms = random_unit_atoms(rng, 8, 5)
	dictionary = GroupedDictionary.single_group(atoms)
	z = rng.standard_normal(8)
	(code, report) = lasso_encode(z, dictionary, CodingConfig(lambda1 = 0.3, tolerance = 1e-14, max_iterations = 100000))
	for factor in (0.5, 2.0, 3.0):
		(scaled, scaled_report) = lasso_encode(factor * z, dictionary, CodingConfig(lambda1 = factor * 0.3, tolerance = 1e-14, max_iterations = 100000))
		assert np.allclose(scaled.coefficients, factor * code.coefficients, rtol = 0, atol = 1e-5 * factor)

def test_lasso_objective_trace_decreases(rng):
	atoms = random_unit_atoms(rng, 10, 20)
	coder = SparseCoder(GroupedDictionary.single_group(atoms), CodingConfig(lambda1 = 0.1))
	(code, report) = coder.lasso_encode(random_posteriors(rng, 1, 10)[0])
	trace = report.objective_trace
	assert all(later <= earlier + 1e-12 for (earlier, later) in zip(trace, trace[1:]))
	assert report.final_objective == pytest.approx(trace[-1])

def test_lasso_requires_penalty(rng):
	dictionary = GroupedDictionary.single_group(random_unit_atoms(rng, 4, 4))
	with pytest.raises(InvalidParameter):
		lasso_encode(np.ones(4) / 4, dictionary, CodingConfig(lambda1 = 0.0))

def test_dimension_mismatch(rng):
	dictionary = GroupedDictionary.single_group(random_unit_atoms(rng, 4, 4))
	with pytest.raises(DimensionMismatch):
		lasso_encode(np.ones(5) / 5, dictionary, CodingConfig())

def test_hilasso_without_group_penalty_matches_lasso(rng):
	atoms = random_unit_atoms(rng, 6, 8)
	dictionary = GroupedDictionary(atoms, [ 4, 4 ])
	z = random_posteriors(rng, 1, 6)[0]
	config = CodingConfig(lambda1 = 0.05, lambda2 = 0.0, tolerance = 1e-12, max_iterations = 50000)
	coder = SparseCoder(dictionary, config)
	(lasso_code, lasso_report) = coder.lasso_encode(z)
	(hilasso_code, hilasso_report) = coder.hilasso_encode(z)
	assert coder.lasso_objective(z, hilasso_code.coefficients) == pytest.approx(coder.lasso_objective(z, lasso_code.coefficients), abs = 1e-5)

def test_hilasso_group_shrinkage_on_orthonormal_atoms(rng):
	atoms = np.linalg.qr(rng.standard_normal((6, 4)))[0]
	dictionary = GroupedDictionary.single_group(atoms)
	config = CodingConfig(lambda1 = 0, lambda2 = 0.4, tolerance = 1e-14, max_iterations = 10000)
	z = rng.standard_normal(6)
	correlation = atoms.T @ z
	shrink = max(0, 1 - config.internal_lambda2 / np.linalg.norm(correlation))
	(code, report) = hilasso_encode(z, dictionary, config)
	assert report.converged
	assert np.allclose(code.coefficients, shrink * correlation, rtol = 0, atol = 1e-7)

	# Below the group threshold the whole group vanishes
	small = z * (0.1 / np.linalg.norm(correlation))
	(code, report) = hilasso_encode(small, dictionary, config)
	assert np.all(code.coefficients == 0)

def test_hilasso_selects_group():
	# Two groups spanning orthogonal coordinate sets
	atoms = np.zeros((6, 4))
	atoms[0:3, 0] = [ 0.6, 0.8, 0.0 ]
	atoms[0:3, 1] = [ 0.0, 0.6, 0.8 ]
	atoms[3:6, 2] = [ 0.6, 0.8, 0.0 ]
	atoms[3:6, 3] = [ 0.0, 0.6, 0.8 ]
	dictionary = GroupedDictionary(atoms, [ 2, 2 ])
	z = np.array([ 0.3, 0.5, 0.2, 0.0, 0.0, 0.0 ])
	(code, report) = hilasso_encode(z, dictionary, CodingConfig(lambda1 = 0.05))
	assert np.all(code.group_view(1) == 0)
	assert np.abs(code.group_view(0)).sum() > 0

def test_hilasso_trace_monotone(rng):
	atoms = random_unit_atoms(rng, 12, 24)
	dictionary = GroupedDictionary(atoms, [ 8, 8, 8 ])
	(code, report) = hilasso_encode(random_posteriors(rng, 1, 12)[0], dictionary, CodingConfig(lambda1 = 0.1, lambda2 = 0.3))
	trace = report.objective_trace
	assert all(later <= earlier for (earlier, later) in zip(trace, trace[1:]))

def test_hilasso_zero_frame(rng):
	dictionary = GroupedDictionary(random_unit_atoms(rng, 5, 6), [ 3, 3 ])
	(code, report) = hilasso_encode(np.zeros(5), dictionary, CodingConfig())
	assert np.all(code.coefficients == 0)
	assert report.converged

def test_hilasso_rejects_zero_penalties(rng):
	dictionary = GroupedDictionary(random_unit_atoms(rng, 5, 6), [ 3, 3 ])
	with pytest.raises(InvalidParameter):
		hilasso_encode(np.ones(5) / 5, dictionary, CodingConfig(lambda1 = 0, lambda2 = 0))

@pytest.mark.parametrize("mode", [ CodingMode.Lasso, CodingMode.HiLasso ])
def test_batch_encode_independent_of_workers_and_order(rng, mode):
	dictionary = GroupedDictionary(random_unit_atoms(rng, 10, 12), [ 4, 4, 4 ])
	frames = random_posteriors(rng, 15, 10)
	config = CodingConfig(lambda1 = 0.1)
	(codes, reports) = batch_encode(frames, dictionary, config, mode = mode, workers = 1)
	(threaded, threaded_reports) = batch_encode(frames, dictionary, config, mode = mode, workers = 4)
	assert np.array_equal(codes, threaded)
	assert len(reports) == 15
	permutation = rng.permutation(15)
	(permuted, permuted_reports) = batch_encode(frames[permutation], dictionary, config, mode = mode)
	assert np.array_equal(permuted, codes[permutation])
	assert not codes.flags.writeable

@pytest.mark.parametrize("mode", [ CodingMode.Lasso, CodingMode.HiLasso ])
def test_batch_encode_replays_single_frames(rng, mode):
	dictionary = GroupedDictionary(random_unit_atoms(rng, 12, 16), [ 4, 4, 4, 4 ])
	frames = random_posteriors(rng, 100, 12)
	config = CodingConfig(lambda1 = 0.05)
	coder = SparseCoder(dictionary, config)
	(codes, reports) = batch_encode(frames, dictionary, config, mode = mode, workers = 4)
	for (frame, batch_code, batch_report) in zip(frames, codes, reports):
		(code, report) = coder.encode(frame, mode)
		assert np.array_equal(batch_code, code.coefficients)
		assert batch_report.iterations_used == report.iterations_used

def test_batch_encode_reports_failing_frame(rng):
	dictionary = GroupedDictionary.single_group(random_unit_atoms(rng, 4, 4))
	with pytest.raises(FrameError) as error:
		batch_encode(random_posteriors(rng, 3, 4), dictionary, CodingConfig(lambda1 = 0.0), mode = CodingMode.Lasso)
	assert error.value.frame_index == 0
	assert isinstance(error.value.cause, InvalidParameter)
