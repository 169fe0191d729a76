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
from uospost.CoreModel import validate_posterior, ClassAlignment, CodingConfig, SubspaceSpec, RpcaDecomposition, collapse_runs, as_real_matrix
from uospost.Exceptions import NegativeEntry, NotNormalized, NonFinite, EmptyInput, ClassOutOfRange, InvalidParameter, DimensionMismatch

def test_valid_posterior():
	posterior = validate_posterior([ 0.5, 0.5 ])
	assert posterior.m == 2
	assert not posterior.values.flags.writeable

def test_posterior_rounding_tolerated():
	validate_posterior([ 0.3, 0.3, 0.4 + 5e-7 ])

def test_posterior_not_normalized():
	with pytest.raises(NotNormalized):
		validate_posterior([ 0.7, 0.2 ])

def test_posterior_negative_entry():
	with pytest.raises(NegativeEntry):
		validate_posterior([ 1.0, -1e-3, 1e-3 ])

def test_posterior_non_finite():
	with pytest.raises(NonFinite):
		validate_posterior([ np.nan, 1.0 ])

def test_posterior_empty():
	with pytest.raises(EmptyInput):
		validate_posterior([ ])

def test_matrix_reports_bad_row():
	matrix = np.ones((3, 2))
	matrix[2, 1] = np.inf
	with pytest.raises(NonFinite, match = "row 2"):
		as_real_matrix(matrix)

def test_alignment():
	alignment = ClassAlignment([ 0, 0, 2, 2, 1 ], num_classes = 4)
	assert len(alignment) == 5
	assert list(alignment.counts()) == [ 2, 1, 2, 0 ]
	assert list(alignment.frames_of(2)) == [ 2, 3 ]
	assert alignment.collapsed() == [ 0, 2, 1 ]

def test_alignment_inferred_classes():
	assert ClassAlignment([ 1, 3 ]).num_classes == 4

def test_alignment_out_of_range():
	with pytest.raises(ClassOutOfRange):
		ClassAlignment([ 0, 3 ], num_classes = 3)
	with pytest.raises(ClassOutOfRange):
		ClassAlignment([ -1, 0 ])

def test_alignment_length_check():
	alignment = ClassAlignment([ 0, 1 ])
	with pytest.raises(DimensionMismatch):
		alignment.check_matches(np.zeros((3, 2)))

def test_collapse_runs():
	assert collapse_runs([ 1, 1, 2, 2, 1 ]) == [ 1, 2, 1 ]
	assert collapse_runs([ ]) == [ ]

def test_coding_config():
	config = CodingConfig(lambda1 = 0.4)
	assert config.lambda2 == 0.4
	assert config.internal_lambda1 == pytest.approx(0.2)
	assert config.internal_lambda2 == pytest.approx(0.2)
	assert CodingConfig(lambda1 = 0.4, lambda2 = 0.0).internal_lambda2 == 0

def test_coding_config_rejects_bad_values():
	with pytest.raises(InvalidParameter):
		CodingConfig(lambda1 = -0.1)
	with pytest.raises(InvalidParameter):
		CodingConfig(tolerance = 0)
	with pytest.raises(InvalidParameter):
		CodingConfig(max_iterations = 0)

def test_subspace_spec():
	spec = SubspaceSpec(3, [ np.eye(3)[:, :1], np.eye(3)[:, 1:3] ])
	assert spec.num_classes == 2
	assert spec.intrinsic_dims == (1, 2)
	assert spec.projector_residual(np.array([ 0.0, 3.0, 4.0 ]), 1)[0] == pytest.approx(0)
	assert spec.projector_residual(np.array([ 0.0, 3.0, 4.0 ]), 0)[0] == pytest.approx(5)

def test_subspace_spec_rejects_non_orthonormal():
	with pytest.raises(InvalidParameter):
		SubspaceSpec(3, [ np.array([ [ 1.0 ], [ 1.0 ], [ 0.0 ] ]) ])

def test_subspace_spec_rejects_full_dimension():
	with pytest.raises(InvalidParameter):
		SubspaceSpec(2, [ np.eye(2) ])

def test_rpca_decomposition_shapes():
	with pytest.raises(DimensionMismatch):
		RpcaDecomposition(low_rank = np.zeros((2, 2)), sparse = np.zeros((2, 3)), original = np.zeros((2, 2)), iterations_used = 0, converged = True, residual = 0, lambda_rpca = 0.5)
