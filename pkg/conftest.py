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
from uospost.Synth import SynthConfig, generate_subspaces, generate_dataset

@pytest.fixture
def rng():
	return np.random.default_rng(1234)

@pytest.fixture(scope = "session")
def small_synth():
	config = SynthConfig(m = 20, num_classes = 3, rank = 2, frames_per_class = 40, noise_sigma = 0.1, seed = 3)
	spec = generate_subspaces(config)
	return generate_dataset(spec, config)

def random_unit_atoms(rng: np.random.Generator, m: int, n: int):
	atoms = rng.standard_normal((m, n))
	return atoms / np.linalg.norm(atoms, axis = 0)

def random_posteriors(rng: np.random.Generator, frames: int, m: int):
	return rng.dirichlet(np.ones(m), size = frames)
