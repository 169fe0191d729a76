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
from .CmdlineAction import CmdlineAction
from .Synth import SynthConfig, generate_subspaces, generate_dataset, min_principal_angle
from .Evaluation import TransitionModel
from .Enums import SubspaceLayout
from .Tools import JSONTools

_log = logging.getLogger(__spec__.name)

class ActionSynth(CmdlineAction):
	REQUIRED_OPTIONS = ("output_prefix", )

	def _write_dataset(self, prefix: str, dataset, with_raw: bool = True):
		self.write_matrix(f"{prefix}_clean.uosm", dataset.clean)
		self.write_matrix(f"{prefix}_noisy.uosm", dataset.noisy)
		if with_raw:
			self.write_matrix(f"{prefix}_raw.uosm", dataset.raw)
		self.write_alignment(f"{prefix}_align.txt", dataset.alignment)

	def execute(self):
		config = SynthConfig(m = self.args.dim, num_classes = self.args.classes, rank = self.args.rank, frames_per_class = self.args.frames, noise_sigma = self.args.noise, subspace_angle_min = self.args.angle, seed = self.args.seed, layout = SubspaceLayout(self.args.layout), run_length = (self.args.min_run, self.args.max_run))
		spec = generate_subspaces(config)
		dataset = generate_dataset(spec, config)
		prefix = self.args.output_prefix
		self._write_dataset(prefix, dataset)
		self.write_transitions(f"{prefix}_trans.txt", TransitionModel.self_loop(config.m, self.args.self_loop))

		metadata = {
			"config": config.to_dict(),
			"subspaces": spec.to_dict() | {
				"min_principal_angle": min_principal_angle(spec),
				"bases_hash": JSONTools.jsonhash([ basis.tolist() for basis in spec.bases ]),
			},
			"frames": dataset.num_frames,
			"label_runs": len(dataset.alignment.collapsed()),
		}
		if self.args.heldout_seed is not None:
			heldout = generate_dataset(spec, config.with_seed(self.args.heldout_seed))
			self._write_dataset(f"{prefix}_heldout", heldout, with_raw = False)
			metadata["heldout_seed"] = self.args.heldout_seed
		self.write_json(f"{prefix}_meta.json", metadata)
		_log.info("Wrote synthetic dataset with prefix %s", prefix)
