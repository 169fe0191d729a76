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

import sys
import logging
from .CmdlineAction import CmdlineAction
from .CoreModel import CodingConfig
from .Synth import SynthConfig, generate_subspaces, generate_dataset
from .DictionaryLearner import OnlineDictionaryLearner
from .Projection import project_posteriors
from .RobustPCA import RpcaConfig, rpca_enhance_by_class
from .RankAnalysis import RankAnalyzer
from .Evaluation import SystemComparison, TransitionModel
from .ResultPrinter import ResultPrinter
from .Enums import SubspaceLayout
from .Tools import SeedTools

_log = logging.getLogger(__spec__.name)

class ActionSweep(CmdlineAction):
	"""Noise-condition study on synthetic data: one dictionary trained on clean
	frames, then noisy, projected and RPCA-enhanced posteriors compared at
	every noise level."""

	def execute(self):
		config = SynthConfig(m = self.args.dim, num_classes = self.args.classes, rank = self.args.rank, frames_per_class = self.args.frames, subspace_angle_min = self.args.angle, seed = self.args.seed, layout = SubspaceLayout(self.args.layout))
		spec = generate_subspaces(config)
		training = generate_dataset(spec, config)
		coding = CodingConfig(lambda1 = self.args.lambda1)
		dictionary = OnlineDictionaryLearner(coding, n_atoms = self.args.atoms, epochs = self.args.epochs, batch_size = self.args.batch, workers = self.workers).learn_all(training.clean, training.alignment, seed = self.args.seed)
		model = TransitionModel.self_loop(config.m, self.args.self_loop)
		analyzer = RankAnalyzer(sample_per_class = self.args.sample, seed = self.args.seed, workers = self.workers)

		rows = [ ]
		for (index, noise) in enumerate(self.args.noise_levels):
			_log.info("Noise level %.3f", noise)
			test_config = config.with_seed(SeedTools.derive(self.args.seed, 1000 + index)).with_noise(noise)
			test = generate_dataset(spec, test_config)
			systems = { "noisy": test.noisy }
			(systems["projected"], stats) = project_posteriors(test.noisy, dictionary, coding, workers = self.workers)
			if not self.args.no_rpca:
				systems["rpca"] = rpca_enhance_by_class(test.noisy, test.alignment, RpcaConfig(), workers = self.workers)
			results = SystemComparison(test.alignment, model).compare(systems)
			for result in results:
				rows.append({
					"noise":			noise,
					"system":			result.name,
					"frame_error":		result.frame_error,
					"sequence_error":	result.sequence.rate,
					"insertions":		result.sequence.insertions,
					"deletions":		result.sequence.deletions,
					"substitutions":	result.sequence.substitutions,
					"rank":				analyzer.rank_table(systems[result.name], test.alignment, system = result.name).mean_all,
				})

		if self.args.export_json is not None:
			self.write_json(self.args.export_json, {
				"config": config.to_dict(),
				"coding": coding.to_dict(),
				"atoms": dictionary.n,
				"rows": rows,
			})
		ResultPrinter(sys.stdout).print_sweep(rows)
