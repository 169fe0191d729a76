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
from .CmdlineAction import CmdlineAction
from .CoreModel import CodingConfig
from .DictionaryLearner import OnlineDictionaryLearner
from .ResultPrinter import ResultPrinter

class ActionTrainDict(CmdlineAction):
	REQUIRED_OPTIONS = ("data", "align", "output")

	def execute(self):
		frames = self.read_matrix(self.args.data)
		alignment = self.read_alignment(self.args.align, num_classes = self.args.classes)
		coding = CodingConfig(lambda1 = self.args.lambda1, tolerance = self.args.tolerance, max_iterations = self.args.max_iterations)
		learner = OnlineDictionaryLearner(coding, n_atoms = self.args.atoms, epochs = self.args.epochs, batch_size = self.args.batch, workers = self.workers)
		dictionary = learner.learn_all(frames, alignment, seed = self.args.seed)
		self.write_dictionary(self.args.output, dictionary)

		if self.args.report is not None:
			self.write_json(self.args.report, {
				"coding": coding.to_dict(),
				"seed": self.args.seed,
				"epochs": self.args.epochs,
				"batch_size": self.args.batch,
				"atoms": dictionary.n,
				"group_sizes": dictionary.group_sizes,
				"training_frames": len(frames),
				"compression_ratio": dictionary.n / max(1, len(frames)),
				"empty_classes": learner.empty_classes,
				"capped_classes": learner.capped_classes,
				"classes": [ {
					"class": report.label,
					"frames": report.frames,
					"atoms": report.atoms,
					"objective_trace": report.objective_trace,
					"rejected_epochs": report.rejected_epochs,
					"refined_epochs": report.refined_epochs,
					"reinitialized_atoms": report.reinitialized_atoms,
				} for report in learner.reports ],
			})
		if not self.args.quiet:
			ResultPrinter(sys.stdout).print_training_reports(learner.reports, dictionary, len(frames))
