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

import os
import sys
from .CmdlineAction import CmdlineAction
from .Evaluation import SystemComparison, TransitionModel
from .ResultPrinter import ResultPrinter
from .Exceptions import ConfigurationError, DimensionMismatch

class ActionEval(CmdlineAction):
	REQUIRED_OPTIONS = ("before", "after", "align")

	def _systems(self):
		filenames = [ self.args.before ] + list(self.args.after)
		if self.args.system is None:
			names = [ os.path.splitext(os.path.basename(filename))[0] for filename in filenames ]
		elif len(self.args.system) != len(filenames):
			raise ConfigurationError(f"{len(self.args.system)} system names given for {len(filenames)} posterior files")
		else:
			names = self.args.system
		if len(set(names)) != len(names):
			raise ConfigurationError(f"system names must be unique: {', '.join(names)}")
		return { name: self.read_matrix(filename) for (name, filename) in zip(names, filenames) }

	def execute(self):
		alignment = self.read_alignment(self.args.align)
		systems = self._systems()
		shapes = set(posteriors.shape for posteriors in systems.values())
		if len(shapes) != 1:
			raise DimensionMismatch(f"posterior files differ in shape: {sorted(shapes)}")
		num_states = next(iter(shapes))[1]
		if self.args.transitions is not None:
			model = self.read_transitions(self.args.transitions)
		else:
			model = TransitionModel.self_loop(num_states, self.args.self_loop)
		priors = self.read_matrix(self.args.priors)[0] if (self.args.priors is not None) else None

		results = SystemComparison(alignment, model, priors).compare(systems)
		if self.args.export_json is not None:
			self.write_json(self.args.export_json, {
				"transitions": "file" if (self.args.transitions is not None) else f"self-loop {self.args.self_loop}",
				"scaled_likelihoods": priors is not None,
				"systems": [ result.to_dict() for result in results ],
			})
		ResultPrinter(sys.stdout).print_comparison(results)
