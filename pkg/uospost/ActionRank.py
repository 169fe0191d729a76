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
from .RankAnalysis import RankAnalyzer, alpha_sum_rank
from .ResultPrinter import ResultPrinter
from .Enums import VariabilityMode
from .Exceptions import ConfigurationError

class ActionRank(CmdlineAction):
	REQUIRED_OPTIONS = ("data", "align")

	def _system_names(self):
		if self.args.system is None:
			return [ os.path.splitext(os.path.basename(filename))[0] for filename in self.args.data ]
		if len(self.args.system) != len(self.args.data):
			raise ConfigurationError(f"{len(self.args.system)} system names given for {len(self.args.data)} posterior files")
		return self.args.system

	def execute(self):
		alignment = self.read_alignment(self.args.align)
		analyzer = RankAnalyzer(sample_per_class = self.args.sample, variability = self.args.variability, mode = VariabilityMode(self.args.mode), seed = self.args.seed, workers = self.workers, balanced = self.args.balanced)
		reports = [ analyzer.rank_table(self.read_matrix(filename), alignment, system = name) for (name, filename) in zip(self._system_names(), self.args.data) ]

		alpha_sums = None
		if self.args.codes is not None:
			if self.args.dictionary is None:
				raise ConfigurationError("alpha-sum ranks need the dictionary (--dictionary) for the group layout")
			dictionary = self.read_dictionary(self.args.dictionary)
			alpha_sums = alpha_sum_rank(self.read_matrix(self.args.codes), alignment, groups = dictionary.groups, variability = self.args.variability, mode = VariabilityMode(self.args.mode))

		if self.args.export_tsv is not None:
			with self._transaction.open(self.args.export_tsv) as f:
				for line in ResultPrinter().rank_delimited_rows(reports):
					print(line, file = f)
		if self.args.export_json is not None:
			data = { "reports": [ report.to_dict() for report in reports ] }
			if alpha_sums is not None:
				data["alpha_sum_ranks"] = [ { "class": entry.label, "frames": entry.frames, "rank": entry.rank, "degenerate": entry.degenerate } for entry in alpha_sums ]
			self.write_json(self.args.export_json, data)

		printer = ResultPrinter(sys.stdout)
		printer.print_rank_reports(reports)
		if alpha_sums is not None:
			printer.print_alpha_sum_ranks(alpha_sums)
