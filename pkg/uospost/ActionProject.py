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
from .ActionEncode import coding_config_from_args
from .Projection import project_posteriors
from .ResultPrinter import ResultPrinter
from .Enums import CodingMode

class ActionProject(CmdlineAction):
	REQUIRED_OPTIONS = ("data", "dictionary", "output")

	def execute(self):
		frames = self.read_matrix(self.args.data)
		dictionary = self.read_dictionary(self.args.dictionary)
		(projected, stats) = project_posteriors(frames, dictionary, coding_config_from_args(self.args), mode = CodingMode(self.args.mode), workers = self.workers)
		self.write_matrix(self.args.output, projected)
		if self.args.stats is not None:
			self.write_json(self.args.stats, stats.to_dict())
		if not self.args.quiet:
			ResultPrinter(sys.stdout).print_projection_stats(stats)
