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
from .RobustPCA import RpcaConfig, RpcaEnhancer
from .ResultPrinter import ResultPrinter
from .Enums import RpcaDomain

class ActionRpca(CmdlineAction):
	REQUIRED_OPTIONS = ("data", "align", "output")

	def execute(self):
		posteriors = self.read_matrix(self.args.data)
		alignment = self.read_alignment(self.args.align)
		config = RpcaConfig(lambda_rpca = self.args.lambda_rpca, residual_tol = self.args.tolerance, max_iterations = self.args.max_iterations, rho = self.args.rho)
		enhancer = RpcaEnhancer(config, domain = RpcaDomain(self.args.domain), workers = self.workers, floor = self.args.floor)
		enhanced = enhancer.enhance(posteriors, alignment)
		self.write_matrix(self.args.output, enhanced)
		if self.args.report is not None:
			self.write_json(self.args.report, { "config": config.to_dict(), "floor": self.args.floor } | enhancer.report.to_dict())
		if not self.args.quiet:
			ResultPrinter(sys.stdout).print_enhancement_report(enhancer.report)
