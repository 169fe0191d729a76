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
from .MultiCommand import MultiCommand
from .FriendlyArgumentParser import positive_int, nonnegative_int, positive_float, nonnegative_float, unit_interval, pathname, float_list
from .ActionSynth import ActionSynth
from .ActionTrainDict import ActionTrainDict
from .ActionEncode import ActionEncode
from .ActionProject import ActionProject
from .ActionRpca import ActionRpca
from .ActionRank import ActionRank
from .ActionEval import ActionEval
from .ActionSweep import ActionSweep
from .Exceptions import ValidationError, FileFormatError
from . import VERSION

def _add_common(parser, threads = True):
	parser.add_argument("-C", "--config", metavar = "filename", type = pathname, help = "Read default values for any of the options below from this 'key = value' file. Options given on the command line take precedence.")
	if threads:
		parser.add_argument("--threads", metavar = "count", type = positive_int, help = "Number of worker threads. Defaults to the UOS_THREADS environment variable, then to the number of CPUs.")
	parser.add_argument("-v", "--verbose", action = "count", default = 0, help = "Increases verbosity. Can be specified multiple times to increase.")

def _add_format(parser):
	parser.add_argument("--format", choices = [ "binary", "text" ], default = "binary", help = "Format of written posterior/code matrices. Can be one of %(choices)s, defaults to %(default)s. Inputs are detected automatically.")

def _add_coding(parser):
	parser.add_argument("--mode", choices = [ "lasso", "hilasso" ], default = "hilasso", help = "Sparse coding method. Can be one of %(choices)s, defaults to %(default)s.")
	parser.add_argument("--lambda1", metavar = "value", type = nonnegative_float, default = 0.2, help = "Weight of the entrywise l1 penalty. Defaults to %(default)s.")
	parser.add_argument("--lambda2", metavar = "value", type = nonnegative_float, default = 0.2, help = "Weight of the per-group l2 penalty (hilasso only). Defaults to %(default)s.")
	parser.add_argument("--tolerance", metavar = "value", type = positive_float, default = 1e-6, help = "Solver stopping tolerance. Defaults to %(default)s.")
	parser.add_argument("--max-iterations", metavar = "count", type = positive_int, default = 1000, help = "Solver iteration limit per frame. Defaults to %(default)s.")

def _add_synth(parser, frames_default = 200):
	parser.add_argument("--classes", metavar = "count", type = positive_int, default = 5, help = "Number of classes (subspaces). Defaults to %(default)s.")
	parser.add_argument("--dim", metavar = "m", type = positive_int, default = 50, help = "Ambient dimension, i.e., number of posterior coordinates. Defaults to %(default)s.")
	parser.add_argument("--rank", metavar = "r", type = positive_int, default = 3, help = "Intrinsic dimension of every class subspace. Defaults to %(default)s.")
	parser.add_argument("--frames", metavar = "count", type = positive_int, default = frames_default, help = "Frames per class. Defaults to %(default)s.")
	parser.add_argument("--angle", metavar = "degrees", type = positive_float, default = 30.0, help = "Minimum principal angle between any two subspaces. Defaults to %(default)s.")
	parser.add_argument("--layout", choices = [ "blocks", "rotated-blocks", "rotated" ], default = "blocks", help = "Subspace construction. Can be one of %(choices)s, defaults to %(default)s. Only \"blocks\" makes clean frames peak at the coordinate of their class.")
	parser.add_argument("--self-loop", metavar = "p", type = unit_interval, default = 0.9, help = "Self-loop probability of the transition model. Defaults to %(default)s.")
	parser.add_argument("--seed", metavar = "value", type = nonnegative_int, default = 0, help = "Random seed. Defaults to %(default)s.")

def main(argv = None):
	mc = MultiCommand(description = f"uospost {VERSION}: union-of-subspaces modeling and enhancement of class-conditional posteriors.", prog = "uospost")

	def genparser(parser):
		_add_synth(parser)
		parser.add_argument("--noise", metavar = "sigma", type = nonnegative_float, default = 0.0, help = "Standard deviation of the white Gaussian noise added to the posteriors. Defaults to %(default)s.")
		parser.add_argument("--min-run", metavar = "frames", type = positive_int, default = 5, help = "Shortest run of frames of one class. Defaults to %(default)s.")
		parser.add_argument("--max-run", metavar = "frames", type = positive_int, default = 20, help = "Longest run of frames of one class. Defaults to %(default)s.")
		parser.add_argument("--heldout-seed", metavar = "value", type = nonnegative_int, help = "Also write a held-out set drawn from the same subspaces with this seed.")
		parser.add_argument("-o", "--output-prefix", metavar = "prefix", type = pathname, help = "Prefix of all written files (_clean.uosm, _noisy.uosm, _raw.uosm, _align.txt, _trans.txt, _meta.json). Mandatory.")
		_add_format(parser)
		_add_common(parser, threads = False)
	mc.register("synth", "Generate synthetic posteriors from a union of subspaces", genparser, action = ActionSynth)

	def genparser(parser):
		parser.add_argument("--data", metavar = "filename", type = pathname, help = "Training posterior matrix. Mandatory.")
		parser.add_argument("--align", metavar = "filename", type = pathname, help = "Frame-level class labels of the training data. Mandatory.")
		parser.add_argument("--classes", metavar = "count", type = positive_int, help = "Number of classes. Defaults to the largest label plus one.")
		parser.add_argument("--atoms", metavar = "count", type = positive_int, default = 100, help = "Atoms per class dictionary. Defaults to %(default)s.")
		parser.add_argument("--lambda", dest = "lambda1", metavar = "value", type = positive_float, default = 0.2, help = "Weight of the l1 penalty during training. Defaults to %(default)s.")
		parser.add_argument("--epochs", metavar = "count", type = nonnegative_int, default = 10, help = "Passes over the training data. Defaults to %(default)s.")
		parser.add_argument("--batch", metavar = "count", type = positive_int, default = 64, help = "Mini-batch size. Defaults to %(default)s.")
		parser.add_argument("--tolerance", metavar = "value", type = positive_float, default = 1e-6, help = "Lasso stopping tolerance. Defaults to %(default)s.")
		parser.add_argument("--max-iterations", metavar = "count", type = positive_int, default = 1000, help = "Lasso iteration limit. Defaults to %(default)s.")
		parser.add_argument("--seed", metavar = "value", type = nonnegative_int, default = 0, help = "Random seed. Defaults to %(default)s.")
		parser.add_argument("--report", metavar = "filename", type = pathname, help = "Write a JSON training report to this file.")
		parser.add_argument("-o", "--output", metavar = "filename", type = pathname, help = "Dictionary file to write. Mandatory.")
		parser.add_argument("-q", "--quiet", action = "store_true", help = "Do not print the training summary.")
		_add_common(parser)
	mc.register("train-dict", "Learn one dictionary per class and concatenate them", genparser, action = ActionTrainDict)

	def genparser(parser):
		parser.add_argument("--data", metavar = "filename", type = pathname, help = "Posterior matrix to encode. Mandatory.")
		parser.add_argument("--dictionary", metavar = "filename", type = pathname, help = "Grouped dictionary. Mandatory.")
		_add_coding(parser)
		parser.add_argument("-o", "--output", metavar = "filename", type = pathname, help = "Code matrix to write (frames x atoms). Mandatory.")
		_add_format(parser)
		_add_common(parser)
	mc.register("encode", "Compute sparse codes of posterior frames", genparser, action = ActionEncode)

	def genparser(parser):
		parser.add_argument("--data", metavar = "filename", type = pathname, help = "Posterior matrix to project. Mandatory.")
		parser.add_argument("--dictionary", metavar = "filename", type = pathname, help = "Grouped dictionary. Mandatory.")
		_add_coding(parser)
		parser.add_argument("--stats", metavar = "filename", type = pathname, help = "Write projection statistics as JSON to this file.")
		parser.add_argument("-o", "--output", metavar = "filename", type = pathname, help = "Projected posterior matrix to write. Mandatory.")
		parser.add_argument("-q", "--quiet", action = "store_true", help = "Do not print the projection summary.")
		_add_format(parser)
		_add_common(parser)
	mc.register("project", "Project posteriors onto the span of the training posteriors", genparser, action = ActionProject)

	def genparser(parser):
		parser.add_argument("--data", metavar = "filename", type = pathname, help = "Posterior matrix to enhance. Mandatory.")
		parser.add_argument("--align", metavar = "filename", type = pathname, help = "Frame-level class labels used for grouping. With reference labels, the result is an oracle bound rather than a deployable enhancement. Mandatory.")
		parser.add_argument("--lambda-rpca", metavar = "value", type = positive_float, help = "Weight of the sparse part. Defaults to 1/sqrt(max(rows, cols)) of each class matrix.")
		parser.add_argument("--tolerance", metavar = "value", type = positive_float, default = 1e-7, help = "Relative residual at which the decomposition stops. Defaults to %(default)s.")
		parser.add_argument("--max-iterations", metavar = "count", type = positive_int, default = 500, help = "Iteration limit per class. Defaults to %(default)s.")
		parser.add_argument("--rho", metavar = "factor", type = positive_float, default = 1.5, help = "Growth factor of the penalty parameter, must exceed one. Defaults to %(default)s.")
		parser.add_argument("--domain", choices = [ "log", "raw" ], default = "log", help = "Decompose log-posteriors or raw probabilities. Can be one of %(choices)s, defaults to %(default)s.")
		parser.add_argument("--floor", metavar = "value", type = positive_float, default = 1e-3, help = "Probability floor of the log domain, must lie below one. Defaults to %(default)s.")
		parser.add_argument("--report", metavar = "filename", type = pathname, help = "Write a JSON enhancement report to this file.")
		parser.add_argument("-o", "--output", metavar = "filename", type = pathname, help = "Enhanced posterior matrix to write. Mandatory.")
		parser.add_argument("-q", "--quiet", action = "store_true", help = "Do not print the enhancement summary.")
		_add_format(parser)
		_add_common(parser)
	mc.register("rpca", "Enhance posteriors class by class with robust PCA", genparser, action = ActionRpca)

	def genparser(parser):
		parser.add_argument("--data", metavar = "filename", type = pathname, nargs = "+", help = "Posterior matrices, one per system. Mandatory.")
		parser.add_argument("--system", metavar = "name", nargs = "+", help = "Names of the systems, in the order of --data. Defaults to the file names.")
		parser.add_argument("--align", metavar = "filename", type = pathname, help = "Frame-level class labels. Mandatory.")
		parser.add_argument("--sample", metavar = "count", type = positive_int, default = 1000, help = "Frames sampled per class and bucket. Defaults to %(default)s.")
		parser.add_argument("--variability", metavar = "share", type = unit_interval, default = 0.95, help = "Share of the spectrum the effective rank has to cover. Defaults to %(default)s.")
		parser.add_argument("--mode", choices = [ "sq", "linear" ], default = "sq", help = "Measure variability on squared or plain singular values. Can be one of %(choices)s, defaults to %(default)s.")
		parser.add_argument("--balanced", action = "store_true", help = "Sample the correct and incorrect bucket of each class down to the size of the smaller one.")
		parser.add_argument("--seed", metavar = "value", type = nonnegative_int, default = 0, help = "Sampling seed. Defaults to %(default)s.")
		parser.add_argument("--codes", metavar = "filename", type = pathname, help = "Also report alpha-sum ranks of this code matrix.")
		parser.add_argument("--dictionary", metavar = "filename", type = pathname, help = "Dictionary the codes refer to, needed with --codes.")
		parser.add_argument("--export-tsv", metavar = "filename", type = pathname, help = "Write per-class ranks as tab-separated rows to this file.")
		parser.add_argument("-e", "--export-json", metavar = "filename", type = pathname, help = "Write the rank reports as JSON to this file.")
		_add_common(parser)
	mc.register("rank", "Effective rank of class-specific log-posterior matrices", genparser, action = ActionRank)

	def genparser(parser):
		parser.add_argument("--before", metavar = "filename", type = pathname, help = "Baseline posterior matrix. Mandatory.")
		parser.add_argument("--after", metavar = "filename", type = pathname, nargs = "+", help = "Enhanced posterior matrices to compare against the baseline. Mandatory.")
		parser.add_argument("--system", metavar = "name", nargs = "+", help = "Names of all systems, baseline first. Defaults to the file names.")
		parser.add_argument("--align", metavar = "filename", type = pathname, help = "Reference frame-level class labels. Mandatory.")
		parser.add_argument("--transitions", metavar = "filename", type = pathname, help = "Transition model file. Defaults to a self-loop model over all posterior coordinates.")
		parser.add_argument("--self-loop", metavar = "p", type = unit_interval, default = 0.9, help = "Self-loop probability of the default transition model. Defaults to %(default)s.")
		parser.add_argument("--priors", metavar = "filename", type = pathname, help = "Matrix file whose first row holds class priors; decoding then uses scaled likelihoods.")
		parser.add_argument("-e", "--export-json", metavar = "filename", type = pathname, help = "Write the comparison as JSON to this file.")
		_add_common(parser, threads = False)
	mc.register("eval", "Compare frame error and decoded label-sequence error of posterior systems", genparser, action = ActionEval)

	def genparser(parser):
		_add_synth(parser, frames_default = 100)
		parser.add_argument("--noise-levels", metavar = "list", type = float_list, default = "0,0.05,0.1,0.2", help = "Comma-separated noise standard deviations. Defaults to %(default)s.")
		parser.add_argument("--atoms", metavar = "count", type = positive_int, default = 20, help = "Atoms per class dictionary. Defaults to %(default)s.")
		parser.add_argument("--lambda", dest = "lambda1", metavar = "value", type = positive_float, default = 0.2, help = "Sparse coding weight for training and projection. Defaults to %(default)s.")
		parser.add_argument("--epochs", metavar = "count", type = nonnegative_int, default = 5, help = "Dictionary training passes. Defaults to %(default)s.")
		parser.add_argument("--batch", metavar = "count", type = positive_int, default = 64, help = "Mini-batch size. Defaults to %(default)s.")
		parser.add_argument("--sample", metavar = "count", type = positive_int, default = 1000, help = "Frames sampled per class for the rank column. Defaults to %(default)s.")
		parser.add_argument("--no-rpca", action = "store_true", help = "Leave out the RPCA rows.")
		parser.add_argument("-e", "--export-json", metavar = "filename", type = pathname, help = "Write all rows as JSON to this file.")
		_add_common(parser)
	mc.register("sweep", "Noise-condition study on synthetic data", genparser, action = ActionSweep)

	try:
		returncode = mc.run(sys.argv[1:] if (argv is None) else list(argv))
	except ValidationError as e:
		print(f"Error: {e}", file = sys.stderr)
		return 1
	except (FileFormatError, OSError) as e:
		print(f"Error: {e}", file = sys.stderr)
		return 2
	return (returncode or 0)

if __name__ == "__main__":
	sys.exit(main())
