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

import enum

class CodingMode(enum.Enum):
	Lasso = "lasso"				# Entrywise l1 penalty, coordinate descent
	HiLasso = "hilasso"			# l1 plus per-group l2 penalty, accelerated proximal gradient

class RpcaDomain(enum.Enum):
	Log = "log"					# Decompose log-posteriors relative to their floor, map back with exp
	Raw = "raw"					# Decompose the probabilities themselves

class VariabilityMode(enum.Enum):
	Squared = "sq"				# Energy share of squared singular values
	Linear = "linear"			# Share of the singular values themselves

class MatrixFormat(enum.Enum):
	Binary = "binary"
	Text = "text"

class SubspaceLayout(enum.Enum):
	Blocks = "blocks"			# Disjoint coordinate blocks, scattered by a random permutation
	Rotated = "rotated"			# Dense random orthonormal bases, rejection-sampled for angles
	RotatedBlocks = "rotated-blocks"	# Block bases mapped by one random orthogonal matrix
