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

class UosException(Exception): pass

class ValidationError(UosException): pass
class NegativeEntry(ValidationError): pass
class NotNormalized(ValidationError): pass
class NonFinite(ValidationError): pass
class ClassOutOfRange(ValidationError): pass
class DimensionMismatch(ValidationError): pass
class EmptyInput(ValidationError): pass
class EmptyClass(ValidationError): pass
class InvalidParameter(ValidationError): pass
class SvdFailure(ValidationError): pass
class AngleInfeasible(ValidationError): pass
class AllPathsImpossible(ValidationError): pass
class EmptyReference(ValidationError): pass
class ConfigurationError(ValidationError): pass

class FileFormatError(UosException): pass

class FrameError(ValidationError):
	def __init__(self, frame_index: int, cause: Exception):
		super().__init__(f"frame {frame_index}: {cause.__class__.__name__}: {cause}")
		self.frame_index = frame_index
		self.cause = cause
