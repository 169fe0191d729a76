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
import enum
import dataclasses

class Align(enum.Enum):
	Left = "left"
	Right = "right"

@dataclasses.dataclass(frozen = True)
class CellFormatter():
	to_str: "callable" = str
	align: Align = Align.Left

	@classmethod
	def number(cls, fmt: str, missing: str = "-"):
		"""Right-aligned number cell; None renders as the missing marker and
		strings (header cells) are passed through."""
		def to_str(content):
			if content is None:
				return missing
			if isinstance(content, str):
				return content
			return format(content, fmt)
		return cls(to_str = to_str, align = Align.Right)

	@classmethod
	def right(cls):
		return cls(align = Align.Right)

	def as_header(self):
		return dataclasses.replace(self, to_str = str)

	def __call__(self, content, width: int):
		value = self.to_str(content)
		match self.align:
			case Align.Left:
				return value.ljust(width)
			case Align.Right:
				return value.rjust(width)

@dataclasses.dataclass(frozen = True)
class _Row():
	data: dict | None
	header: bool = False

	@property
	def is_separator(self):
		return self.data is None

class Table():
	"""Box-drawn text table. Columns are named; a row may leave any of them
	out. Rendering picks the columns and their order, and every column is as
	wide as its widest cell. Columns nobody filled in are dropped."""
	_STYLE = {
		"V":	"│",
		"H":	"─",
		"TL":	"┌",
		"ML":	"├",
		"BL":	"└",
		"TR":	"┐",
		"MR":	"┤",
		"BR":	"┘",
		"TM":	"┬",
		"MM":	"┼",
		"BM":	"┴",
	}

	def __init__(self, pad: int = 1):
		self._pad = pad
		self._rows = [ ]
		self._column_formatters = { }

	def format_column(self, col_name: str, formatter: CellFormatter):
		self._column_formatters[col_name] = formatter
		return self

	def format_columns(self, column_format: dict[str, CellFormatter]):
		self._column_formatters.update(column_format)
		return self

	def add_row(self, row_data: dict):
		self._rows.append(_Row(data = row_data))
		return self

	def add_header_row(self, row_data: dict):
		self._rows.append(_Row(data = row_data, header = True))
		return self

	def add_separator_row(self):
		self._rows.append(_Row(data = None))
		return self

	def _formatter(self, col_name: str, row: _Row):
		formatter = self._column_formatters.get(col_name, CellFormatter())
		return formatter.as_header() if row.header else formatter

	def _cell_str(self, col_name: str, row: _Row):
		return self._formatter(col_name, row).to_str(row.data[col_name])

	def _col_widths(self, col_names: tuple[str]):
		widths = { }
		for col_name in col_names:
			width = max((len(self._cell_str(col_name, row)) for row in self._rows if (not row.is_separator) and (col_name in row.data)), default = 0)
			if width > 0:
				widths[col_name] = width
		return widths

	def _rule(self, widths: dict[str, int], left: str, middle: str, right: str):
		return self._STYLE[left] + self._STYLE[middle].join(self._STYLE["H"] * (width + 2 * self._pad) for width in widths.values()) + self._STYLE[right]

	def _format_row(self, widths: dict[str, int], row: _Row):
		if row.is_separator:
			return self._rule(widths, "ML", "MM", "MR")
		padding = " " * self._pad
		cells = [ ]
		for (col_name, width) in widths.items():
			content = self._formatter(col_name, row)(row.data[col_name], width) if (col_name in row.data) else (" " * width)
			cells.append(padding + content + padding)
		return self._STYLE["V"] + self._STYLE["V"].join(cells) + self._STYLE["V"]

	def lines(self, *col_names: str):
		widths = self._col_widths(col_names)
		yield self._rule(widths, "TL", "TM", "TR")
		for row in self._rows:
			yield self._format_row(widths, row)
		yield self._rule(widths, "BL", "BM", "BR")

	def print(self, *col_names: str, file = None):
		for line in self.lines(*col_names):
			print(line, file = file if (file is not None) else sys.stdout)

	def delimited_rows(self, *col_names: str, delimiter: str = "\t"):
		"""Machine-readable rendering: separators dropped, no padding, every
		requested column kept."""
		for row in self._rows:
			if not row.is_separator:
				yield delimiter.join(self._cell_str(col_name, row) if (col_name in row.data) else "" for col_name in col_names)
