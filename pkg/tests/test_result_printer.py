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
import io
from uospost.TableFormatter import Table, CellFormatter, Align
from uospost.ResultPrinter import ResultPrinter
from uospost.RankAnalysis import RankReport, ClassRank
from uospost.Enums import VariabilityMode

def test_cell_formatter():
	number = CellFormatter.number(".2f")
	assert number(3.14159, 6) == "  3.14"
	assert number(None, 3) == "  -"
	assert number.as_header()("rank", 6) == "  rank"
	assert CellFormatter()("ab", 4) == "ab  "
	assert CellFormatter.right().align == Align.Right

def test_table_lines():
	table = Table().format_column("value", CellFormatter.number(".1f"))
	table.add_header_row({ "name": "Name", "value": "Value" })
	table.add_separator_row()
	table.add_row({ "name": "a", "value": 1.25 })
	table.add_row({ "name": "longer" })
	lines = list(table.lines("name", "value"))
	assert lines == [
		"┌────────┬───────┐",
		"│ Name   │ Value │",
		"├────────┼───────┤",
		"│ a      │   1.2 │",
		"│ longer │       │",
		"└────────┴───────┘",
	]

def test_table_drops_empty_columns():
	table = Table()
	table.add_row({ "name": "a", "note": "" })
	assert list(table.lines("name", "note"))[1] == "│ a │"

def test_delimited_rows():
	table = Table().format_column("value", CellFormatter.number(".3f", missing = ""))
	table.add_header_row({ "name": "name", "value": "value" })
	table.add_separator_row()
	table.add_row({ "name": "a", "value": 0.5 })
	table.add_row({ "name": "b" })
	assert list(table.delimited_rows("name", "value")) == [ "name\tvalue", "a\t0.500", "b\t" ]

def test_rank_delimited_rows():
	report = RankReport(system = "DNN", variability = 0.95, mode = VariabilityMode.Squared, classes = [
		ClassRank(label = 0, frames = 10, correct_frames = 8, incorrect_frames = 2, rank_correct = 3, rank_incorrect = 2, rank_all = 4),
		ClassRank(label = 1, frames = 5, correct_frames = 5, incorrect_frames = 0, rank_correct = 2, rank_all = 2),
	])
	rows = list(ResultPrinter().rank_delimited_rows([ report ]))
	assert rows[0].split("\t")[0] == "system"
	assert rows[1] == "DNN\t0\t10\t8\t2\t3\t2\t4"
	assert rows[2] == "DNN\t1\t5\t5\t0\t2\t\t2"
	assert rows[3] == "DNN\tmean\t15\t\t\t2.5000\t2.0000\t3.0000"

def test_print_rank_reports():
	report = RankReport(system = "DNN", variability = 0.95, mode = VariabilityMode.Squared, classes = [
		ClassRank(label = 0, frames = 10, correct_frames = 8, incorrect_frames = 2, rank_correct = 3, rank_incorrect = 2, rank_all = 4),
	])
	output = io.StringIO()
	ResultPrinter(file = output).print_rank_reports([ report ])
	text = output.getvalue()
	assert "95% variability" in text
	assert "Rank-Incorrect" in text
	assert "4.0" in text
