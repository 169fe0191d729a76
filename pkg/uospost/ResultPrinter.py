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
from .TableFormatter import Table, CellFormatter

class ResultPrinter():
	def __init__(self, file = None):
		self._file = file if (file is not None) else sys.stdout

	def _print(self, *args):
		print(*args, file = self._file)

	@staticmethod
	def _rank_table(reports: list):
		table = Table()
		for report in reports:
			table.format_column(report.system, CellFormatter.number(".1f"))
		table.add_header_row({ "what": "", **{ report.system: report.system for report in reports } })
		table.add_separator_row()
		table.add_row({ "what": "Rank-Correct", **{ report.system: report.mean_correct for report in reports } })
		table.add_row({ "what": "Rank-Incorrect", **{ report.system: report.mean_incorrect for report in reports } })
		table.add_separator_row()
		table.add_row({ "what": "Rank-All", **{ report.system: report.mean_all for report in reports } })
		return table

	def print_rank_reports(self, reports: list):
		if len(reports) == 0:
			return
		self._print(f"Effective rank of log posteriors at {reports[0].variability * 100:.0f}% variability ({reports[0].mode.value} singular values)")
		self._rank_table(reports).print("what", *(report.system for report in reports), file = self._file)
		skipped = sum(len(report.skipped) for report in reports)
		if skipped > 0:
			self._print(f"{skipped} class buckets with fewer than 2 frames were left out of the means.")

	@staticmethod
	def _tsv_value(value):
		if value is None:
			return ""
		return f"{value:.4f}" if isinstance(value, float) else str(value)

	def rank_delimited_rows(self, reports: list):
		columns = ( "system", "class", "frames", "correct_frames", "incorrect_frames", "rank_correct", "rank_incorrect", "rank_all" )
		table = Table().format_columns({ column: CellFormatter(to_str = self._tsv_value) for column in columns })
		table.add_header_row({ column: column for column in columns })
		for report in reports:
			for entry in report.classes:
				table.add_row({ "system": report.system, "class": entry.label, "frames": entry.frames, "correct_frames": entry.correct_frames, "incorrect_frames": entry.incorrect_frames, "rank_correct": entry.rank_correct, "rank_incorrect": entry.rank_incorrect, "rank_all": entry.rank_all })
			table.add_row({ "system": report.system, "class": "mean", "frames": report.total_frames, "rank_correct": report.mean_correct, "rank_incorrect": report.mean_incorrect, "rank_all": report.mean_all })
		return table.delimited_rows(*columns)

	def print_alpha_sum_ranks(self, entries: list):
		table = Table()
		table.format_columns({
			"frames":	CellFormatter.right(),
			"rank":		CellFormatter.number("d"),
		})
		table.add_header_row({ "class": "Class", "frames": "Frames", "rank": "Alpha-sum rank", "note": "" })
		table.add_separator_row()
		for entry in entries:
			note = "skipped, no activation" if (entry.rank is None) else ("single frame" if entry.degenerate else "")
			table.add_row({ "class": entry.label, "frames": entry.frames, "rank": entry.rank, "note": note })
		table.print("class", "frames", "rank", "note", file = self._file)

	def print_comparison(self, results: list):
		table = Table()
		percent = CellFormatter.number(".2%")
		signed_percent = CellFormatter.number("+.1%")
		table.format_columns({
			"frame_error":		percent,
			"frame_change":		signed_percent,
			"sequence_error":	percent,
			"sequence_change":	signed_percent,
			"ins":				CellFormatter.right(),
			"del":				CellFormatter.right(),
			"subs":				CellFormatter.right(),
		})
		table.add_header_row({
			"system":			"System",
			"frame_error":		"Frame err",
			"frame_change":		"Rel.",
			"sequence_error":	"Label-seq err",
			"sequence_change":	"Rel.",
			"ins":				"Ins",
			"del":				"Del",
			"subs":				"Subs",
		})
		table.add_separator_row()
		for result in results:
			table.add_row({
				"system":			result.name,
				"frame_error":		result.frame_error,
				"frame_change":		result.frame_error_change,
				"sequence_error":	result.sequence.rate,
				"sequence_change":	result.sequence_error_change,
				"ins":				result.sequence.insertions,
				"del":				result.sequence.deletions,
				"subs":				result.sequence.substitutions,
			})
		table.print("system", "frame_error", "frame_change", "sequence_error", "sequence_change", "ins", "del", "subs", file = self._file)
		if len(results) > 0:
			self._print(f"Reference label sequence: {results[0].sequence.reference_length} labels")

	def print_projection_stats(self, stats):
		self._print(f"Projected {stats.frames} frames, mean l2 displacement {stats.mean_distance:.4f}")
		if stats.degenerate_count > 0:
			self._print(f"{stats.degenerate_count} degenerate frames passed through unchanged: {', '.join(str(index) for index in stats.degenerate_frames[:20])}{' ...' if (stats.degenerate_count > 20) else ''}")
		if stats.not_converged > 0:
			self._print(f"{stats.not_converged} frames reached the iteration limit")

	def print_training_reports(self, reports: list, dictionary, num_frames: int):
		table = Table()
		table.format_columns({
			"frames":		CellFormatter.right(),
			"atoms":		CellFormatter.right(),
			"objective":	CellFormatter.number(".4e"),
			"rejected":		CellFormatter.right(),
			"refined":		CellFormatter.right(),
		})
		table.add_header_row({ "class": "Class", "frames": "Frames", "atoms": "Atoms", "objective": "Objective", "rejected": "Rejected", "refined": "Refined", "note": "" })
		table.add_separator_row()
		for report in reports:
			note = "empty, one-hot atom" if report.empty else ("capped" if report.capped else "")
			table.add_row({
				"class":		report.label,
				"frames":		report.frames,
				"atoms":		report.atoms,
				"objective":	report.objective_trace[-1] if report.objective_trace else None,
				"rejected":		report.rejected_epochs,
				"refined":		report.refined_epochs,
				"note":			note,
			})
		table.print("class", "frames", "atoms", "objective", "rejected", "refined", "note", file = self._file)
		self._print(f"Dictionary {dictionary.m} x {dictionary.n} in {dictionary.num_groups} groups, {100 * dictionary.n / max(1, num_frames):.1f}% of {num_frames} training frames")

	def print_enhancement_report(self, report):
		converged = sum(1 for entry in report.classes if (entry.skipped is None) and entry.converged)
		self._print(f"RPCA ({report.domain.value} domain): {converged} classes converged, {len(report.not_converged)} hit the iteration limit, {len(report.skipped)} passed through")

	def print_sweep(self, rows: list):
		table = Table()
		percent = CellFormatter.number(".2%")
		table.format_columns({
			"noise":			CellFormatter.number(".3f"),
			"frame_error":		percent,
			"sequence_error":	percent,
			"rank":				CellFormatter.number(".1f"),
			"ins":				CellFormatter.right(),
			"del":				CellFormatter.right(),
			"subs":				CellFormatter.right(),
		})
		table.add_header_row({ "noise": "Noise", "system": "System", "frame_error": "Frame err", "sequence_error": "Label-seq err", "ins": "Ins", "del": "Del", "subs": "Subs", "rank": "Rank" })
		previous_noise = None
		for row in rows:
			if row["noise"] != previous_noise:
				table.add_separator_row()
				previous_noise = row["noise"]
			table.add_row({
				"noise":			row["noise"],
				"system":			row["system"],
				"frame_error":		row["frame_error"],
				"sequence_error":	row["sequence_error"],
				"ins":				row["insertions"],
				"del":				row["deletions"],
				"subs":				row["substitutions"],
				"rank":				row["rank"],
			})
		table.print("noise", "system", "frame_error", "sequence_error", "ins", "del", "subs", "rank", file = self._file)
