"""
Report template builder.
Renders a RunReport either as canonical JSON or as aligned rich tables with
unit labels in every numeric column header.
"""

import io
import json
from typing import Any, Callable, Dict, List

from rich.console import Console
from rich.table import Table

from ..models import RunReport
from ..utils import get_logger

# Fixed render width keeps table output independent of the terminal
TABLE_WIDTH = 120

INDICES = "xyz"


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _fmt_complex(pair: List[float]) -> str:
    re_part, im_part = pair
    return f"{re_part:.10g} {'+' if im_part >= 0 else '-'} {abs(im_part):.10g}i"


class ReportTemplateBuilder:
    """
    Builds the text of a report.
    JSON output is canonical (sorted keys, fixed indent) so identical inputs
    give byte-identical reports.
    """

    def __init__(self, json_indent: int = 2):
        self.json_indent = json_indent
        self.logger = get_logger()
        self._table_builders: Dict[str, Callable[[RunReport], List[Table]]] = {
            'beta': self._beta_tables,
            'terms': self._terms_tables,
            'check': self._check_tables,
            'amplitude': self._amplitude_tables,
            'envshift': self._envshift_tables,
            'selftest': self._selftest_tables,
        }

    def build_json(self, report: RunReport) -> str:
        payload = report.model_dump(mode='json', by_alias=True)
        return json.dumps(payload, indent=self.json_indent, sort_keys=True) + "\n"

    def build_table(self, report: RunReport) -> str:
        buffer = io.StringIO()
        console = Console(file=buffer, width=TABLE_WIDTH, color_system=None, force_terminal=False)

        console.print(f"{report.subcommand}  (input digest {report.input_digest[:16]})")
        for table in self._table_builders[report.subcommand](report):
            console.print(table)
        for warning in report.warnings:
            console.print(f"warning: {warning}")

        return buffer.getvalue()

    # ------------------------------------------------------------
    # Per-subcommand layouts
    # ------------------------------------------------------------

    def _tensor_table(self, title: str, tensors: Dict[str, Dict[str, Any]]) -> Table:
        table = Table(title=title)
        table.add_column("ijk")
        for name in tensors:
            table.add_column(f"{name} Re (a.u.)", justify="right")
            table.add_column(f"{name} Im (a.u.)", justify="right")

        for i in range(3):
            for j in range(3):
                for k in range(3):
                    row = [INDICES[i] + INDICES[j] + INDICES[k]]
                    for tensor in tensors.values():
                        re_part, im_part = tensor['components'][i][j][k]
                        row.extend([_fmt(re_part), _fmt(im_part)])
                    table.add_row(*row)
        return table

    def _beta_tables(self, report: RunReport) -> List[Table]:
        results = report.results
        tensors = results['tensors']
        first = next(iter(tensors.values()))
        title = (
            f"beta(-2w; w, w) at omega = {_fmt(first['omega'])} hartree, "
            f"damping {first['damping_convention']}"
            f"{', jk-symmetrized' if first['symmetrized'] else ''}"
        )
        tables = [self._tensor_table(title, tensors)]

        if 'max_rel_diff_symmetrized' in results:
            diff = Table(title="Representation difference")
            diff.add_column("Quantity")
            diff.add_column("Max relative difference (dimensionless)", justify="right")
            diff.add_row("symmetrized", f"{results['max_rel_diff_symmetrized']:.3e}")
            diff.add_row("raw", f"{results['max_rel_diff_raw']:.3e}")
            tables.append(diff)
        return tables

    def _terms_tables(self, report: RunReport) -> List[Table]:
        results = report.results
        table = Table(title=f"{results['count']} term(s), {results['representation']} representation")
        for header in ("ordering", "r", "s", "pattern", "multiple r (hbar w)", "multiple s (hbar w)"):
            table.add_column(header, justify="right")
        for term in results['terms']:
            table.add_row(
                str(term['ordering']), str(term['r']), str(term['s']), term['pattern'],
                f"{term['multiples'][0]:+d}", f"{term['multiples'][1]:+d}",
            )
        return [table]

    def _check_tables(self, report: RunReport) -> List[Table]:
        results = report.results
        status = "PASS" if results['passed'] else "FAIL"
        table = Table(title=f"Equivalence check: {status} (tolerance {results['tolerance']:.1e})")
        for header in ("#", "omega (hartree)", "sym. rel. diff", "raw rel. diff", "status"):
            table.add_column(header, justify="right")
        for point in results['grid']:
            table.add_row(
                str(point['index']),
                _fmt(point['omega']),
                f"{point['max_rel_diff_symmetrized']:.3e}",
                f"{point['max_rel_diff_raw']:.3e}",
                "ok" if point['passed'] else "FAIL",
            )
        return [table]

    def _amplitude_tables(self, report: RunReport) -> List[Table]:
        results = report.results
        table = Table(title="Single-centre SHG amplitude")
        table.add_column("Quantity")
        table.add_column("Value", justify="right")
        table.add_column("Unit")
        table.add_row("omega", _fmt(results['omega']), "hartree")
        table.add_row("n", str(results['n']), "photons")
        table.add_row("V", _fmt(results['volume']), "bohr^3")
        table.add_row("prefactor", _fmt_complex(results['prefactor']), "a.u.")
        table.add_row("e'* e e . beta", _fmt_complex(results['contraction']), "a.u.")
        table.add_row("S_X", _fmt_complex(results['amplitude']), "hartree")
        table.add_row("|S_X|^2", _fmt(results['amplitude_abs2']), "hartree^2")
        table.add_row("elastic energy mismatch", _fmt(results['elastic_energy_mismatch']), "hartree")
        return [table]

    def _envshift_tables(self, report: RunReport) -> List[Table]:
        results = report.results
        summary = Table(
            title=f"Ground-dipole shifts ({results['sign_convention']}), "
                  f"total {_fmt(results['total_scalar'])} hartree"
        )
        summary.add_column("site", justify="right")
        summary.add_column("position (bohr)")
        summary.add_column("scalar shift (hartree)", justify="right")
        for site in results['sites']:
            summary.add_row(
                str(site['index']),
                ", ".join(_fmt(x) for x in site['position']),
                _fmt(site['scalar_shift']),
            )
        tables = [summary]

        for site in results['sites']:
            matrix = Table(title=f"Site {site['index']} perturbation matrix (hartree)")
            matrix.add_column("l \\ j", justify="right")
            for column in range(len(site['matrix'])):
                matrix.add_column(str(column), justify="right")
            for row_index, row in enumerate(site['matrix']):
                matrix.add_row(str(row_index), *[_fmt(x) for x in row])
            tables.append(matrix)

            if 'beta' in site:
                tables.append(self._tensor_table(
                    f"Site {site['index']} beta on shifted levels "
                    f"(energies {', '.join(_fmt(e) for e in site['shifted_energies'])} hartree)",
                    {site['beta']['representation']: site['beta']},
                ))
        return tables

    def _selftest_tables(self, report: RunReport) -> List[Table]:
        results = report.results
        status = "PASS" if results['passed'] else "FAIL"
        table = Table(
            title=f"Self test: {status}, worst {results['worst']:.3e} "
                  f"(tolerance {results['tolerance']:.1e}, seed {results['seed']})"
        )
        for header in ("model", "levels", "frequencies", "worst sym. rel. diff"):
            table.add_column(header, justify="right")
        for model in results['models']:
            table.add_row(
                str(model['index']), str(model['levels']),
                str(len(model['frequencies'])), f"{model['worst']:.3e}",
            )
        return [table]
