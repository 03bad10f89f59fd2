"""Report construction and rendering (JSON, CSV, rich table).

A report is a plain dict:

    {command, model: {vertices, edges, topology}, tree: {branch_ids, chord_ids},
     result: {log_Z, log_Z_linear?, std_error_log, chi_square, samples, seed,
              wall_time_seconds}}

``compare`` nests one such result per domain under ``result.primal`` and
``result.dual``; ``sweep`` makes ``result`` a list of rows. Infinite values are
written as the strings ``"inf"`` / ``"-inf"`` so the JSON stays standard.
"""
import csv
import io
import json
import math
from typing import Any, Dict, List, Optional

from rich.console import Console
from rich.table import Table

from ..errors import NumericFailure
from ..graph.trees import TreePartition
from ..sampling.base import EstimateReport

# Above this |ln Z| the linear value overflows a double.
LINEAR_LIMIT = 700.0

Report = Dict[str, Any]


def log_result(log_Z: float) -> Dict[str, Any]:
    out: Dict[str, Any] = {'log_Z': log_Z}
    if math.isfinite(log_Z) and abs(log_Z) < LINEAR_LIMIT:
        out['log_Z_linear'] = math.exp(log_Z)
    return out


def estimate_result(report: EstimateReport) -> Dict[str, Any]:
    out = log_result(report.log_estimate)
    out.update({
        'std_error_log': report.std_error_log,
        'chi_square': report.empirical_chi_square,
        'samples': report.sample_count,
        'seed': report.seed,
        'wall_time_seconds': report.wall_time_seconds,
    })
    return out


def tree_section(partition: TreePartition) -> Dict[str, List[int]]:
    return {'branch_ids': list(partition.branch_ids), 'chord_ids': list(partition.chord_ids)}


def build_report(command: str, model_info: Dict[str, Any], partition: Optional[TreePartition],
                 result: Any, dual_partition: Optional[TreePartition] = None) -> Report:
    report: Report = {'command': command, 'model': model_info}
    if partition is not None:
        report['tree'] = tree_section(partition)
    if dual_partition is not None and dual_partition.branch_ids != partition.branch_ids:
        report['dual_tree'] = tree_section(dual_partition)
    report['result'] = result
    return report


def _plain(value: Any) -> Any:
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def render_json(report: Report) -> str:
    return json.dumps(_plain(report), indent=2) + "\n"


def flatten(data: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    """Dotted keys for nested dicts; lists of scalars joined with ``;``."""
    flat: Dict[str, Any] = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(flatten(value, name + "."))
        elif isinstance(value, (list, tuple)):
            flat[name] = ";".join(str(v) for v in value)
        else:
            flat[name] = value
    return flat


def report_rows(report: Report) -> List[Dict[str, Any]]:
    """One flat row per result (a single row unless ``result`` is a list)."""
    report = _plain(report)
    common = {k: v for k, v in report.items() if k != 'result'}
    results = report['result'] if isinstance(report['result'], list) else [report['result']]
    return [flatten({**common, 'result': r}) for r in results]


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(report: Report) -> str:
    rows = report_rows(report)
    fields: List[str] = []
    for row in rows:
        fields.extend(k for k in row if k not in fields)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _cell(row.get(k)) for k in fields})
    return buffer.getvalue()


def render_table(report: Report, console: Console) -> None:
    rows = report_rows(report)
    title = f"isingdual {report['command']}"
    if len(rows) == 1:
        table = Table(title=title, show_header=True)
        table.add_column("Field", style="cyan")
        table.add_column("Value", style="green", justify="right")
        for key, value in rows[0].items():
            table.add_row(key, _cell(value))
    else:
        columns = [k for k in rows[0] if k.startswith('result.')]
        table = Table(title=title, show_header=True)
        for key in columns:
            name = key[len('result.'):]
            domain = name.split('.', 1)[0]
            table.add_column(name, justify="right", style=domain if domain in ('primal', 'dual') else None)
        for row in rows:
            table.add_row(*(_cell(row.get(k)) for k in columns))
    console.print(table)


FORMATS = ('json', 'csv', 'table')


def check_no_nan(value: Any, path: str = "result") -> None:
    """Raise NumericFailure naming the first NaN found in a report."""
    if isinstance(value, float) and math.isnan(value):
        raise NumericFailure(f"{path} is NaN")
    if isinstance(value, dict):
        for k, v in value.items():
            check_no_nan(v, f"{path}.{k}")
    elif isinstance(value, list):
        for i, v in enumerate(value):
            check_no_nan(v, f"{path}[{i}]")
