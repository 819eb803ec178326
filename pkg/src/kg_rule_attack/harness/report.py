"""Comparison reports over run records.

One row per (model, attacker, gamma, seed). CSV columns, in order:

Column                    | Description
--------------------------|------------
`model`                   | Model kind.
`attacker`                | Attacker name.
`gamma`                   | Perturbation ratio.
`seed`                    | Run seed.
`setting`                 | `filtered` or `raw`.
`budget`                  | floor(gamma * \\|T\\|).
`plan-size`               | Planned triples, 0 for `none`.
`fill-count`              | Planned triples filled at random.
`clean-mrr`               | MRR of the clean model.
`attacked-mrr`            | MRR of the model retrained on the perturbed graph.
`drop-mrr`                | (clean - attacked) / clean.
`clean-hits@K`            | For every K, likewise.
`attacked-hits@K`         |
`drop-hits@K`             |
`targets`                 | Highly ranked test triples, empty when none.
`targets-clean-mrr`       | MRR over the highly ranked test triples.
`targets-attacked-mrr`    |
`targets-drop-mrr`        |
"""

import math
import os

import jinja2
import pandas as pd

from kg_rule_attack.config.experiment_config import ATTACKER_NONE
from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.utils.file import create_parent_dir, write_json_file

REPORT_FORMAT_JSON = 'json'
REPORT_FORMAT_CSV = 'csv'
REPORT_FORMAT_MARKDOWN = 'markdown'
REPORT_FORMATS = (REPORT_FORMAT_JSON, REPORT_FORMAT_CSV, REPORT_FORMAT_MARKDOWN)
REPORT_EXTENSIONS = {
    REPORT_FORMAT_JSON: 'json',
    REPORT_FORMAT_CSV: 'csv',
    REPORT_FORMAT_MARKDOWN: 'md'
}

REPORT_KEY = 'kgra-report'

TEMPLATES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'templates')


def audit_budgets(records):
    """Rechecks that every attacked run perturbed exactly its budget.

    Raises
    ------
    KGRuleAttackException
        Naming the first cell whose plan size, or whose plan file, does not match
        floor(gamma * |T|).
    """
    for record in records:
        for cell in record.cells:
            if cell.attacker == ATTACKER_NONE:
                continue
            expected = cell.budget
            if cell.train_size is not None:
                expected = int(math.floor(cell.gamma * cell.train_size + 1e-9))
                if cell.budget != expected:
                    raise KGRuleAttackException(
                        f"Budget audit failed for {cell.key}: recorded budget {cell.budget}, "
                        f"floor(gamma * |T|) is {expected}"
                    )
            if cell.plan_size != expected:
                raise KGRuleAttackException(
                    f"Budget audit failed for {cell.key}: plan has {cell.plan_size} triples, "
                    f"budget is {expected}"
                )
            if cell.plan_file and os.path.isfile(cell.plan_file):
                with open(cell.plan_file, 'r', encoding='utf-8') as plan_file:
                    lines = sum(1 for line in plan_file if line.strip())
                if lines != expected:
                    raise KGRuleAttackException(
                        f"Budget audit failed for {cell.key}: plan file {cell.plan_file} has "
                        f"{lines} triples, budget is {expected}"
                    )


def report_hits_at(records):
    """
    Returns
    -------
    list of int
        Every Hits@K cut off of the records, sorted.
    """
    return sorted({
        k for record in records for cell in record.cells for k in cell.clean.hits
    })


def report_rows(records):
    """Flattens run records into report rows.

    Parameters
    ----------
    records : list of RunRecord

    Returns
    -------
    tuple of (list of str, list of dict)
        Column names and rows sorted by model, attacker, gamma and seed.

    Raises
    ------
    KGRuleAttackException
        If there are no records, or they mix filtered and raw metrics.
    """
    if not records:
        raise KGRuleAttackException('A report needs at least one run record')
    cells = [(record, cell) for record in records for cell in record.cells]
    if not cells:
        raise KGRuleAttackException('Run records have no evaluated cells')
    settings = {cell.clean.setting for _, cell in cells}
    settings.update(cell.attacked.setting for _, cell in cells)
    if len(settings) > 1:
        raise KGRuleAttackException(
            f"Can not report mixed metric settings in one table: {sorted(settings)}"
        )

    hits_at = report_hits_at(records)
    columns = [
        'model', 'attacker', 'gamma', 'seed', 'setting', 'budget', 'plan-size', 'fill-count',
        'clean-mrr', 'attacked-mrr', 'drop-mrr'
    ]
    for k in hits_at:
        columns.extend([f"clean-hits@{k}", f"attacked-hits@{k}", f"drop-hits@{k}"])
    columns.extend(['targets', 'targets-clean-mrr', 'targets-attacked-mrr', 'targets-drop-mrr'])

    rows = []
    for record, cell in cells:
        drops = cell.relative_drops()
        row = {
            'model': cell.model,
            'attacker': cell.attacker,
            'gamma': cell.gamma,
            'seed': record.seed,
            'setting': cell.clean.setting,
            'budget': cell.budget,
            'plan-size': cell.plan_size,
            'fill-count': cell.fill_count,
            'clean-mrr': cell.clean.mrr,
            'attacked-mrr': cell.attacked.mrr,
            'drop-mrr': drops['mrr']
        }
        for k in hits_at:
            row[f"clean-hits@{k}"] = cell.clean.hits.get(k)
            row[f"attacked-hits@{k}"] = cell.attacked.hits.get(k)
            row[f"drop-hits@{k}"] = drops.get(f"hits@{k}")

        targets = cell.highly_ranked
        if targets is not None:
            row['targets'] = targets['targets']
            row['targets-clean-mrr'] = targets['clean'].mrr
            row['targets-attacked-mrr'] = targets['attacked'].mrr
            row['targets-drop-mrr'] = targets['clean'].relative_drops(targets['attacked'])['mrr']
        else:
            row.update({
                'targets': None,
                'targets-clean-mrr': None,
                'targets-attacked-mrr': None,
                'targets-drop-mrr': None
            })
        rows.append(row)

    rows.sort(key=lambda row: (row['model'], row['attacker'], row['gamma'], row['seed']))
    return columns, rows


def format_metric(value):
    """
    Returns
    -------
    str
        A metric in [0, 1] as a percentage with two decimals, e.g. `48.20`.
    """
    return '-' if value is None else f"{100.0 * value:.2f}"


def format_drop(value):
    """
    Returns
    -------
    str
        A relative drop as a percentage with one decimal, e.g. `7.1%`.
    """
    return '-' if value is None else f"{100.0 * value:.1f}%"


def render_markdown(rows, hits_at):
    """
    Returns
    -------
    str
        Markdown comparison table.
    """
    environment = jinja2.Environment(
        loader=jinja2.FileSystemLoader(TEMPLATES_DIR),
        keep_trailing_newline=True,
        autoescape=False
    )
    environment.filters['metric'] = format_metric
    environment.filters['drop'] = format_drop
    template = environment.get_template('report.md.j2')
    return template.render(rows=rows, hits_at=hits_at)


def emit_report(records, report_format, path):
    """Writes a comparison report.

    Parameters
    ----------
    records : list of RunRecord
    report_format : str
        'json', 'csv' or 'markdown'.
    path : str
        Destination, parent folders are created.

    Returns
    -------
    str
        The given path.

    Raises
    ------
    KGRuleAttackException
        If the format is unknown, records are empty, settings are mixed or the budget
        audit fails.
    """
    if report_format not in REPORT_FORMATS:
        raise KGRuleAttackException(
            f"Report format ({report_format}) must be one of {REPORT_FORMATS}"
        )
    audit_budgets(records)
    columns, rows = report_rows(records)

    if report_format == REPORT_FORMAT_JSON:
        return write_json_file(path, {REPORT_KEY: {'columns': columns, 'rows': rows}})

    create_parent_dir(path)
    if report_format == REPORT_FORMAT_CSV:
        pd.DataFrame(rows, columns=columns).to_csv(path, index=False)
        return path

    with open(path, 'w', encoding='utf-8') as report_file:
        report_file.write(render_markdown(rows, report_hits_at(records)))
    return path
