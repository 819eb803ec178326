"""Rule confidence distributions, for comparing rule sets mined before and after an attack.
"""

import pandas as pd

from kg_rule_attack.utils.file import create_parent_dir

DEFAULT_DISTRIBUTION_PER_HEAD = 50

CONFIDENCE_DISTRIBUTION_COLUMNS = ['head', 'rank', 'confidence', 'body']


def confidence_distribution(ruleset, relations, per_head=DEFAULT_DISTRIBUTION_PER_HEAD):
    """Confidences of the most confident rules of every head relation.

    Parameters
    ----------
    ruleset : RuleSet
    relations : Vocabulary
        Relation vocabulary rendering heads and bodies.
    per_head : int
        Rules kept per head.

    Returns
    -------
    pandas.DataFrame
        Columns head, rank (1 based), confidence, body (atoms joined by ' ^ '),
        sorted by head surface form then rank.
    """
    rows = []
    for head in ruleset.heads():
        ranked = sorted(
            ruleset.for_head(head),
            key=lambda rule: (-(rule.confidence or 0.0), ruleset.body_sort_key(rule))
        )
        for rank, rule in enumerate(ranked[:per_head], start=1):
            rows.append({
                'head': relations.lookup(head),
                'rank': rank,
                'confidence': rule.confidence,
                'body': ' ^ '.join(rule.body_surface(relations))
            })

    frame = pd.DataFrame(rows, columns=CONFIDENCE_DISTRIBUTION_COLUMNS)
    return frame.sort_values(['head', 'rank'], kind='mergesort').reset_index(drop=True)


def save_confidence_distribution(frame, path):
    """Writes a confidence distribution as CSV.

    Returns
    -------
    str
        The given path.
    """
    create_parent_dir(path)
    frame.to_csv(path, index=False)
    return path
