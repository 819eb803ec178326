"""Rule files: one JSON object per line.

Each line is `{"head": "<relation>", "body": ["<relation>", "inv:<relation>", ...],
"confidence": <number>}`. This is how rules mined by other tools are injected.
"""

import json
import logging

from kg_rule_attack.exceptions import KGRuleAttackException, VocabularyError
from kg_rule_attack.rules.rule import INVERSE_PREFIX, Rule, RuleSet
from kg_rule_attack.utils.file import create_parent_dir

logger = logging.getLogger(__name__)


def _parse_atom(symbol):
    if symbol.startswith(INVERSE_PREFIX):
        return symbol[len(INVERSE_PREFIX):], True
    return symbol, False


def load_rules(path, kg):
    """Loads a rule file against the vocabulary of a graph.

    Parameters
    ----------
    path : str
        JSON lines rule file.
    kg : KnowledgeGraph
        Graph whose relation vocabulary the rules refer to.

    Returns
    -------
    RuleSet

    Raises
    ------
    VocabularyError
        Listing every relation symbol of the file unknown to the graph.
    KGRuleAttackException
        If a line is not a valid rule object.
    """
    parsed = []
    symbols = set()
    with open(path, 'r', encoding='utf-8') as rule_file:
        for line_number, line in enumerate(rule_file, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                entry = json.loads(line)
                head = entry['head']
                body = [_parse_atom(symbol) for symbol in entry['body']]
                confidence = entry.get('confidence')
            except (ValueError, KeyError, TypeError, AttributeError) as error:
                raise KGRuleAttackException(
                    f"{path}:{line_number}: Invalid rule line: {error}"
                ) from error

            if not isinstance(head, str) or not body:
                raise KGRuleAttackException(
                    f"{path}:{line_number}: Rule needs a head relation and a nonempty body"
                )
            symbols.add(head)
            symbols.update(relation for relation, _ in body)
            parsed.append((line_number, head, body, confidence))

    unknown = kg.relations.unknown(symbols)
    if unknown:
        raise VocabularyError(unknown, f"Relations in rule file ({path}) not in the graph")

    rules = []
    for line_number, head, body, confidence in parsed:
        try:
            rules.append(Rule(
                kg.relations.id_of(head),
                [(kg.relations.id_of(relation), inverted) for relation, inverted in body],
                confidence
            ))
        except KGRuleAttackException as error:
            raise KGRuleAttackException(f"{path}:{line_number}: {error}") from error

    ruleset = RuleSet(rules, relations=kg.relations)
    logger.info("Loaded %d rules from %s", len(ruleset), path)
    return ruleset


def save_rules(ruleset, relations, path):
    """Writes a rule set as a rule file, grouped by head, in rule set order.

    Parameters
    ----------
    ruleset : RuleSet
    relations : Vocabulary
        Relation vocabulary rendering the rules.
    path : str
        Destination, parent folders are created.

    Returns
    -------
    str
        The given path.
    """
    create_parent_dir(path)
    with open(path, 'w', encoding='utf-8') as rule_file:
        for head in ruleset.heads():
            for rule in ruleset.for_head(head):
                entry = {
                    'head': relations.lookup(rule.head),
                    'body': rule.body_surface(relations),
                    'confidence': rule.confidence
                }
                rule_file.write(json.dumps(entry, sort_keys=True))
                rule_file.write('\n')
    return path
