"""Chain Horn rules and rule sets.

A rule `r_1(X,Z_1) ^ r_2(Z_1,Z_2) ^ ... ^ r_n(Z_{n-1},Y) -> head(X,Y)` is stored as a head
relation id plus a body of atoms. An inverted atom is traversed tail to head, so the body
`inv:r(X,Z)` matches the triple (Z, r, X).
"""

import collections
import hashlib

from kg_rule_attack.exceptions import KGRuleAttackException

INVERSE_PREFIX = 'inv:'

SELECT_HIGHEST = 'highest'
SELECT_LOWEST = 'lowest'

Atom = collections.namedtuple('Atom', ['relation', 'inverted'])
Atom.__doc__ = """A body atom: relation id plus traversal direction."""


def atom_surface(relations, atom):
    """
    Returns
    -------
    str
        The atom as its relation surface form, prefixed with 'inv:' if inverted.
    """
    name = relations.lookup(atom.relation)
    return f"{INVERSE_PREFIX}{name}" if atom.inverted else name


class Rule:
    """A chain rule with an optional confidence.

    Parameters
    ----------
    head : int
        Head relation id, never inverted.
    body : sequence of Atom or (int, bool)
        Body atoms in chain order, at least one.
    confidence : float, optional
        Confidence in [0, 1]; None for a rule whose confidence is not computed yet.
    support : int, optional
        Number of distinct (X, Y) body pairs whose head triple is in the graph.
    body_support : int, optional
        Number of distinct (X, Y) body pairs.

    Raises
    ------
    KGRuleAttackException
        If the body is empty or the confidence is outside [0, 1].
    """

    def __init__(self, head, body, confidence=None, support=None, body_support=None):  # pylint: disable=too-many-arguments
        body = tuple(Atom(int(relation), bool(inverted)) for relation, inverted in body)
        if not body:
            raise KGRuleAttackException('Rule body must have at least one atom')
        if confidence is not None and not 0.0 <= confidence <= 1.0:
            raise KGRuleAttackException(f"Rule confidence ({confidence}) must be in [0, 1]")

        self.__head = int(head)
        self.__body = body
        self.__confidence = None if confidence is None else float(confidence)
        self.__support = support
        self.__body_support = body_support

    @property
    def head(self):
        """
        Returns
        -------
        int
            Head relation id.
        """
        return self.__head

    @property
    def body(self):
        """
        Returns
        -------
        tuple of Atom
        """
        return self.__body

    @property
    def length(self):
        """
        Returns
        -------
        int
            Number of body atoms.
        """
        return len(self.__body)

    @property
    def confidence(self):
        """
        Returns
        -------
        float or None
        """
        return self.__confidence

    @property
    def support(self):
        """
        Returns
        -------
        int or None
        """
        return self.__support

    @property
    def body_support(self):
        """
        Returns
        -------
        int or None
        """
        return self.__body_support

    @property
    def key(self):
        """
        Returns
        -------
        tuple
            (head, body), the identity of a rule regardless of confidence.
        """
        return (self.__head, self.__body)

    def is_tautology(self):
        """
        Returns
        -------
        bool
            True if the body is the head atom itself, which makes the rule hold trivially.
        """
        return self.__body == (Atom(self.__head, False),)

    def with_confidence(self, confidence, support=None, body_support=None):
        """
        Returns
        -------
        Rule
            Copy of this rule with the given statistics.
        """
        return Rule(self.__head, self.__body, confidence, support, body_support)

    def with_body(self, body):
        """
        Returns
        -------
        Rule
            Copy of this rule with another body, keeping head and confidence.
        """
        return Rule(self.__head, body, self.__confidence)

    def body_surface(self, relations):
        """
        Returns
        -------
        list of str
            Body atoms as surface forms.
        """
        return [atom_surface(relations, atom) for atom in self.__body]

    def identifier(self, relations):
        """Human readable identity used as plan provenance.

        Examples
        --------
        'bornIn <= bornIn ^ locatedIn'
        """
        return f"{relations.lookup(self.__head)} <= {' ^ '.join(self.body_surface(relations))}"

    def __eq__(self, other):
        return (
            isinstance(other, Rule) and
            self.key == other.key and
            self.confidence == other.confidence
        )

    def __hash__(self):
        return hash((self.key, self.confidence))

    def __repr__(self):
        return f"Rule(head={self.__head}, body={list(self.__body)}, confidence={self.__confidence})"


class RuleSet:
    """A collection of rules indexed by head relation.

    Parameters
    ----------
    rules : iterable of Rule
    relations : Vocabulary, optional
        Relation vocabulary the rules refer to; body surface forms then break ties.

    Raises
    ------
    KGRuleAttackException
        If two rules share the same head and body.
    """

    def __init__(self, rules=(), relations=None):
        self.__rules = []
        self.__by_head = collections.defaultdict(list)
        self.__keys = set()
        self.__relations = relations

        for rule in rules:
            if rule.key in self.__keys:
                raise KGRuleAttackException(f"Duplicate rule in rule set: {rule}")
            self.__keys.add(rule.key)
            self.__rules.append(rule)
            self.__by_head[rule.head].append(rule)

    @property
    def rules(self):
        """
        Returns
        -------
        tuple of Rule
        """
        return tuple(self.__rules)

    @property
    def relations(self):
        """
        Returns
        -------
        Vocabulary or None
        """
        return self.__relations

    def heads(self):
        """
        Returns
        -------
        list of int
            Head relations with at least one rule, sorted.
        """
        return sorted(self.__by_head)

    def for_head(self, head):
        """
        Returns
        -------
        tuple of Rule
            Rules with the given head, in insertion order.
        """
        return tuple(self.__by_head.get(head, ()))

    def body_sort_key(self, rule):
        """Lexicographic key of a rule body, by surface form when the vocabulary is known.
        """
        if self.__relations is not None:
            return tuple(rule.body_surface(self.__relations))
        return tuple((atom.relation, atom.inverted) for atom in rule.body)

    def fingerprint(self):
        """
        Returns
        -------
        str
            SHA-256 of the canonical (sorted) form of the rules and confidences.
        """
        digest = hashlib.sha256()
        lines = sorted(
            f"{rule.head}\t{self.body_sort_key(rule)}\t{rule.confidence!r}"
            for rule in self.__rules
        )
        for line in lines:
            digest.update(line.encode('utf-8'))
            digest.update(b'\n')
        return digest.hexdigest()

    def __contains__(self, rule):
        return rule.key in self.__keys

    def __len__(self):
        return len(self.__rules)

    def __iter__(self):
        return iter(self.__rules)

    def __repr__(self):
        return f"RuleSet(rules={len(self)}, heads={len(self.__by_head)})"


def select_rules(ruleset, per_head, direction=SELECT_HIGHEST):
    """Keeps the per_head most (or least) confident rules of every head.

    Ties are broken by lexicographic body so the selection is deterministic.

    Parameters
    ----------
    ruleset : RuleSet
    per_head : int
        Maximum number of rules kept per head relation, at least 1.
    direction : str
        'highest' or 'lowest' confidence first.

    Returns
    -------
    RuleSet
        Selected rules, grouped by head in head order, best first within a head.

    Raises
    ------
    ValueError
        If per_head < 1 or the direction is unknown.
    """
    if per_head < 1:
        raise ValueError(f"per_head ({per_head}) must be at least 1")
    if direction not in (SELECT_HIGHEST, SELECT_LOWEST):
        raise ValueError(f"direction ({direction}) must be '{SELECT_HIGHEST}' or '{SELECT_LOWEST}'")

    sign = -1.0 if direction == SELECT_HIGHEST else 1.0
    selected = []
    for head in ruleset.heads():
        ranked = sorted(
            ruleset.for_head(head),
            key=lambda rule: (sign * (rule.confidence or 0.0), ruleset.body_sort_key(rule))
        )
        selected.extend(ranked[:per_head])

    return RuleSet(selected, relations=ruleset.relations)
