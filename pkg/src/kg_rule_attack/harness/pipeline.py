"""The mine, attack, retrain and evaluate sweep.

Layout of the work directory:

    rules/rules.jsonl                      rules used by the attacks
    rules/confidence-clean.csv             confidence distribution of those rules
    rule-impact/<attacker>-<gamma>.csv     distribution re-mined on the perturbed graph
    plans/<attacker>-<gamma>.tsv           perturbation plans
    checkpoints/<model>-<run>.npz          clean and attacked models
    reports/<model>-<run>.json             evaluation reports
    similarity/<model>-<run>.csv           relation similarity matrices
    run-record.json                        the RunRecord
"""

import contextlib
import logging
import os
import time

from kg_rule_attack.exceptions import StageError, UnsupportedRuleError
from kg_rule_attack.harness.attackers import COSINE_ATTACKERS, RULE_ATTACKERS, AttackPlanner
from kg_rule_attack.kg.knowledge_graph import apply_plan, load_tsv
from kg_rule_attack.kg.perturbation import budget_for_ratio
from kg_rule_attack.kge.checkpoint import save_model
from kg_rule_attack.kge.evaluation import FilterIndex, evaluate, select_highly_ranked
from kg_rule_attack.kge.models import TRANSE
from kg_rule_attack.kge.similarity import save_relation_similarity
from kg_rule_attack.kge.training import train
from kg_rule_attack.results.run_record import RunCell, RunRecord
from kg_rule_attack.rules.grounding import Grounder
from kg_rule_attack.rules.miner import mine_rules
from kg_rule_attack.rules.rule import RuleSet
from kg_rule_attack.rules.rule_file import load_rules, save_rules
from kg_rule_attack.rules.statistics import confidence_distribution, save_confidence_distribution
from kg_rule_attack.utils.file import get_file_hash, write_json_file

logger = logging.getLogger(__name__)

RUN_CLEAN = 'clean'


def run_name(attacker, gamma):
    """
    Returns
    -------
    str
        File name stem of an attacked run, e.g. `rules-delete-0.1`.
    """
    return f"{attacker}-{gamma:g}"


def load_splits(cfg):
    """Loads the training graph and the evaluation splits over its vocabularies.

    Returns
    -------
    tuple of KnowledgeGraph
        train, valid (None when not configured), test.
    """
    cfg.require('train', 'test')
    train_kg = load_tsv(cfg.train)
    valid_kg = load_tsv(cfg.valid, like=train_kg) if cfg.valid else None
    test_kg = load_tsv(cfg.test, like=train_kg)
    return train_kg, valid_kg, test_kg


def dataset_fingerprints(cfg, train_kg):
    """
    Returns
    -------
    dict of str to str
        Vocabulary fingerprints and the SHA-256 of every configured split file.
    """
    fingerprints = {
        'entities': train_kg.entities.fingerprint(),
        'relations': train_kg.relations.fingerprint()
    }
    for key in ('train', 'valid', 'test'):
        path = getattr(cfg, key)
        if path:
            fingerprints[key] = get_file_hash(path)
    return fingerprints


def score_rules(kg, ruleset, max_frontier):
    """Fills in missing confidences, dropping rules without a grounding.

    Returns
    -------
    RuleSet
    """
    if all(rule.confidence is not None for rule in ruleset):
        return ruleset

    grounder = Grounder(kg, max_frontier)
    scored = []
    for rule in ruleset:
        if rule.confidence is not None:
            scored.append(rule)
            continue
        try:
            scored.append(rule.with_confidence(grounder.confidence(rule)))
        except UnsupportedRuleError:
            logger.warning("Dropping rule without grounding: %s", rule.identifier(kg.relations))
    return RuleSet(scored, relations=kg.relations)


def obtain_rules(cfg, kg):
    """The rule file when configured, mined rules otherwise.

    Returns
    -------
    RuleSet
        Rules with confidences.
    """
    miner_config = cfg.miner_config()
    if cfg.rules_file:
        return score_rules(kg, load_rules(cfg.rules_file, kg), miner_config.max_frontier)
    return mine_rules(kg, miner_config)


class Pipeline:  # pylint: disable=too-many-instance-attributes
    """One sweep over models and perturbation ratios for one attacker.

    Parameters
    ----------
    cfg : ExperimentConfig
    work_dir_path : str, optional
        Where artifacts go, `cfg.out` by default.
    """

    def __init__(self, cfg, work_dir_path=None):
        self.__cfg = cfg
        self.__work_dir_path = work_dir_path or cfg.out
        self.__timings = {}
        self.__artifacts = {}
        self.__clean = {}

    @property
    def artifacts(self):
        """
        Returns
        -------
        dict of str to dict
            Written files grouped by kind (`rules`, `plans`, `checkpoints`, `reports`,
            `similarity`, `rule-impact`, `run-record`).
        """
        return self.__artifacts

    @property
    def timings(self):
        """
        Returns
        -------
        dict of str to float
            Wall clock seconds per stage.
        """
        return dict(self.__timings)

    def __path(self, *parts):
        return os.path.join(self.__work_dir_path, *parts)

    def __record_artifact(self, kind, key, path):
        self.__artifacts.setdefault(kind, {})[key] = path
        return path

    @contextlib.contextmanager
    def __stage(self, name):
        start = time.perf_counter()
        logger.info("Stage (%s) started", name)
        try:
            yield
        except StageError:
            raise
        except Exception as error:
            logger.error("Stage (%s) failed: %s", name, error)
            raise StageError(name, str(error)) from error
        finally:
            self.__timings[name] = self.__timings.get(name, 0.0) + time.perf_counter() - start

    def clean_model(self, kind, kg, seed):
        """Trains the clean model of a kind once per seed.

        Returns
        -------
        EmbeddingModel
        """
        key = (kind, seed)
        if key not in self.__clean:
            with self.__stage(f"train {kind} {RUN_CLEAN}"):
                model = train(kg, kind, self.__cfg.train_config(seed=seed))
                self.__clean[key] = model
                self.__record_artifact(
                    'checkpoints', f"{kind}-{RUN_CLEAN}",
                    save_model(model, kg, self.__path('checkpoints', f"{kind}-{RUN_CLEAN}.npz"))
                )
        return self.__clean[key]

    def __evaluate(self, model, test, known, relations, name):
        cfg = self.__cfg
        report = evaluate(
            model, test, known, cfg.hits_at, cfg.eval_setting, relations, cfg.workers
        )
        self.__record_artifact(
            'reports', name,
            write_json_file(self.__path('reports', f"{name}.json"), report.to_dict())
        )
        return report

    def __export_similarity(self, model, kg, name):
        self.__record_artifact(
            'similarity', name,
            save_relation_similarity(model, kg.relations, self.__path('similarity', f"{name}.csv"))
        )

    def run(self):  # pylint: disable=too-many-locals,too-many-statements
        """Runs the sweep.

        Returns
        -------
        RunRecord

        Raises
        ------
        StageError
            Naming the stage that failed. Artifacts written before it are kept.
        """
        cfg = self.__cfg
        attacker = cfg.attacker
        record = RunRecord(cfg.as_dict(), cfg.seed)

        with self.__stage('load'):
            train_kg, valid_kg, test_kg = load_splits(cfg)
            known = FilterIndex.of(*(g for g in (train_kg, valid_kg, test_kg) if g is not None))
            test = test_kg.sorted_triples()
            record.fingerprints.update(dataset_fingerprints(cfg, train_kg))

        ruleset = None
        if attacker in RULE_ATTACKERS:
            with self.__stage('rules'):
                ruleset = obtain_rules(cfg, train_kg)
                record.fingerprints['rules'] = ruleset.fingerprint()
                self.__record_artifact('rules', 'rules', save_rules(
                    ruleset, train_kg.relations, self.__path('rules', 'rules.jsonl')
                ))
                self.__record_artifact('rules', 'confidence-clean', save_confidence_distribution(
                    confidence_distribution(ruleset, train_kg.relations),
                    self.__path('rules', 'confidence-clean.csv')
                ))

        surrogate = None
        if attacker in COSINE_ATTACKERS:
            surrogate = self.clean_model(TRANSE, train_kg, cfg.seed)

        planner = AttackPlanner(cfg, train_kg, ruleset, surrogate)
        if ruleset is not None:
            record.fingerprints['rules-top-m'] = planner.deletion_rules().fingerprint()
            record.fingerprints['rules-bottom-n'] = planner.addition_rules().fingerprint()

        perturbed = {}
        for gamma in cfg.gammas:
            name = run_name(attacker, gamma)
            with self.__stage(f"plan {name}"):
                plan = planner.plan(gamma)
                if plan is None:
                    perturbed[gamma] = (None, None)
                    continue
                plan_path = self.__path('plans', f"{name}.tsv")
                plan.save(train_kg, plan_path)
                self.__record_artifact('plans', name, plan_path)
                perturbed[gamma] = (plan, apply_plan(train_kg, plan))

            if attacker in RULE_ATTACKERS:
                with self.__stage(f"rule-impact {name}"):
                    remined = mine_rules(perturbed[gamma][1], cfg.miner_config())
                    self.__record_artifact('rule-impact', name, save_confidence_distribution(
                        confidence_distribution(remined, train_kg.relations),
                        self.__path('rule-impact', f"{name}.csv")
                    ))

        for kind in cfg.models:
            clean_model = self.clean_model(kind, train_kg, cfg.seed)
            clean_name = f"{kind}-{RUN_CLEAN}"
            with self.__stage(f"eval {clean_name}"):
                clean_targets_report = None
                clean_report = self.__evaluate(
                    clean_model, test, known, train_kg.relations, clean_name
                )
                targets = select_highly_ranked(
                    clean_model, test, known, cfg.target_rank_threshold, cfg.workers
                )
                if targets:
                    clean_targets_report = evaluate(
                        clean_model, targets, known, cfg.hits_at, cfg.eval_setting,
                        workers=cfg.workers
                    )
                else:
                    logger.warning(
                        "No test triple ranked within %d by the clean %s model",
                        cfg.target_rank_threshold, kind
                    )
                self.__export_similarity(clean_model, train_kg, clean_name)

            for gamma in cfg.gammas:
                plan, perturbed_kg = perturbed[gamma]
                name = f"{kind}-{run_name(attacker, gamma)}"
                train_cfg = cfg.train_config()

                if plan is None:
                    attacked_report = clean_report
                    attacked_targets_report = clean_targets_report if targets else None
                else:
                    with self.__stage(f"train {name}"):
                        attacked_model = train(perturbed_kg, kind, train_cfg)
                        self.__record_artifact('checkpoints', name, save_model(
                            attacked_model, perturbed_kg, self.__path('checkpoints', f"{name}.npz")
                        ))
                    with self.__stage(f"eval {name}"):
                        attacked_report = self.__evaluate(
                            attacked_model, test, known, train_kg.relations, name
                        )
                        attacked_targets_report = evaluate(
                            attacked_model, targets, known, cfg.hits_at, cfg.eval_setting,
                            workers=cfg.workers
                        ) if targets else None
                        self.__export_similarity(attacked_model, train_kg, name)

                highly_ranked = None
                if targets:
                    highly_ranked = {
                        'targets': len(targets),
                        'clean': clean_targets_report,
                        'attacked': attacked_targets_report
                    }
                record.add_cell(RunCell(
                    model=kind,
                    attacker=attacker,
                    gamma=gamma,
                    budget=budget_for_ratio(train_kg, gamma),
                    clean=clean_report,
                    attacked=attacked_report,
                    plan_size=len(plan) if plan is not None else 0,
                    plan_file=self.__artifacts.get('plans', {}).get(run_name(attacker, gamma)),
                    fill_count=plan.fill_count if plan is not None else 0,
                    provenance=plan.provenance_counts() if plan is not None else None,
                    train_mode=train_cfg.mode,
                    highly_ranked=highly_ranked,
                    train_size=len(train_kg)
                ))

        record.timings = self.timings
        self.__record_artifact(
            'run-record', 'run-record', record.save(self.__path('run-record.json'))
        )
        return record


def run_pipeline(cfg, work_dir_path=None):
    """Runs load, rules, clean training and evaluation, then plan, apply, retrain from a
    fresh initialization and evaluate for every ratio.

    Parameters
    ----------
    cfg : ExperimentConfig
    work_dir_path : str, optional
        Output directory, `cfg.out` by default.

    Returns
    -------
    RunRecord

    Raises
    ------
    StageError
        Naming the failed stage.
    """
    return Pipeline(cfg, work_dir_path).run()
