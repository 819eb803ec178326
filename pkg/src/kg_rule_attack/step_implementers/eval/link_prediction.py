"""`StepImplementer` for the `eval` step ranking test triples with the checkpoints of the
`train` step and recording clean against attacked metrics.

Step Configuration
------------------
Step configuration expected as input to this step.
Could come from:

  * static configuration
  * runtime configuration
  * previous step results

Configuration Key       | Required? | Default      | Description
------------------------|-----------|--------------|-----------
`train`                 | Yes       |              | Training triple file.
`valid`                 | No        |              | Validation triple file, filtered only.
`test`                  | Yes       |              | Test triple file.
`eval-setting`          | Yes       | `filtered`   | `filtered` or `raw` ranking.
`hits-at`               | Yes       | `[1, 3, 10]` | Hits@K cut offs.
`target-rank-threshold` | Yes       | `10`         | Rank cut off of the highly ranked subset.
`checkpoints`           | Yes       |              | From the `train` step.
`plans`                 | No        |              | From the `attack` step.

Result Artifacts
----------------
Results artifacts output by this step.

Result Artifact Key | Description
--------------------|------------
`reports`           | Evaluation report per model kind and run, JSON.
`similarity`        | Relation similarity matrix per model kind and run, CSV.
`run-record`        | The run record.
"""

import logging

from kg_rule_attack.config.experiment_config import ATTACKER_NONE
from kg_rule_attack.harness.pipeline import RUN_CLEAN, dataset_fingerprints, run_name
from kg_rule_attack.kg.perturbation import budget_for_ratio, load_plan
from kg_rule_attack.kge.checkpoint import load_model
from kg_rule_attack.kge.evaluation import FilterIndex, evaluate, select_highly_ranked
from kg_rule_attack.kge.similarity import save_relation_similarity
from kg_rule_attack.results.run_record import RunCell, RunRecord
from kg_rule_attack.results.step_result import StepResult
from kg_rule_attack.step_implementer import StepImplementer, gamma_key
from kg_rule_attack.utils.file import write_json_file

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = {
    'eval-setting': 'filtered',
    'hits-at': [1, 3, 10],
    'target-rank-threshold': 10
}

REQUIRED_CONFIG_OR_PREVIOUS_STEP_RESULT_ARTIFACT_KEYS = [
    'train',
    'test',
    'eval-setting',
    'hits-at',
    'target-rank-threshold',
    'checkpoints'
]


class LinkPrediction(StepImplementer):
    """`StepImplementer` for the `eval` step.
    """

    @staticmethod
    def step_implementer_config_defaults():
        """Getter for the StepImplementer's configuration defaults.

        Returns
        -------
        dict
            Default values to use for step configuration values.

        Notes
        -----
        These are the lowest precedence configuration values.
        """
        return DEFAULT_CONFIG

    @staticmethod
    def _required_config_or_result_keys():
        """Getter for step configuration or previous step result artifacts that are required before
        running this step.

        Returns
        -------
        array_list
            Array of configuration keys or previous step result artifacts
            that are required before running the step.
        """
        return REQUIRED_CONFIG_OR_PREVIOUS_STEP_RESULT_ARTIFACT_KEYS

    def __evaluate(self, cfg, model, triples, known, relations=None):
        return evaluate(
            model, triples, known, cfg.hits_at, cfg.eval_setting, relations, cfg.workers
        )

    def _run_step(self):  # pylint: disable=too-many-locals
        step_result = StepResult.from_step_implementer(self)

        attacker = self.get_result_value('trained-attacker') or ATTACKER_NONE
        checkpoints = self.get_value('checkpoints')
        plans = self.get_result_value('plans') or {}
        cfg = self.experiment_config(overrides={'attacker': attacker})
        train_kg, valid_kg, test_kg = self.load_graphs()
        known = FilterIndex.of(*(g for g in (train_kg, valid_kg, test_kg) if g is not None))
        test = test_kg.sorted_triples()
        train_mode = self.get_result_value('train-mode') or cfg.train_config().mode

        record = RunRecord(cfg.as_dict(), cfg.seed)
        record.fingerprints.update(dataset_fingerprints(cfg, train_kg))
        record.fingerprints.update(self.get_result_value('rule-fingerprints') or {})

        reports = {}
        similarity = {}
        for kind in cfg.models:
            runs = checkpoints.get(kind)
            assert runs and RUN_CLEAN in runs, \
                f"No clean checkpoint of model kind ({kind}), run the train step first"

            clean_model = load_model(runs[RUN_CLEAN], train_kg)
            clean_report = self.__evaluate(cfg, clean_model, test, known, train_kg.relations)
            reports.setdefault(kind, {})[RUN_CLEAN] = write_json_file(
                self.working_path('reports', f"{kind}-{RUN_CLEAN}.json"), clean_report.to_dict()
            )
            similarity.setdefault(kind, {})[RUN_CLEAN] = save_relation_similarity(
                clean_model, train_kg.relations,
                self.working_path('similarity', f"{kind}-{RUN_CLEAN}.csv")
            )
            print(f"{kind} {RUN_CLEAN}: {clean_report}")

            targets = select_highly_ranked(
                clean_model, test, known, cfg.target_rank_threshold, cfg.workers
            )
            clean_targets_report = None
            if targets:
                clean_targets_report = self.__evaluate(cfg, clean_model, targets, known)
            else:
                logger.warning(
                    "No test triple ranked within %d by the clean %s model",
                    cfg.target_rank_threshold, kind
                )

            for gamma in cfg.gammas:
                key = gamma_key(gamma)
                plan = None
                if attacker == ATTACKER_NONE:
                    attacked_report = clean_report
                    attacked_targets_report = clean_targets_report
                elif key in runs:
                    name = f"{kind}-{run_name(attacker, gamma)}"
                    attacked_model = load_model(runs[key], train_kg)
                    attacked_report = self.__evaluate(
                        cfg, attacked_model, test, known, train_kg.relations
                    )
                    reports[kind][key] = write_json_file(
                        self.working_path('reports', f"{name}.json"), attacked_report.to_dict()
                    )
                    similarity[kind][key] = save_relation_similarity(
                        attacked_model, train_kg.relations,
                        self.working_path('similarity', f"{name}.csv")
                    )
                    attacked_targets_report = self.__evaluate(
                        cfg, attacked_model, targets, known
                    ) if targets else None
                    if key in plans:
                        plan = load_plan(plans[key], train_kg, ratio=gamma)
                    print(f"{name}: {attacked_report}")
                else:
                    logger.warning("No %s checkpoint of %s at ratio %s", kind, attacker, key)
                    continue

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
                    plan_file=plans.get(key),
                    fill_count=plan.fill_count if plan is not None else 0,
                    provenance=plan.provenance_counts() if plan is not None else None,
                    train_mode=train_mode,
                    highly_ranked=highly_ranked,
                    train_size=len(train_kg)
                ))

        step_result.add_artifact(
            name='reports',
            value=reports,
            description='Evaluation reports by model kind and run.',
            is_file=True
        )
        step_result.add_artifact(
            name='similarity',
            value=similarity,
            description='Relation similarity matrices by model kind and run.',
            is_file=True
        )
        step_result.add_artifact(
            name='run-record',
            value=record.save(self.working_path('run-record.json')),
            description='Clean and attacked metrics of every model and ratio.',
            is_file=True
        )
        return step_result
