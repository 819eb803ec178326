from kg_rule_attack import StepImplementer, StepResult


class FailStepImplementer(StepImplementer):
    @staticmethod
    def step_implementer_config_defaults():
        return {}

    @staticmethod
    def _required_config_or_result_keys():
        return []

    def _run_step(self):
        step_result = StepResult.from_step_implementer(self)
        step_result.success = False
        step_result.message = 'planned failure'
        return step_result


class FooStepImplementer(StepImplementer):
    @staticmethod
    def step_implementer_config_defaults():
        return {'seed': 7}

    @staticmethod
    def _required_config_or_result_keys():
        return []

    def _run_step(self):
        step_result = StepResult.from_step_implementer(self)
        step_result.add_artifact(name='seed', value=self.get_value('seed'))
        print('foo ran')
        return step_result


class RequiredStepConfigStepImplementer(StepImplementer):
    @staticmethod
    def step_implementer_config_defaults():
        return {}

    @staticmethod
    def _required_config_or_result_keys():
        return [
            'train',
            'test'
        ]

    def _run_step(self):
        step_result = StepResult.from_step_implementer(self)
        for key in self._required_config_or_result_keys():
            step_result.add_artifact(name=key, value=self.get_value(key))
        return step_result


class NotAStepImplementer:  # pylint: disable=too-few-public-methods
    pass
