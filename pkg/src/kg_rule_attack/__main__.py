"""
kg-rule-attack (kgra) entry point.

Exit Codes
----------
0
    step completed successfully
2
    invalid command line
101
    specified -c/--config must exist and not be empty
102
    specified -c/--config or command line overrides are invalid configuration
200
    step completed with unsuccessful results
300
    step failed completion because of an exception
"""

import argparse
import logging
import os.path
import sys
import traceback

import yaml

from kg_rule_attack.config.config import Config
from kg_rule_attack.step_implementer import DefaultSteps
from kg_rule_attack.step_runner import StepRunner

LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'

# (flag, argparse keyword arguments); each flag sets the configuration key of its name
CONFIG_FLAGS = (
    ('train', {'help': 'Training triple file, TAB separated'}),
    ('valid', {'help': 'Validation triple file'}),
    ('test', {'help': 'Test triple file'}),
    ('attacker', {'help': 'rules-delete, rules-add, random-delete, random-add, cos-delete, '
                          'cos-add or none'}),
    ('gammas', {'nargs': '+', 'type': float, 'help': 'Perturbation ratios in (0, 1)'}),
    ('pool', {'help': 'Influence pooling, mean or max'}),
    ('zero-padded-pooling', {'action': 'store_const', 'const': True,
                             'help': 'Mean pooling over every selected rule of the head'}),
    ('m', {'type': int, 'help': 'Most confident rules per head used for deletion'}),
    ('n', {'type': int, 'help': 'Least confident rules per head used for addition'}),
    ('rule-length', {'type': int, 'help': 'Longest mined rule body'}),
    ('rules-file', {'help': 'Externally mined rules, JSON lines'}),
    ('rewriting', {'help': 'Predicate rewriting, correlation or random'}),
    ('pseudo-target-fraction', {'type': float, 'help': 'Share of training triples the '
                                                       'cosine attacks target'}),
    ('models', {'nargs': '+', 'help': 'Model kinds: transe, distmult, complex'}),
    ('eval-setting', {'help': 'filtered or raw ranking'}),
    ('hits-at', {'nargs': '+', 'type': int, 'help': 'Hits@K cut offs'}),
    ('target-rank-threshold', {'type': int, 'help': 'Rank cut off of the highly ranked '
                                                    'test subset'}),
    ('seed', {'type': int, 'help': 'Seed of every random choice'}),
    ('workers', {'type': int, 'help': 'Threads; 1 keeps runs deterministic'}),
    ('out', {'help': 'Output directory'})
)


def print_error(msg):
    """
    Prints message to STDERR.

    Parameters
    ----------
    msg : string
        Message to print as an error.
    """
    print(msg, file=sys.stderr)


class ParseKeyValueArge(argparse.Action):  # pylint: disable=too-few-public-methods
    """Collects KEY=VALUE items into a dict, values parsed as YAML scalars or lists.
    """

    def __call__(self, parser, namespace, values, option_string=None):
        key_value_dict = dict(getattr(namespace, self.dest, None) or {})

        for item in values or []:
            if '=' not in item:
                parser.error(f"expected KEY=VALUE, got ({item})")
            key, value = item.split("=", 1)
            try:
                key_value_dict[key.strip()] = yaml.safe_load(value)
            except yaml.YAMLError as error:
                parser.error(f"can not parse value of ({key.strip()}): {error}")

        setattr(namespace, self.dest, key_value_dict)


class StdoutHandler(logging.StreamHandler):
    """Writes to whatever `sys.stdout` is when a record is emitted, so log lines follow
    the indented step output.
    """

    def emit(self, record):
        if self.stream is not sys.stdout:
            self.setStream(sys.stdout)
        super().emit(record)


def configure_logging(verbose=False):
    """Sends log records of every module to standard out.
    """
    handler = StdoutHandler(sys.stdout)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root = logging.getLogger()
    for existing in list(root.handlers):
        if isinstance(existing, StdoutHandler):
            root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.INFO)


def build_parser():
    """
    Returns
    -------
    argparse.ArgumentParser
        Parser with one sub command per step, every sub command taking every option.
    """
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument(
        '-c',
        '--config',
        nargs='+',
        help='Configuration files, or directories containing files, in yml or json'
    )
    options.add_argument(
        '--implementer',
        help='StepImplementer class to run instead of the default of the step'
    )
    options.add_argument(
        '--set',
        dest='overrides',
        metavar='KEY=VALUE',
        nargs='+',
        action=ParseKeyValueArge,
        help='Override any configuration key, dotted for nested keys '
             '(e.g. train-config.dim=50).'
    )
    options.add_argument(
        '-v',
        '--verbose',
        action='store_true',
        help='Log at debug level'
    )
    for flag, kwargs in CONFIG_FLAGS:
        options.add_argument(f"--{flag}", dest=flag.replace('-', '_'), **kwargs)

    parser = argparse.ArgumentParser(
        prog='kgra',
        description='Rule based adversarial attacks on knowledge graph embeddings (kgra)'
    )
    steps = parser.add_subparsers(dest='step', metavar='STEP')
    steps.required = True
    for step_name in DefaultSteps.ALL:
        steps.add_parser(step_name, parents=[options], help=f"Run the {step_name} step")
    return parser


def runtime_overrides(args):
    """
    Returns
    -------
    dict
        Dotted configuration keys set on the command line; `--set` wins over flags.
    """
    overrides = {}
    for flag, _ in CONFIG_FLAGS:
        value = getattr(args, flag.replace('-', '_'))
        if value is not None:
            overrides[flag] = value
    overrides.update(args.overrides or {})
    return overrides


def main(argv=None):
    """Main entry point for kg-rule-attack.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)

    # validate args
    for config_file in args.config or []:
        if not os.path.exists(config_file) or os.stat(config_file).st_size == 0:
            print_error('specified -c/--config must exist and not be empty')
            sys.exit(101)

    try:
        config = Config(args.config)
        config.set_overrides(runtime_overrides(args))
        config.experiment_config()
    except (ValueError, AssertionError) as error:
        print_error(f"specified -c/--config is invalid configuration: {error}")
        sys.exit(102)

    step_runner = StepRunner(config)

    try:
        if not step_runner.run_step(args.step, args.implementer):
            print_error(f"Step {args.step} not successful")
            sys.exit(200)

    except Exception as error:  # pylint: disable=broad-except
        print_error(f"Fatal error calling step ({args.step}): {str(error)}")
        track = traceback.format_exc()
        print(track)
        sys.exit(300)

    return 0


def init():
    """
    Notes
    -----
    See https://medium.com/opsops/how-to-test-if-name-main-1928367290cb
    """
    if __name__ == "__main__":
        sys.exit(main())


init()
