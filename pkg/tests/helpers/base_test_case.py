import logging
import shutil
import unittest


class BaseTestCase(unittest.TestCase):
    def setUp(self):
        try:
            self.maxDiff = None
            shutil.rmtree("./kgra-working")
        except FileNotFoundError:
            pass

    def tearDown(self):
        # __main__.configure_logging installs a root handler per call
        root = logging.getLogger()
        for handler in list(root.handlers):
            if type(handler).__name__ == 'StdoutHandler':
                root.removeHandler(handler)

        try:
            shutil.rmtree("./kgra-working")
        except FileNotFoundError:
            pass
