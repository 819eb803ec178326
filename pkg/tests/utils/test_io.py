# pylint: disable=missing-module-docstring
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring

import io

from kg_rule_attack.utils.io import TextIOIndenter

from tests.helpers.base_test_case import BaseTestCase


class TestTextIOIndenter(BaseTestCase):
    def test_indents_lines(self):
        parent = io.StringIO()
        indenter = TextIOIndenter(parent, indent_level=1)

        indenter.write('hello\nworld\n')

        self.assertEqual(parent.getvalue(), '    hello\n    world\n')

    def test_partial_lines(self):
        parent = io.StringIO()
        indenter = TextIOIndenter(parent, indent_level=2, indent_size=1, indent_char='-')

        indenter.write('Mining: ')
        indenter.write('done\nnext')
        indenter.write(' line\n')

        self.assertEqual(parent.getvalue(), '--Mining: done\n--next line\n')

    def test_bytes_and_flush(self):
        parent = io.StringIO()
        indenter = TextIOIndenter(parent, 1, indent_size=2)

        indenter.write(b'epoch 1\n')
        indenter.flush()

        self.assertEqual(parent.getvalue(), '  epoch 1\n')
        self.assertIs(indenter.parent_stream, parent)
        self.assertEqual(indenter.indent, '  ')
