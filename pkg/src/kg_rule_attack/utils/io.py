"""Shared utilities for dealing with IO
"""

import io


class TextIOIndenter(io.TextIOBase):
    """Indents every line written to this stream before passing it on.

    The indent of a line is written with its first character, so a trailing new line
    leaves no dangling indent.

    Parameters
    ----------
    parent_stream : IOBase
        Stream to write to after indenting what is written to this stream
    indent_level : int, optional
        Level to indent to. Multiplied by the indent_size.
    indent_size : int, optional
        Size of each indent. Multiplied by the indent_level.
    indent_char : str, optional
        Character to use for indent.

    Examples
    --------
    >>> TextIOIndenter(sys.stdout, 1).write("hello\\nworld\\n")
        hello
        world
    """

    def __init__(self, parent_stream, indent_level=0, indent_size=4, indent_char=' '):
        self.__parent_stream = parent_stream
        self.__indent = indent_char * (indent_size * indent_level)
        self.__at_line_start = True
        super().__init__()

    @property
    def parent_stream(self):
        """
        Returns
        -------
        IOBase
            Stream this stream writes to after indenting.
        """
        return self.__parent_stream

    @property
    def indent(self):
        """
        Returns
        -------
        str
            The string prepended to every line.
        """
        return self.__indent

    def write(self, given):
        """Indents every line of the given text and writes it to the parent stream.

        Parameters
        ----------
        given : str or bytes (utf-8)
            Text to write.

        Returns
        -------
        int
            Number of characters written to the parent stream.
        """
        if isinstance(given, bytes):
            given = given.decode('utf-8')

        indented = []
        for line in given.splitlines(keepends=True):
            if self.__at_line_start:
                indented.append(self.__indent)
            indented.append(line)
            self.__at_line_start = line.endswith('\n')

        return self.parent_stream.write(''.join(indented))

    def flush(self):
        """Flush the parent stream.
        """
        self.parent_stream.flush()
