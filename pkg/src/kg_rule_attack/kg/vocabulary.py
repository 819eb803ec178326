"""Interning table between surface strings and dense integer ids.
"""

import hashlib

from kg_rule_attack.exceptions import VocabularyError


class Vocabulary:
    """Bijection between surface strings and ids contiguous from 0.

    Parameters
    ----------
    symbols : iterable of str, optional
        Symbols to intern, in order. Duplicates are interned once.
    kind : str, optional
        What the symbols are, used in error messages ('entity' or 'relation').

    Attributes
    ----------
    __ids : dict of str to int
    __symbols : list of str
    __frozen : bool
    """

    def __init__(self, symbols=None, kind='symbol'):
        self.__ids = {}
        self.__symbols = []
        self.__frozen = False
        self.__kind = kind

        for symbol in symbols or []:
            self.intern(symbol)

    @property
    def kind(self):
        """
        Returns
        -------
        str
            What the symbols of this vocabulary are.
        """
        return self.__kind

    @property
    def frozen(self):
        """
        Returns
        -------
        bool
            True once no more symbols may be interned.
        """
        return self.__frozen

    @property
    def symbols(self):
        """
        Returns
        -------
        tuple of str
            Symbols ordered by id.
        """
        return tuple(self.__symbols)

    def freeze(self):
        """Stops this vocabulary from accepting new symbols.

        Returns
        -------
        Vocabulary
            self
        """
        self.__frozen = True
        return self

    def intern(self, symbol):
        """Get the id of a symbol, assigning the next free id if it is new.

        Parameters
        ----------
        symbol : str
            Surface form.

        Returns
        -------
        int
            Id of the symbol.

        Raises
        ------
        VocabularyError
            If the symbol is new and this vocabulary is frozen.
        """
        symbol_id = self.__ids.get(symbol)
        if symbol_id is None:
            if self.__frozen:
                raise VocabularyError([symbol], f"Unknown {self.__kind}")
            symbol_id = len(self.__symbols)
            self.__ids[symbol] = symbol_id
            self.__symbols.append(symbol)
        return symbol_id

    def id_of(self, symbol):
        """Get the id of a known symbol.

        Raises
        ------
        VocabularyError
            If the symbol is unknown.
        """
        try:
            return self.__ids[symbol]
        except KeyError as error:
            raise VocabularyError([symbol], f"Unknown {self.__kind}") from error

    def lookup(self, symbol_id):
        """Get the surface form of an id.

        Raises
        ------
        VocabularyError
            If the id is out of range.
        """
        if not 0 <= symbol_id < len(self.__symbols):
            raise VocabularyError([str(symbol_id)], f"Unknown {self.__kind} id")
        return self.__symbols[symbol_id]

    def unknown(self, symbols):
        """
        Returns
        -------
        list of str
            The given symbols that are not part of this vocabulary, sorted.
        """
        return sorted({symbol for symbol in symbols if symbol not in self.__ids})

    def fingerprint(self):
        """
        Returns
        -------
        str
            SHA-256 hex digest of the ordered symbols.
        """
        digest = hashlib.sha256()
        for symbol in self.__symbols:
            digest.update(symbol.encode('utf-8'))
            digest.update(b'\n')
        return digest.hexdigest()

    def __contains__(self, symbol):
        return symbol in self.__ids

    def __len__(self):
        return len(self.__symbols)

    def __iter__(self):
        return iter(self.__symbols)

    def __eq__(self, other):
        return isinstance(other, Vocabulary) and self.__symbols == list(other.symbols)

    def __repr__(self):
        return f"Vocabulary(kind={self.__kind}, size={len(self)})"
