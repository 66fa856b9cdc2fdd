"""Token streams

Turns raw corpora into sequences of dense integer token ids. Two modes are supported:
byte mode, where every byte of the input is a token, and token mode, where whitespace
separated words are interned into a vocabulary.
"""

from enum import Enum
from typing import Iterable, List, Optional, Sequence

from .errors import CorpusEncodingError, InvalidQueryError


class TokenMode(str, Enum):
    BYTE = 'byte'
    TOKEN = 'token'


class Vocabulary:
    """
    Interns string tokens to dense integer ids, in order of first appearance.

    Attributes:
    tokens (list): id -> token.

    Methods:
    intern(token): returns the id of a token, assigning a new one if needed.
    lookup(token): returns the id of a token or None.
    encode(tokens): interns every token of an iterable.
    decode(ids): maps ids back to tokens.
    """

    def __init__(self) -> None:
        self._ids = dict()
        self.tokens: List[str] = list()

    def __len__(self) -> int:
        return len(self.tokens)

    def intern(self, token: str) -> int:
        token_id = self._ids.get(token)
        if token_id is None:
            token_id = len(self.tokens)
            self._ids[token] = token_id
            self.tokens.append(token)
        return token_id

    def lookup(self, token: str) -> Optional[int]:
        return self._ids.get(token)

    def encode(self, tokens: Iterable[str]) -> List[int]:
        return [self.intern(token) for token in tokens]

    def decode(self, ids: Iterable[int]) -> List[str]:
        return [self.tokens[token_id] for token_id in ids]


def encode_corpus(data: bytes, mode: TokenMode, vocab: Vocabulary = None) -> Sequence[int]:
    """
    Encodes raw corpus bytes as a token id sequence.

    :param data: Corpus contents.
    :param mode: byte or token mode.
    :param vocab: Vocabulary to intern into (token mode); a new one is used when omitted.
    :raises CorpusEncodingError: when a token-mode corpus is not valid UTF-8.
    :return: bytes in byte mode (iterating bytes yields ints), list of ids in token mode.
    """
    if TokenMode(mode) is TokenMode.BYTE:
        return bytes(data)
    vocab = vocab if vocab is not None else Vocabulary()
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError as e:
        raise CorpusEncodingError(f'Corpus is not valid UTF-8 at byte {e.start}.') from e
    return vocab.encode(text.split())


def encode_query(tokens: Iterable[str], mode: TokenMode, vocab: Vocabulary = None) -> List[int]:
    """
    Encodes query members given as strings.

    In byte mode each member must encode to exactly one byte. In token mode members are
    interned into ``vocab`` after the corpus so that corpus ids do not depend on the query.

    :param tokens: Query members as strings.
    :param mode: byte or token mode.
    :param vocab: Vocabulary shared with the corpus (token mode).
    :return: list of token ids, duplicates preserved.
    """
    if TokenMode(mode) is TokenMode.BYTE:
        ids = list()
        for token in tokens:
            raw = token.encode('utf-8')
            if len(raw) != 1:
                raise InvalidQueryError(f'Query member {token!r} is not a single byte.')
            ids.append(raw[0])
        return ids
    vocab = vocab if vocab is not None else Vocabulary()
    return vocab.encode(tokens)


def parse_query_text(text: str) -> List[str]:
    """Splits an inline query spec such as ``"A B C"`` into members."""
    return text.split()


def parse_query_file(text: str) -> List[str]:
    """Reads a query file: one member per line, blank lines skipped, order kept, duplicates dropped."""
    members = list()
    for line in text.splitlines():
        token = line.strip()
        if token and token not in members:
            members.append(token)
    return members
