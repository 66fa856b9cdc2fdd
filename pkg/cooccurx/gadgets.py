"""Adversarial instance generators

Renders the increment gadget and the instance families built from it (gadget concatenations,
the count-sequence instance, the predecessor instance) together with the set-encoding
blocks, and checks the delta properties each construction guarantees on a built index.

Gadgets are rendered as lists of string tokens; ``encode_gadget`` interns them to ids.
"""

import logging
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Dict, List, Sequence, Tuple

import pandas as pd

from .errors import GadgetSpecError
from .tokens import Vocabulary

logger = logging.getLogger(__name__)

FILLER = '$'
INCREMENT_QUERY = ('A', 'B')


class GadgetFamily(str, Enum):
    CONCAT = 'concat'
    PERMUTATION = 'perm'
    PREDECESSOR = 'pred'
    SET_ENCODING = 'set'


@dataclass(frozen=True)
class IncrementGadgetSpec:
    u: int
    i: int

    def validate(self) -> None:
        if not 2 <= self.i <= self.u:
            raise GadgetSpecError(f'Gadget parameter i={self.i} must lie in [2, u={self.u}].')


@dataclass(frozen=True)
class GadgetConcatSpec:
    """c[i] copies of G_{E[i]}, in increasing order of E."""
    u: int
    E: Tuple[int, ...]
    c: Tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.E)

    @property
    def C(self) -> int:
        return sum(self.c)

    def validate(self) -> None:
        if len(self.E) != len(self.c):
            raise GadgetSpecError(f'E has {len(self.E)} values but c has {len(self.c)} counts.')
        if any(b <= a for a, b in zip(self.E, self.E[1:])):
            raise GadgetSpecError('E must be sorted and distinct.')
        if self.E and (self.E[0] < 2 or self.E[-1] > self.u):
            raise GadgetSpecError(f'E must lie in [2, {self.u}].')
        if any(count <= 0 for count in self.c):
            raise GadgetSpecError('Counts must be positive.')


@dataclass(frozen=True)
class PermutationSpec:
    """p_i copies of G_i for i = 2..m, the count sequence given as p = (p_2, ..., p_m)."""
    u: int
    p: Tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.p) + 1

    def validate(self) -> None:
        if self.m > self.u:
            raise GadgetSpecError(f'Sequence needs gadgets up to G_{self.m} but u={self.u}.')
        if any(not 2 <= value <= self.u for value in self.p):
            raise GadgetSpecError(f'Sequence values must lie in [2, {self.u}].')

    def to_concat(self) -> GadgetConcatSpec:
        return GadgetConcatSpec(u=self.u, E=tuple(range(2, self.m + 1)), c=tuple(self.p))


@dataclass(frozen=True)
class PredecessorInstanceSpec:
    u: int
    X: Tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.X)

    def validate(self) -> None:
        if any(b <= a for a, b in zip(self.X, self.X[1:])):
            raise GadgetSpecError('X must be sorted and distinct.')
        if self.X and (self.X[0] < 2 or self.X[-1] > self.u):
            raise GadgetSpecError(f'X must lie in [2, {self.u}].')

    def to_concat(self) -> GadgetConcatSpec:
        counts = [x - previous for previous, x in zip((0,) + tuple(self.X), self.X)]
        return GadgetConcatSpec(u=self.u, E=tuple(self.X), c=tuple(counts))

    def predecessor(self, x: int) -> int:
        """Largest element of X not above x, 0 when there is none."""
        below = [value for value in self.X if value <= x]
        return below[-1] if below else 0


@dataclass(frozen=True)
class SetEncodingSpec:
    k: int
    alpha: int
    T: Tuple[int, ...]

    @property
    def query(self) -> Tuple[str, ...]:
        return tuple(f'C{i}' for i in range(1, self.k + 1))

    def validate(self) -> None:
        if self.k < 3:
            raise GadgetSpecError(f'Set encoding needs k >= 3, got k={self.k}.')
        if self.alpha < self.k:
            raise GadgetSpecError(f'alpha={self.alpha} must be at least k={self.k}.')
        if len(set(self.T)) != len(self.T):
            raise GadgetSpecError('T must not contain duplicates.')
        for value in self.T:
            if value % 2:
                raise GadgetSpecError(f'T may only hold even integers, got {value}.')
            if not self.k + 1 <= value <= self.k * self.alpha:
                raise GadgetSpecError(f'{value} lies outside [{self.k + 1}, {self.k * self.alpha}].')

    def padding(self) -> List[int]:
        """Smallest even integers above k*alpha that bring |T| to a multiple of k - 1."""
        needed = -len(self.T) % (self.k - 1)
        start = self.k * self.alpha + 1
        start += start % 2
        return list(range(start, start + 2 * needed, 2))

    def blocks(self) -> List[List[int]]:
        values = sorted(self.T) + self.padding()
        size = self.k - 1
        return [values[i:i + size] for i in range(0, len(values), size)]

    def even_universe(self) -> List[int]:
        first = self.k + 1 + (self.k + 1) % 2
        return list(range(first, self.k * self.alpha + 1, 2))


def render_increment(spec: IncrementGadgetSpec) -> List[str]:
    """
    Renders G_i: A, i - 2 fillers, B, then u fillers.

    :param spec: IncrementGadgetSpec with 2 <= i <= u.
    :return: list of tokens of length i + u.
    """
    spec.validate()
    return ['A'] + [FILLER] * (spec.i - 2) + ['B'] + [FILLER] * spec.u


def render_concat(spec: GadgetConcatSpec) -> List[str]:
    """Concatenates c_i copies of G_{e_i} in order of E."""
    spec.validate()
    tokens = list()
    for e, count in zip(spec.E, spec.c):
        gadget = render_increment(IncrementGadgetSpec(u=spec.u, i=e))
        for _ in range(count):
            tokens.extend(gadget)
    return tokens


def render_permutation(spec: PermutationSpec) -> List[str]:
    spec.validate()
    return render_concat(spec.to_concat())


def render_predecessor_instance(spec: PredecessorInstanceSpec) -> List[str]:
    """x_1 copies of G_{x_1}, then x_i - x_{i-1} copies of G_{x_i}."""
    spec.validate()
    return render_concat(spec.to_concat())


def render_set_block(spec: SetEncodingSpec, block: Sequence[int]) -> List[str]:
    """
    Renders one block R_j.

    The block opens with C_1 ... C_k and places a second C_i at position i + e_i. Blocks holding
    only elements of T are 3*k*alpha long; blocks holding padding are stretched so that at
    least k*alpha fillers still follow the last query token.
    """
    k, alpha = spec.k, spec.alpha
    last = (k - 1) + block[-1]
    length = max(3 * k * alpha, last + k * alpha)
    tokens = [FILLER] * length
    for i in range(1, k + 1):
        tokens[i - 1] = f'C{i}'
    for i, e in enumerate(block, start=1):
        tokens[i + e - 1] = f'C{i}'
    return tokens


def render_set_encoding(spec: SetEncodingSpec) -> List[str]:
    """Pads T, partitions it into ascending blocks of k - 1 values and concatenates the blocks."""
    spec.validate()
    tokens = list()
    for block in spec.blocks():
        tokens.extend(render_set_block(spec, block))
    return tokens


def render(family: GadgetFamily, spec) -> Tuple[List[str], Tuple[str, ...]]:
    """Renders any family; returns the tokens and the query members."""
    family = GadgetFamily(family)
    if family is GadgetFamily.SET_ENCODING:
        return render_set_encoding(spec), spec.query
    renderer = {
        GadgetFamily.CONCAT: render_concat,
        GadgetFamily.PERMUTATION: render_permutation,
        GadgetFamily.PREDECESSOR: render_predecessor_instance,
    }[family]
    return renderer(spec), INCREMENT_QUERY


def encode_gadget(tokens: Sequence[str], query: Sequence[str]) -> Tuple[List[int], List[int]]:
    """Interns gadget tokens (and the query members) into ids."""
    vocab = Vocabulary()
    ids = vocab.encode(tokens)
    return ids, vocab.encode(query)


def spec_record(family: GadgetFamily, spec) -> Dict:
    """Plain dict describing a spec, for sidecar files."""
    record = {'family': GadgetFamily(family).value}
    record.update({key: list(value) if isinstance(value, tuple) else value for key, value in asdict(spec).items()})
    return record


@dataclass
class ClaimCheck:
    name: str
    passed: bool
    detail: str = ''


@dataclass
class ClaimReport:
    family: GadgetFamily
    checks: List[ClaimCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, name: str, passed: bool, detail: str = '') -> None:
        self.checks.append(ClaimCheck(name, bool(passed), detail))

    def failures(self) -> List[ClaimCheck]:
        return [check for check in self.checks if not check.passed]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(check) for check in self.checks], columns=['name', 'passed', 'detail'])


def _check_concat(report: ClaimReport, spec: GadgetConcatSpec, index) -> None:
    counts = dict(zip(spec.E, spec.c))
    wrong = [(e, index.enc.delta_at(e), counts.get(e, 0)) for e in range(2, spec.u + 1)
             if index.enc.delta_at(e) != counts.get(e, 0)]
    report.add('delta', not wrong, '' if not wrong else f'(e, delta, expected): {wrong[:5]}')
    report.add('m <= d <= 8m', spec.m <= index.d <= 8 * spec.m, f'm={spec.m} d={index.d}')


def verify_claims(family: GadgetFamily, spec, index) -> ClaimReport:
    """
    Checks the stated properties of a rendered instance against its built index.

    :param family: Gadget family.
    :param spec: Spec the instance was rendered from.
    :param index: CooccurrenceIndex built from the rendered tokens and the family's query.
    :return: ClaimReport; failures are report entries, nothing is raised.
    """
    family = GadgetFamily(family)
    report = ClaimReport(family)

    if family in (GadgetFamily.CONCAT, GadgetFamily.PERMUTATION):
        concat = spec.to_concat() if family is GadgetFamily.PERMUTATION else spec
        _check_concat(report, concat, index)
        report.add('n <= 2uC', index.n <= 2 * concat.u * concat.C, f'n={index.n} 2uC={2 * concat.u * concat.C}')

    elif family is GadgetFamily.PREDECESSOR:
        _check_concat(report, spec.to_concat(), index)
        report.add('n <= 2u^2', index.n <= 2 * spec.u ** 2, f'n={index.n} 2u^2={2 * spec.u ** 2}')
        wrong = [(x, index.lmco(x), spec.predecessor(x)) for x in range(2, min(spec.u, index.n) + 1)
                 if index.lmco(x) != spec.predecessor(x)]
        report.add('lmco(x) = pred_X(x)', not wrong, '' if not wrong else f'(x, lmco, pred): {wrong[:5]}')

    elif family is GadgetFamily.SET_ENCODING:
        members = set(spec.T)
        wrong = [i for i in spec.even_universe() if (index.enc.delta_at(i) == 1) != (i in members)]
        report.add('delta(i) = 1 <=> i in T', not wrong, '' if not wrong else f'mismatched lengths: {wrong[:5]}')
        blocks = len(spec.blocks())
        bound = blocks * (3 * spec.k * spec.alpha + spec.k)
        report.add('n = O(k alpha^2)', index.n <= bound, f'n={index.n} blocks={blocks}')

    for check in report.failures():
        logger.warning('%s claim failed: %s %s', family.value, check.name, check.detail)
    return report
