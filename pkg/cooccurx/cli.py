"""Command line front end

    cooccurx build --input corpus.txt --query "A B C" --index corpus.cooc
    cooccurx query --index corpus.cooc 4 8 10
    cooccurx table --index corpus.cooc --lmco --format jsonl
    cooccurx gen concat u=6 E=2,5 c=1,3 --output concat.txt
    cooccurx stats --index corpus.cooc
    cooccurx bench --sizes 10000,20000 --corpus random --corpus concat

Exit codes: 0 ok, 2 usage, 3 invalid query set, 4 I/O, 5 corrupt index.
"""

import argparse
import json
import logging
import math
import sys
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd
from sqlalchemy.exc import SQLAlchemyError

from ._core import CooccurrenceIndex, IndexOptions, build_index
from .bench import CorpusSpec, run_suite
from .config_parser import load_config
from .crud import ReportStore, ReportStoreError
from .errors import (CorpusEncodingError, CorpusMismatchError, GadgetSpecError, IndexFormatError, InvalidQueryError,
                     UsageError)
from .gadgets import (GadgetConcatSpec, GadgetFamily, PermutationSpec, PredecessorInstanceSpec, SetEncodingSpec,
                      encode_gadget, render, spec_record, verify_claims)
from .log import configure_logger
from .oracle import oracle_lmco
from .predecessor import PredecessorVariant
from .scanner import QueryProfile
from .tokens import TokenMode, Vocabulary, encode_corpus, encode_query, parse_query_file, parse_query_text

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVALID_QUERY = 3
EXIT_IO = 4
EXIT_CORRUPT_INDEX = 5

TABLE_NAME = 'cooccurrence_table'
BENCH_TABLE_NAME = 'bench_report'

logger = logging.getLogger('cooccurx')


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    input: Optional[str] = None
    query: Optional[str] = None
    query_file: Optional[str] = None
    mode: TokenMode = TokenMode.BYTE
    format: str = 'text'
    index: Optional[str] = None
    seed: int = 0
    variant: PredecessorVariant = PredecessorVariant.BUCKETED
    store: Optional[str] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace, defaults: Dict[str, str]) -> 'CliConfig':
        """Flags win over the config file, which wins over built-in defaults."""
        def pick(name):
            value = getattr(args, name, None)
            return value if value is not None else defaults[name]

        return cls(
            subcommand=args.subcommand,
            input=getattr(args, 'input', None),
            query=getattr(args, 'query', None),
            query_file=getattr(args, 'query_file', None),
            mode=TokenMode(pick('mode')),
            format=pick('format'),
            index=getattr(args, 'index', None),
            seed=int(pick('seed')),
            variant=PredecessorVariant(pick('variant')),
            store=getattr(args, 'store', None),
        )


def emit(df: pd.DataFrame, fmt: str) -> None:
    """Prints a frame as an aligned text table or as json-lines."""
    if fmt == 'jsonl':
        if not df.empty:
            sys.stdout.write(df.to_json(orient='records', lines=True).rstrip('\n') + '\n')
    else:
        print(df.to_string(index=False))


def read_corpus(config: CliConfig) -> Tuple[Sequence[int], Vocabulary]:
    if not config.input:
        raise UsageError('--input is required.')
    with open(config.input, 'rb') as f:
        data = f.read()
    vocab = Vocabulary()
    return encode_corpus(data, config.mode, vocab), vocab


def read_query(config: CliConfig, vocab: Vocabulary) -> QueryProfile:
    if config.query_file:
        with open(config.query_file, encoding='utf-8') as f:
            members = parse_query_file(f.read())
    elif config.query is not None:
        members = parse_query_text(config.query)
    else:
        raise UsageError('--query or --query-file is required.')
    return QueryProfile.from_ids(encode_query(members, config.mode, vocab))


def load_or_build(config: CliConfig) -> CooccurrenceIndex:
    """Loads --index when given, otherwise builds in memory from --input and the query."""
    if config.index:
        index = CooccurrenceIndex.load(config.index, variant=config.variant)
        if config.input:
            tokens, _ = read_corpus(config)
            index.verify_corpus(tokens)
        return index
    tokens, vocab = read_corpus(config)
    return build_index(tokens, read_query(config, vocab), IndexOptions(variant=config.variant, seed=config.seed))


def stats_frame(index: CooccurrenceIndex, build_seconds: float = None) -> pd.DataFrame:
    root = math.sqrt(index.n * index.q)
    record = {
        'n': index.n, 'q': index.q, 'mu': index.mu, 'd': index.d,
        'sqrt_nq': round(root, 3), 'd_ratio': round(index.d / root, 4) if root else 0.0,
        'words': index.words(),
    }
    if build_seconds is not None:
        record['build_seconds'] = round(build_seconds, 6)
    return pd.DataFrame([record])


def cmd_build(config: CliConfig) -> int:
    """Builds an index from --input and the query set and writes it to --index."""
    if not config.index:
        raise UsageError('--index is required for build.')
    tokens, vocab = read_corpus(config)
    query = read_query(config, vocab)
    started = time.perf_counter()
    index = build_index(tokens, query, IndexOptions(variant=config.variant, seed=config.seed))
    elapsed = time.perf_counter() - started
    index.save(config.index)
    logger.info('wrote %s (%d bytes)', config.index, len(index.serialize()))
    emit(stats_frame(index, elapsed), config.format)
    return EXIT_OK


def cmd_query(config: CliConfig, widths: Sequence[int]) -> int:
    index = load_or_build(config)
    records = [{'w': w, 'co': index.co(w), 'lmco': index.lmco(w)} for w in widths]
    emit(pd.DataFrame(records, columns=['w', 'co', 'lmco']), config.format)
    return EXIT_OK


def cmd_table(config: CliConfig, include_lmco: bool = False, use_oracle: bool = False) -> int:
    """Dumps co(1..n), and optionally lmco(1..n), in one sweep."""
    if use_oracle:
        tokens, vocab = read_corpus(config)
        result = oracle_lmco(tokens, read_query(config, vocab))
        n = len(tokens)
        df = pd.DataFrame({'w': range(1, n + 1), 'co': result.co_table[1:]})
        if include_lmco:
            df['lmco'] = result.lmco_table[1:]
    else:
        index = load_or_build(config)
        df = pd.DataFrame({'w': range(1, index.n + 1), 'co': index.full_table()})
        if include_lmco:
            df['lmco'] = index.lmco_table()

    if config.store:
        store = ReportStore(config.store)
        store.dataframe_to_table(df, TABLE_NAME, method='reload')
        store.disconnect()
    emit(df, config.format)
    return EXIT_OK


def parse_params(params: Sequence[str]) -> Dict[str, str]:
    """Turns ``['u=6', 'E=2,5']`` into ``{'u': '6', 'E': '2,5'}``."""
    parsed = dict()
    for param in params:
        key, sep, value = param.partition('=')
        if not sep or not key:
            raise UsageError(f'Gadget parameter {param!r} is not of the form key=value.')
        parsed[key] = value
    return parsed


def _ints(text: str) -> Tuple[int, ...]:
    return tuple(int(part) for part in text.split(',') if part.strip())


def make_gadget_spec(family: GadgetFamily, params: Dict[str, str]):
    try:
        if family is GadgetFamily.CONCAT:
            return GadgetConcatSpec(u=int(params['u']), E=_ints(params.get('E', '')), c=_ints(params.get('c', '')))
        if family is GadgetFamily.PERMUTATION:
            return PermutationSpec(u=int(params['u']), p=_ints(params.get('p', '')))
        if family is GadgetFamily.PREDECESSOR:
            return PredecessorInstanceSpec(u=int(params['u']), X=_ints(params.get('X', '')))
        alpha = params.get('alpha', params.get('α'))
        return SetEncodingSpec(k=int(params['k']), alpha=int(alpha), T=_ints(params.get('T', '')))
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f'Bad parameters for {family.value}: {e}') from e


def cmd_gen(config: CliConfig, family: str, params: Dict[str, str], output: str, verify: bool = False) -> int:
    """Writes a rendered gadget instance as a token file plus a JSON sidecar describing its spec."""
    family = GadgetFamily(family)
    spec = make_gadget_spec(family, params)
    tokens, query = render(family, spec)

    with open(output, 'w', encoding='utf-8') as f:
        f.write(' '.join(tokens) + '\n')
    sidecar = dict(spec_record(family, spec), query=list(query), n=len(tokens))
    with open(output + '.json', 'w', encoding='utf-8') as f:
        json.dump(sidecar, f, indent=2)
    logger.info('wrote %s (n=%d) and %s.json', output, len(tokens), output)

    if verify:
        ids, query_ids = encode_gadget(tokens, query)
        index = build_index(ids, query_ids, IndexOptions(variant=config.variant, seed=config.seed))
        emit(verify_claims(family, spec, index).to_frame(), config.format)
    else:
        emit(pd.DataFrame([{'family': family.value, 'n': len(tokens), 'path': output}]), config.format)
    return EXIT_OK


def cmd_stats(config: CliConfig) -> int:
    index = load_or_build(config)
    emit(stats_frame(index), config.format)
    return EXIT_OK


def cmd_bench(config: CliConfig, args: argparse.Namespace) -> int:
    corpora = [CorpusSpec(kind=kind, alphabet=args.alphabet, q=args.q, skew=args.skew) for kind in args.corpus or ['random']]
    for path in args.file or []:
        members = tuple(parse_query_text(config.query or ''))
        corpora.append(CorpusSpec(kind='file', path=path, members=members))

    variants = [PredecessorVariant(variant) for variant in args.variants.split(',')]
    report = run_suite(corpora, _ints(args.sizes), repetitions=args.reps, seed=config.seed,
                       variants=variants, parallel=args.parallel)
    if args.output:
        with open(args.output, 'w', encoding='utf-8') as f:
            f.write(report.to_jsonl())
    if config.store:
        store = ReportStore(config.store)
        store.dataframe_to_table(report.rows, BENCH_TABLE_NAME, method='append')
        store.disconnect()

    emit(report.rows, config.format)
    if config.format == 'text':
        print(f"max d/sqrt(nq): {report.summary['max_d_ratio']:.4f}")
    logger.info('bench summary: %s', report.summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--input', help='corpus file (raw bytes in byte mode, whitespace tokens in token mode)')
    common.add_argument('--query', help='inline query set, members separated by whitespace')
    common.add_argument('--query-file', dest='query_file', help='query set file, one member per line')
    common.add_argument('--mode', choices=[mode.value for mode in TokenMode])
    common.add_argument('--index', help='serialized index path')
    common.add_argument('--format', choices=['text', 'jsonl'])
    common.add_argument('--seed', type=int,
                        help='seed for generated bench corpora; recorded on in-memory indexes, not saved in index files')
    common.add_argument('--variant', choices=[variant.value for variant in PredecessorVariant])
    common.add_argument('--store', help='SQLAlchemy URL receiving table or bench rows')
    common.add_argument('--config', help='INI file with [cooccurx] defaults')
    common.add_argument('--log-file', dest='log_file')
    common.add_argument('--log-level', dest='log_level')

    parser = argparse.ArgumentParser(prog='cooccurx', description='Compact co-occurrence index over a string.')
    sub = parser.add_subparsers(dest='subcommand', required=True)

    sub.add_parser('build', parents=[common], help='build and save an index')

    query = sub.add_parser('query', parents=[common], help='co and lmco for window lengths')
    query.add_argument('widths', nargs='+', type=int, metavar='w')

    table = sub.add_parser('table', parents=[common], help='co(1..n) table')
    table.add_argument('--lmco', action='store_true', help='add the lmco column')
    table.add_argument('--oracle', action='store_true', help=argparse.SUPPRESS)

    gen = sub.add_parser('gen', parents=[common], help='render a gadget instance')
    gen.add_argument('family', choices=[family.value for family in GadgetFamily])
    gen.add_argument('params', nargs='*', metavar='key=value')
    gen.add_argument('--output', required=True)
    gen.add_argument('--verify', action='store_true', help='build the instance and check its claims')

    sub.add_parser('stats', parents=[common], help='n, q, mu, d and size of an index')

    bench = sub.add_parser('bench', parents=[common], help='run the benchmark suite')
    bench.add_argument('--sizes', default='10000,20000,40000')
    bench.add_argument('--reps', type=int, default=3)
    bench.add_argument('--corpus', action='append', choices=['random', 'skewed', 'concat', 'pred'])
    bench.add_argument('--file', action='append', help='user corpus (byte mode, query from --query)')
    bench.add_argument('--alphabet', type=int, default=4)
    bench.add_argument('--q', type=int, default=3)
    bench.add_argument('--skew', type=float, default=1.0)
    bench.add_argument('--variants', default='baseline,bucketed')
    bench.add_argument('--output', help='json-lines report path')
    bench.add_argument('--parallel', action='store_true', help='worker processes; for correctness sweeps only')
    return parser


def dispatch(config: CliConfig, args: argparse.Namespace) -> int:
    if config.subcommand == 'build':
        return cmd_build(config)
    if config.subcommand == 'query':
        return cmd_query(config, args.widths)
    if config.subcommand == 'table':
        return cmd_table(config, include_lmco=args.lmco, use_oracle=args.oracle)
    if config.subcommand == 'gen':
        return cmd_gen(config, args.family, parse_params(args.params), args.output, verify=args.verify)
    if config.subcommand == 'stats':
        return cmd_stats(config)
    return cmd_bench(config, args)


def main(argv: List[str] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        defaults = load_config(args.config)
    except OSError as e:
        configure_logger('cooccurx').error('cannot read config: %s', e)
        return EXIT_IO
    configure_logger('cooccurx', log_file=args.log_file, level=args.log_level or defaults['log_level'] or None)

    try:
        config = CliConfig.from_args(args, defaults)
        return dispatch(config, args)
    except InvalidQueryError as e:
        logger.error('invalid query set: %s', e)
        return EXIT_INVALID_QUERY
    except (IndexFormatError, CorpusMismatchError) as e:
        logger.error('corrupt index: %s', e)
        return EXIT_CORRUPT_INDEX
    except (OSError, SQLAlchemyError) as e:
        logger.error('I/O failure: %s', e)
        return EXIT_IO
    except CorpusEncodingError as e:
        logger.error('unreadable corpus: %s', e)
        return EXIT_IO
    except (UsageError, GadgetSpecError, ReportStoreError, ValueError) as e:
        logger.error('%s', e)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
