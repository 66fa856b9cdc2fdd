"""Benchmark harness

Builds indexes over generated corpora (uniform and skewed random strings, gadget families,
user files) at several sizes and records the space parameter d against sqrt(nq), build time,
resident size and query latency for both predecessor variants.
"""

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd

from ._core import IndexOptions, build_index
from .gadgets import (GadgetConcatSpec, GadgetFamily, PredecessorInstanceSpec, encode_gadget, render)
from .predecessor import PredecessorVariant
from .tokens import TokenMode, encode_query

logger = logging.getLogger(__name__)

REPORT_COLUMNS = [
    'corpus', 'variant', 'n', 'q', 'mu', 'd', 'sqrt_nq', 'd_ratio', 'build_seconds', 'resident_bytes',
    'co_median_us', 'co_p99_us', 'lmco_median_us', 'lmco_p99_us', 'error',
]
WORD_BYTES = 8
QUERY_SAMPLES = 1000


@dataclass(frozen=True)
class CorpusSpec:
    """
    Describes how to produce a corpus of a requested size.

    kind is one of random, skewed, concat, pred or file. Random corpora draw from ``alphabet``
    symbols (skewed ones with Zipf weights of exponent ``skew``) and query the first ``q``
    symbols. Gadget corpora pick their own parameters so that n stays close to the size asked
    for. File corpora ignore the size and use the bytes of ``path`` with query ``members``.
    """
    kind: str = 'random'
    alphabet: int = 4
    q: int = 3
    skew: float = 1.0
    path: str = None
    members: Tuple[str, ...] = ()

    @property
    def label(self) -> str:
        if self.kind in ('random', 'skewed'):
            return f'{self.kind}-a{self.alphabet}-q{self.q}'
        if self.kind == 'file':
            return f'file-{self.path}'
        return self.kind


def make_corpus(spec: CorpusSpec, n: int, rng: np.random.Generator) -> Tuple[Sequence[int], List[int]]:
    """
    Generates tokens and query ids for one corpus.

    :param spec: CorpusSpec
    :param n: Requested length.
    :param rng: numpy Generator, the only source of randomness.
    :return: (tokens, query ids)
    """
    if spec.kind == 'random':
        return rng.integers(0, spec.alphabet, size=n).tolist(), list(range(spec.q))
    if spec.kind == 'skewed':
        weights = 1.0 / np.arange(1, spec.alphabet + 1) ** spec.skew
        return rng.choice(spec.alphabet, size=n, p=weights / weights.sum()).tolist(), list(range(spec.q))
    if spec.kind == 'concat':
        u = max(3, math.isqrt(max(n, 1)))
        m = min(u - 1, 20)
        E = tuple(sorted(rng.choice(np.arange(2, u + 1), size=m, replace=False).tolist()))
        total = max(m, n // (2 * u))
        c = tuple((rng.multinomial(total - m, [1 / m] * m) + 1).tolist())
        tokens, query = render(GadgetFamily.CONCAT, GadgetConcatSpec(u=u, E=E, c=c))
        return encode_gadget(tokens, query)
    if spec.kind == 'pred':
        u = max(3, math.isqrt(max(n, 1) // 2))
        m = min(u - 1, 8)
        X = tuple(sorted(rng.choice(np.arange(2, u + 1), size=m, replace=False).tolist()))
        tokens, query = render(GadgetFamily.PREDECESSOR, PredecessorInstanceSpec(u=u, X=X))
        return encode_gadget(tokens, query)
    if spec.kind == 'file':
        with open(spec.path, 'rb') as f:
            data = f.read()
        return data, encode_query(spec.members, TokenMode.BYTE)
    raise ValueError(f'Unknown corpus kind {spec.kind!r}.')


def _latencies(fn, widths: np.ndarray) -> Tuple[float, float]:
    samples = np.empty(widths.size, dtype=np.float64)
    for i, w in enumerate(widths.tolist()):
        started = time.perf_counter_ns()
        fn(w)
        samples[i] = time.perf_counter_ns() - started
    return float(np.median(samples)) / 1000, float(np.percentile(samples, 99)) / 1000


def _empty_row(label: str, variant: PredecessorVariant, n: int = 0, q: int = 0) -> Dict:
    row = {column: 0 for column in REPORT_COLUMNS}
    row.update(corpus=label, variant=PredecessorVariant(variant).value, n=n, q=q, sqrt_nq=0.0, d_ratio=0.0, error='')
    return row


def measure(tokens: Sequence[int], query: Sequence[int], label: str, variant: PredecessorVariant,
            repetitions: int, seed: int) -> Dict:
    """
    Times builds and queries for one corpus and variant.

    One warmup build is discarded; the median of ``repetitions`` further builds is reported.
    """
    options = IndexOptions(variant=PredecessorVariant(variant), seed=seed)
    index = build_index(tokens, query, options)
    timings = list()
    for _ in range(max(repetitions, 1)):
        started = time.perf_counter()
        index = build_index(tokens, query, options)
        timings.append(time.perf_counter() - started)

    row = _empty_row(label, variant, index.n, index.q)
    if index.n == 0:
        return row

    widths = np.random.default_rng(seed).integers(1, index.n + 1, size=min(QUERY_SAMPLES, index.n))
    co_median, co_p99 = _latencies(index.co, widths)
    lmco_median, lmco_p99 = _latencies(index.lmco, widths)
    root = math.sqrt(index.n * index.q)
    row.update(
        mu=index.mu, d=index.d, sqrt_nq=root, d_ratio=index.d / root,
        build_seconds=float(np.median(timings)), resident_bytes=index.words() * WORD_BYTES,
        co_median_us=co_median, co_p99_us=co_p99, lmco_median_us=lmco_median, lmco_p99_us=lmco_p99,
    )
    return row


def _run_case(case: Tuple[CorpusSpec, int, Tuple[PredecessorVariant, ...], int, int]) -> List[Dict]:
    spec, n, variants, repetitions, seed = case
    rows = list()
    try:
        tokens, query = make_corpus(spec, n, np.random.default_rng(seed))
    except Exception as e:
        logger.error('corpus %s n=%d failed: %s', spec.label, n, e)
        return [dict(_empty_row(spec.label, variant, n), error=str(e)) for variant in variants]
    for variant in variants:
        try:
            rows.append(measure(tokens, query, spec.label, variant, repetitions, seed))
        except Exception as e:
            logger.error('bench %s n=%d %s failed: %s', spec.label, n, variant, e)
            rows.append(dict(_empty_row(spec.label, variant, len(tokens)), error=str(e)))
    return rows


@dataclass
class BenchReport:
    rows: pd.DataFrame
    summary: Dict = field(default_factory=dict)

    def to_jsonl(self) -> str:
        if self.rows.empty:
            return ''
        return self.rows.to_json(orient='records', lines=True)


def summarize(rows: pd.DataFrame) -> Dict:
    """
    Aggregates a report: the largest d / sqrt(nq), the build time ratio of every size doubling
    and the median bucketed / baseline co latency ratio.
    """
    summary = {'rows': int(len(rows)), 'failed_rows': 0, 'max_d_ratio': 0.0,
               'doubling_ratios': [], 'bucketed_over_baseline': None}
    if rows.empty:
        return summary
    ok = rows[rows['error'] == '']
    summary['failed_rows'] = int(len(rows) - len(ok))
    summary['max_d_ratio'] = float(ok['d_ratio'].max()) if not ok.empty else 0.0

    for (corpus, variant), group in ok.groupby(['corpus', 'variant']):
        timed = group.groupby('n')['build_seconds'].median()
        for n in timed.index:
            if 2 * n in timed.index and timed[n] > 0:
                summary['doubling_ratios'].append(
                    {'corpus': corpus, 'variant': variant, 'n': int(n), 'ratio': float(timed[2 * n] / timed[n])})

    latency = ok.groupby('variant')['co_median_us'].median()
    baseline = latency.get(PredecessorVariant.BASELINE.value)
    bucketed = latency.get(PredecessorVariant.BUCKETED.value)
    if baseline and bucketed is not None:
        summary['bucketed_over_baseline'] = float(bucketed / baseline)
    return summary


def run_suite(corpora: Sequence[CorpusSpec], sizes: Sequence[int], repetitions: int = 3, seed: int = 0,
              variants: Sequence[PredecessorVariant] = tuple(PredecessorVariant),
              parallel: bool = False) -> BenchReport:
    """
    Runs every corpus at every size.

    :param corpora: CorpusSpec list.
    :param sizes: Requested corpus lengths.
    :param repetitions: Timed builds per row, after one warmup build.
    :param seed: Base seed; row i uses seed + i, so reports are reproducible.
    :param variants: Predecessor variants to measure.
    :param parallel: Run rows in worker processes; timings are then not comparable.
    :return: BenchReport
    """
    variants = tuple(PredecessorVariant(variant) for variant in variants)
    cases = [(spec, int(n), variants, repetitions, seed + i)
             for i, (spec, n) in enumerate((spec, n) for spec in corpora for n in sizes)]

    if parallel:
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(_run_case, cases))
    else:
        results = [_run_case(case) for case in cases]

    rows = pd.DataFrame([row for result in results for row in result], columns=REPORT_COLUMNS)
    report = BenchReport(rows=rows, summary=summarize(rows))
    logger.info('bench finished: %s', {key: report.summary[key] for key in ('rows', 'failed_rows', 'max_d_ratio')})
    return report

