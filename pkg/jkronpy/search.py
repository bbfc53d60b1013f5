"""
Seeded randomized search for pairs that violate the interlacing properties.

Trial ``i`` of a search with seed ``s`` draws everything from
``SeedSequence([s, i])``, so trials are independent of one another and of the
order they run in. Records are merged by trial index before they are written.
"""
import logging
import time
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from jkronpy import EIGEN_TOL, INTERLACE_TOL, WORKERS
from jkronpy.__version__ import __version__
from jkronpy.constructions import (POSITIVE_DEFINITE, RANK_K, SKEW, SYMMETRIC, GeneratorSpec, check_contract,
                                   generate)
from jkronpy.errors import BadConfig
from jkronpy.exports import JSONLWriter
from jkronpy.interlacing import PROPERTIES, default_tol, interlace_report
from jkronpy.spectra import ODD, spectrum_split

SCHEMA_VERSION = 1
REVERIFY_FACTOR = 10.0


_SearchConfig = namedtuple('SearchConfig', [
    'n_range', 'rank_range', 'symmetry', 'trials', 'seed', 'properties', 'tol', 'conjecture_mode', 'workers'])
_SearchConfig.__new__.__defaults__ = (SYMMETRIC, 100, 0, PROPERTIES, None, False, None)


class SearchConfig(_SearchConfig):  # Wrapping for documentation
    """
    :param tuple n_range: Inclusive ``(low, high)`` range of dimensions
    :param tuple rank_range: Inclusive ``(low, high)`` range of ranks for both matrices
    :param str symmetry: ``symmetric`` or ``skew``
    :param int trials: Number of trials, at least 1
    :param int seed: Search seed
    :param tuple properties: Properties to check, from ``weak``, ``interlacing`` and ``strong``
    :param float tol: Relative verdict tolerance; defaults to JKRONPY_INTERLACE_TOL
    :param bool conjecture_mode: Draw positive definite pairs and flag any odd smallest eigenvalue
    :param int workers: Worker threads; defaults to JKRONPY_WORKERS
    """

    def validate(self):
        if int(self.trials) < 1:
            raise BadConfig('trials must be at least 1, got {}'.format(self.trials))
        for name, (low, high) in (('n_range', self.n_range), ('rank_range', self.rank_range)):
            if not 1 <= low <= high:
                raise BadConfig('{} must satisfy 1 <= low <= high, got {}..{}'.format(name, low, high))
        if self.symmetry not in (SYMMETRIC, SKEW):
            raise BadConfig('symmetry must be symmetric or skew, got {!r}'.format(self.symmetry))
        if self.symmetry == SKEW and not self.conjecture_mode:
            if self.rank_range[0] % 2 or self.rank_range[1] % 2:
                raise BadConfig('Skew-symmetric ranks are even; got {}..{}'.format(*self.rank_range))
            if self.rank_range[0] > self.n_range[1]:
                raise BadConfig('No dimension in range admits rank {}'.format(self.rank_range[0]))
        unknown = set(self.properties) - set(PROPERTIES)
        if unknown or not self.properties:
            raise BadConfig('Unknown or empty properties: {}'.format(', '.join(sorted(unknown)) or 'none'))
        if self.tol is not None and not self.tol > 0:
            raise BadConfig('tol must be positive, got {}'.format(self.tol))
        return self

    @property
    def tol_factor(self):
        return INTERLACE_TOL if self.tol is None else float(self.tol)

    def to_json(self):
        return {'n_range': list(self.n_range), 'rank_range': list(self.rank_range), 'symmetry': self.symmetry,
                'trials': int(self.trials), 'seed': int(self.seed), 'properties': list(self.properties),
                'tol': self.tol_factor, 'conjecture_mode': bool(self.conjecture_mode)}


_TrialRecord = namedtuple('TrialRecord', [
    'trial_index', 'spec', 'tol', 'verdicts', 'min_parity', 'max_parity', 'min_margin', 'max_margin',
    'violations', 'dismissed', 'conjecture_candidate', 'wall_time'])


class TrialRecord(_TrialRecord):  # Wrapping for documentation
    """
    :param int trial_index:
    :param dict spec: The generator spec the pair was built from, as JSON
    :param float tol: Relative verdict tolerance
    :param dict verdicts: Property name to bool
    :param str min_parity: Parity of the smallest eigenvalue
    :param str max_parity: Parity of the largest eigenvalue
    :param float min_margin: ``min(odd) - min(even)``; negative when the minimum side fails
    :param float max_margin: ``max(even) - max(odd)``; negative when the maximum side fails
    :param list violations: Properties that failed and survived re-verification
    :param list dismissed: Properties that failed once but not on re-verification
    :param bool conjecture_candidate: Positive definite pair with an odd smallest eigenvalue
    :param float wall_time: Seconds spent on the trial
    """

    def to_json(self):
        return dict(self._asdict())

    def to_row(self):
        row = {k: v for k, v in self._asdict().items() if k not in ('spec', 'verdicts')}
        row.update({k: self.spec[k] for k in ('family', 'n', 'seed', 'symmetry')})
        row.update(self.verdicts)
        return row


def trial_spec(config, trial_index):
    """Draws the generator spec of one trial from ``SeedSequence([seed, trial_index])``."""
    rng = np.random.default_rng(np.random.SeedSequence([int(config.seed), int(trial_index)]))
    n = int(rng.integers(config.n_range[0], config.n_range[1] + 1))
    pair_seed = int(rng.integers(0, 2 ** 63 - 1))
    if config.conjecture_mode:
        return GeneratorSpec(POSITIVE_DEFINITE, n, {}, pair_seed, SYMMETRIC)
    ranks = [k for k in range(config.rank_range[0], config.rank_range[1] + 1)
             if k <= n and (config.symmetry == SYMMETRIC or k % 2 == 0)]
    if not ranks:
        ranks = [n if config.symmetry == SYMMETRIC else n - n % 2]
    k = int(ranks[int(rng.integers(0, len(ranks)))])
    return GeneratorSpec(RANK_K, n, {'k': k, 'k_b': k}, pair_seed, config.symmetry)


def _evaluate(spec, tol_factor, eigen_tol=None):
    a, b = generate(spec)
    check_contract(spec, a, b)
    split = spectrum_split(a, b, eigen_tol=eigen_tol)
    return split, interlace_report(split, default_tol(split, tol_factor))


def _margins(split):
    if split.odd_values.size == 0:
        return None, None
    return (float(split.odd_values[-1] - split.even_values[-1]),
            float(split.even_values[0] - split.odd_values[0]))


def run_trial(config, trial_index):
    start = time.time()
    spec = trial_spec(config, trial_index)
    split, report = _evaluate(spec, config.tol_factor)
    verdicts = {prop: report.verdict(prop) for prop in config.properties}
    failed = [prop for prop in config.properties if not verdicts[prop]]
    candidate = bool(config.conjecture_mode and split.min_parity == ODD)
    violations, dismissed = failed, []
    if failed or candidate:
        recheck_split, recheck = _evaluate(spec, config.tol_factor, eigen_tol=EIGEN_TOL / REVERIFY_FACTOR)
        violations = [prop for prop in failed if not recheck.verdict(prop)]
        dismissed = [prop for prop in failed if recheck.verdict(prop)]
        for prop in dismissed:
            verdicts[prop] = True
            logging.warning('Trial {}: {} violation dismissed on re-verification'.format(trial_index, prop))
        candidate = candidate and recheck_split.min_parity == ODD
    min_margin, max_margin = _margins(split)
    return TrialRecord(trial_index, spec.to_json(), config.tol_factor, verdicts, split.min_parity,
                       split.max_parity, min_margin, max_margin, violations, dismissed, candidate,
                       time.time() - start)


def summarize(config, records):
    """Summary JSON (schema version 1) of a finished search."""
    violation_trials = {prop: [r.trial_index for r in records if prop in r.violations] for prop in config.properties}
    return {
        'schema_version': SCHEMA_VERSION,
        'version': __version__,
        'config': config.to_json(),
        'trials': len(records),
        'violations': {prop: len(indices) for prop, indices in violation_trials.items()},
        'violation_trials': violation_trials,
        'dismissed': sum(len(r.dismissed) for r in records),
        'min_parity_odd': sum(1 for r in records if r.min_parity == ODD),
        'conjecture_candidates': [r.trial_index for r in records if r.conjecture_candidate],
    }


_SearchResult = namedtuple('SearchResult', ['records', 'summary'])


class SearchResult(_SearchResult):  # Wrapping for documentation
    """
    :param list records: :class:`TrialRecord` objects ordered by trial index
    :param dict summary: See :func:`summarize`
    """
    pass


def run_search(config, sink=None, workers=None):
    """
    Runs every trial of a search, concurrently when more than one worker is configured.
    Records reach the sink as soon as they and every earlier trial are done.

    :param SearchConfig config: A valid configuration
    :param filehandle sink: Optional filehandle receiving one JSON line per trial, in trial order
    :param int workers: Overrides ``config.workers`` and JKRONPY_WORKERS
    :return: :class:`SearchResult`
    """
    config.validate()
    workers = int(workers or config.workers or WORKERS)
    trials = int(config.trials)
    step = max(1, trials // 10)
    logging.info('Searching {} trials with seed {} on {} worker(s)'.format(trials, config.seed, workers))
    writer = JSONLWriter(sink) if sink is not None else None

    def task(index):
        record = run_trial(config, index)
        if (index + 1) % step == 0:
            logging.info('Finished trial {} of {}'.format(index + 1, trials))
        return record

    def collect(results):
        records = []
        for record in results:
            records.append(record)
            if writer is not None:
                writer.write(record.to_json())
                if hasattr(sink, 'flush'):
                    sink.flush()
        return records

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = collect(pool.map(task, range(trials)))
    else:
        records = collect(task(i) for i in range(trials))
    summary = summarize(config, records)
    logging.info('Search finished: {}'.format(summary['violations']))
    return SearchResult(records, summary)


def replay(record):
    """
    Rebuilds the pair of a trial record from its echoed spec and recomputes the verdicts.

    :param record: A :class:`TrialRecord` or its JSON form
    :return: dict of property name to bool, for the properties the record holds
    """
    data = record.to_json() if hasattr(record, 'to_json') else record
    spec = GeneratorSpec.from_json(data['spec'])
    _, report = _evaluate(spec, float(data['tol']))
    return {prop: report.verdict(prop) for prop in data['verdicts']}
