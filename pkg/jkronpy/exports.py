import json
from csv import DictWriter

import numpy as np
import pandas as pd

from jkronpy.__version__ import __version__
from jkronpy.errors import BadLength, DimMismatch, NotRational
from jkronpy.exact import RationalMatrix, rational_str
from jkronpy.utils import as_matrix

TEXT = 'text'
JSON = 'json'


def _split_text(text):
    lines = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith('#')]
    if not lines or len(lines[0]) != 2:
        raise BadLength('Matrix text must start with a "rows cols" line')
    try:
        rows, cols = int(lines[0][0]), int(lines[0][1])
    except ValueError:
        raise BadLength('Bad dimension line: {}'.format(' '.join(lines[0])))
    body = lines[1:]
    if len(body) != rows or any(len(row) != cols for row in body):
        raise DimMismatch('Expected {} rows of {} entries'.format(rows, cols))
    return rows, cols, body


def _split_json(text):
    try:
        data = json.loads(text)
        rows, cols, entries = int(data['rows']), int(data['cols']), data['entries']
    except (ValueError, KeyError, TypeError) as e:
        raise BadLength('Bad matrix JSON: {}'.format(e))
    if len(entries) != rows or any(len(row) != cols for row in entries):
        raise DimMismatch('Expected {} rows of {} entries'.format(rows, cols))
    return rows, cols, entries


def parse_matrix(text, exact=False):
    """
    Parses a matrix from the text format (a ``rows cols`` line followed by the rows)
    or from JSON ``{"rows": r, "cols": c, "entries": [[...], ...]}``.

    :param bool exact: Return a :class:`exact.RationalMatrix`; entries such as ``-19/2`` or
                       ``0.25`` are then read exactly
    """
    text = text.strip()
    rows, cols, body = _split_json(text) if text.startswith('{') else _split_text(text)
    if exact:
        return RationalMatrix([[x if not isinstance(x, float) else _json_float(x) for x in row] for row in body])
    try:
        values = [[float(_fraction_token(x)) for x in row] for row in body]
    except (ValueError, ZeroDivisionError):
        raise BadLength('Matrix entries must be numbers')
    return as_matrix(np.array(values).reshape(rows, cols))


def _fraction_token(x):
    if isinstance(x, str) and '/' in x:
        num, den = x.split('/')
        return float(num) / float(den)
    return x


def _json_float(x):
    if float(x).is_integer():
        return int(x)
    raise NotRational('JSON float {!r} is not exact; write it as a string'.format(x))


def read_matrix(path, exact=False):
    with open(path) as fh:
        return parse_matrix(fh.read(), exact=exact)


def format_matrix(matrix, fmt=TEXT):
    if isinstance(matrix, RationalMatrix):
        entries = [[rational_str(x) for x in row] for row in matrix.entries]
    else:
        m = as_matrix(matrix)
        entries = [[_number(x) for x in row] for row in m]
    rows, cols = len(entries), len(entries[0])
    if fmt == JSON:
        return json.dumps({'rows': rows, 'cols': cols, 'entries': entries}) + '\n'
    lines = ['{} {}'.format(rows, cols)] + [' '.join(str(x) for x in row) for row in entries]
    return '\n'.join(lines) + '\n'


def _number(x):
    x = float(x)
    return int(x) if x.is_integer() else repr(x)


def write_matrix(matrix, path, fmt=TEXT):
    with open(path, 'w') as fh:
        fh.write(format_matrix(matrix, fmt))


def dumps_record(record):
    return json.dumps(record, sort_keys=True, separators=(',', ':'))


class JSONLWriter(object):
    """
    :param filehandle f: A filehandle for the JSON Lines output
    """

    def __init__(self, f):
        self._f = f

    def write(self, record):
        self._f.write(dumps_record(record) + '\n')

    def writerecords(self, records):
        for record in records:
            self.write(record)


class RecordWriter(DictWriter):
    """
    CSV writer for search trial records.

    :param filehandle f: A filehandle for the CSV output file
    """

    HEADER = [
        'trial_index',
        'family',
        'n',
        'seed',
        'symmetry',
        'weak',
        'interlacing',
        'strong',
        'min_parity',
        'max_parity',
        'min_margin',
        'max_margin',
        'wall_time',
    ]

    def __init__(self, f, fieldnames=None):
        self._f = f
        super().__init__(f, fieldnames=fieldnames or self.HEADER, restval='', lineterminator='\n',
                         extrasaction='ignore')
        self.records = []

    def writeheader(self):
        self._f.write('# source=jkronpy_v{}\n'.format(__version__))
        super().writeheader()

    def addrecord(self, record):
        """
        :param record: A :class:`search.TrialRecord` or a dict keyed by the header fields
        """
        row = record.to_row() if hasattr(record, 'to_row') else dict(record)
        self.records.append(row)

    def addrecords(self, records):
        for record in records:
            self.addrecord(record)

    def writerecords(self, with_header=True):
        """
        Writes every added record, ordered by trial index.

        :param bool with_header: Indicates whether the header lines are written first
        :return: the rows written
        """
        if with_header:
            self.writeheader()
        rows = sorted(self.records, key=lambda r: int(r.get('trial_index', 0)))
        for row in rows:
            super().writerow(row)
        return rows


def spectrum_table(split):
    records = [('even', i + 1, float(v)) for i, v in enumerate(split.even_values)]
    records += [('odd', i + 1, float(v)) for i, v in enumerate(split.odd_values)]
    return pd.DataFrame.from_records(records, columns=['parity', 'index', 'value']) \
        .sort_values(by=['value', 'parity'], ascending=[False, True]).reset_index(drop=True)


def claims_table(claims):
    """One row per reproduced claim: suite, claim, status and detail."""
    return pd.DataFrame.from_records(
        [(c.suite, c.claim, 'PASS' if c.passed else 'FAIL', c.detail) for c in claims],
        columns=['suite', 'claim', 'status', 'detail'])


def trials_table(records):
    rows = [r.to_row() if hasattr(r, 'to_row') else dict(r) for r in records]
    return pd.DataFrame.from_records(rows, columns=RecordWriter.HEADER).sort_values(by=['trial_index'])
