###############################################################################
#                                                                             #
#    This program is free software: you can redistribute it and/or modify     #
#    it under the terms of the GNU General Public License as published by     #
#    the Free Software Foundation, either version 3 of the License, or        #
#    (at your option) any later version.                                      #
#                                                                             #
#    This program is distributed in the hope that it will be useful,          #
#    but WITHOUT ANY WARRANTY; without even the implied warranty of           #
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the            #
#    GNU General Public License for more details.                             #
#                                                                             #
#    You should have received a copy of the GNU General Public License        #
#    along with this program. If not, see <http://www.gnu.org/licenses/>.     #
#                                                                             #
###############################################################################

__copyright__ = 'Copyright 2026'
__license__ = 'GPL3'

import os
import csv
import json
import math
import time
import logging
import functools
from collections import namedtuple

import numpy as np
from scipy import fft

from charsum import dickman
from charsum.config import (S2_LOG_EXPONENT,
                            SMOOTH_TRUNCATION_HEIGHT,
                            CONJECTURE_X_CAP,
                            CONJECTURE_GRID_SIZE,
                            SWEEP_VERIFY_CAP,
                            load_experiment_config,
                            validate_experiment_config)
from charsum.common import (EXP_GAMMA,
                            check_finite,
                            csum,
                            make_sure_path_exists,
                            signed_phase,
                            to_jsonable)
from charsum.checksum import config_hash
from charsum.characters import build_group
from charsum.parallel import Parallel
from charsum.smooth import SmoothSieve, smooth_numbers, smooth_reciprocal_tail_bound
from charsum.misc.time_keeper import TimeKeeper
from charsum.exceptions import CapacityError, DomainError

DecompositionReport = namedtuple('DecompositionReport',
                                 'q ell B y alpha z clipped '
                                 'S1 S1_tail_bound S2_plus S2_minus S3_plus S3_minus '
                                 'full_sum_check partition_residual rough '
                                 'polya_lhs polya_rhs polya_residual main_term ratio')
ADeltaTest = namedtuple('ADeltaTest', 'lhs threshold member')
ADeltaFraction = namedtuple('ADeltaFraction', 'q delta alpha threshold fraction non_members envelope')
TheoremProbe = namedtuple('TheoremProbe', 'q B parity x measured predicted ratio argmax_ell degenerate')
ConjectureProbe = namedtuple('ConjectureProbe', 'max_value alphas values')
LargeSieveCheck = namedtuple('LargeSieveCheck', 'lhs rhs ratio')
FirstPieceCheck = namedtuple('FirstPieceCheck', 'value bound ratio')
SweepComparison = namedtuple('SweepComparison', 'q x parity fft_max naive_max agree argmax_ell')
ExperimentRecord = namedtuple('ExperimentRecord', 'config_hash name started finished payload error')

# fast and naive sweeps must agree to this absolute tolerance
SWEEP_AGREEMENT_TOL = 1e-8


@functools.lru_cache(maxsize=16)
def _group(q):
    return build_group(q)


@functools.lru_cache(maxsize=16)
def _smooth_set(y, height):
    values = smooth_numbers(y, height)
    values.flags.writeable = False
    return values


def _log_scale(q):
    """y = log q, requiring log y >= 1 so the split ranges are ordered."""

    y = math.log(q)
    if math.log(y) < 1:
        raise DomainError('Sum decomposition requires log log q >= 1: q = %d' % q)
    return y


def predicted_main_term(q, B, parity):
    """(1/pi) log log q sqrt(q) int_B^inf rho for odd, rho(B) sqrt(q)/2 for even."""

    if parity == 'odd':
        return float(dickman.rho_tail_integral(B)) * math.sqrt(q) * math.log(math.log(q)) / math.pi
    if parity == 'even':
        return float(dickman.rho(B)) * math.sqrt(q) / 2

    raise DomainError('Parity must be odd or even: %s' % parity)


def _rough_numbers(y, z):
    """Integers 1 <= n <= z with P(n) > y."""

    n = np.arange(1, int(math.floor(z)) + 1, dtype=np.int64)
    return n[~np.isin(n, _smooth_set(y, int(math.floor(z))))]


def rough_sum(group, ell, alpha, z, y):
    """Sum over 1 <= |n| <= z with P(|n|) > y of chi(n)(1 - e(-alpha n))/n."""

    n = _rough_numbers(y, z)
    if n.size == 0:
        return 0j

    base = group.values(ell, n) / n
    chi_minus_one = -1.0 if ell % 2 else 1.0
    minus = csum(base * (1 - signed_phase(alpha, n, -1)))
    plus = csum(base * (1 - signed_phase(alpha, n, 1)))

    return complex(minus - chi_minus_one * plus)


class SumSplit(object):
    """Splits the smooth part of the Polya sum into S1, S2 and S3.

    With y = log q, alpha = y^(-B) and z = round(q^(11/21)) the
    breakpoints are y^B/log y, y^B, y^B (log y)^5 and y^(log log y).
    The last two are clipped to z, keeping the ranges ordered and
    half-open, so S1 + S2 + S3 regroups the direct sum exactly.
    """

    def __init__(self, group, height=SMOOTH_TRUNCATION_HEIGHT):
        """Initialization.

        Parameters
        ----------
        group : CharacterGroup
            Characters modulo a prime q.
        height : int
            Truncation height for the infinite sum S1.
        """

        self.logger = logging.getLogger('timestamp')

        self.group = group
        self.height = int(height)

        self.y = _log_scale(group.q)
        self.z = group.default_truncation()

    def breakpoints(self, B):
        """Ordered breakpoints and whether any were clipped to z."""

        y, z = self.y, self.z
        log_y = math.log(y)
        b3_raw = y ** B * log_y ** S2_LOG_EXPONENT
        b4_raw = y ** math.log(log_y)

        b3 = min(b3_raw, z)
        b4 = min(max(b4_raw, b3), z)

        return (y ** B / log_y, y ** B, b3, b4), (b3 != b3_raw or b4 != b4_raw)

    def decompose(self, ell, B):
        """Decomposition report for one character.

        Parameters
        ----------
        ell : int
            Non-principal character label.
        B : float
            Exponent with alpha = (log q)^(-B), 0 <= B and y^B <= z.

        Returns
        -------
        DecompositionReport
            The pieces, the regrouping residual, the rough part and
            the Polya comparison for the conjugate character.
        """

        check_finite(B, 'B')
        if B < 0:
            raise DomainError('B must be non-negative: %s' % B)
        if self.y ** B > self.z:
            raise DomainError('y^B = %g exceeds z = %d.' % (self.y ** B, self.z))

        ell = int(ell) % self.group.order
        if ell == 0:
            raise DomainError('Decomposition requires a non-principal character.')

        group = self.group
        alpha = self.y ** (-B)
        (b1, b2, b3, b4), clipped = self.breakpoints(B)
        if clipped:
            self.logger.debug('Breakpoints clipped to z = %d for q = %d, B = %g.' % (self.z, group.q, B))

        smooth = _smooth_set(self.y, self.height)
        head = smooth[smooth <= self.z]
        beyond = smooth[smooth > self.z]

        nf = head.astype(np.float64)
        base = group.values(ell, head) / nf
        r1 = nf < b1
        r2 = (nf >= b1) & (nf < b2)
        r3 = (nf >= b2) & (nf < b3)
        r4 = (nf >= b3) & (nf < b4)
        r5 = nf >= b4

        tail = csum(group.values(ell, beyond) / beyond) if beyond.size else 0j
        S1 = csum(base[r3 | r4 | r5]) + tail

        pieces = {}
        for sign in (1, -1):
            w = signed_phase(alpha, head, sign)
            S2 = csum(base[r2] * (1 - w[r2])) - csum(base[r3] * w[r3])
            S3 = (csum(base[r1] * (1 - w[r1])) - csum(base[r4] * w[r4])
                  - csum(base[r5] * w[r5]) - tail)
            direct = csum(base * (1 - w))
            pieces[sign] = (complex(S2), complex(S3), complex(direct))

        partition_residual = max(abs(S1 + pieces[s][0] + pieces[s][1] - pieces[s][2]) for s in (1, -1))

        chi_minus_one = -1.0 if ell % 2 else 1.0
        rough = rough_sum(group, ell, alpha, self.z, self.y)
        smooth_total = pieces[-1][2] - chi_minus_one * pieces[1][2]

        tau_bar = group.gauss_sum(group.conjugate_index(ell))
        polya_rhs = tau_bar / (2j * math.pi) * (smooth_total + rough)

        x = alpha * group.q
        polya_lhs = complex(np.conj(group.partial_sum(ell, x))) if x >= 1 else 0j

        main_term = predicted_main_term(group.q, B, group.parity(ell))

        return DecompositionReport(group.q, ell, B, self.y, alpha, self.z, clipped,
                                   complex(S1), smooth_reciprocal_tail_bound(self.y, self.height),
                                   pieces[1][0], pieces[-1][0], pieces[1][1], pieces[-1][1],
                                   (pieces[1][2], pieces[-1][2]), partition_residual, rough,
                                   polya_lhs, complex(polya_rhs), abs(polya_lhs - polya_rhs),
                                   main_term, abs(polya_lhs) / main_term)


def decompose(group, ell, B, height=SMOOTH_TRUNCATION_HEIGHT):
    return SumSplit(group, height).decompose(ell, B)


def default_delta(q):
    """delta = log log y / sqrt(log y) with y = log q."""

    log_y = math.log(_log_scale(q))
    return math.log(log_y) / math.sqrt(log_y) if log_y > 1 else 1.0


def a_delta_test(group, ell, delta, alpha, z=None, y=None):
    """Membership of one character in A_delta: |rough part| <= e^gamma delta."""

    if int(ell) % group.order == 0:
        raise DomainError('The principal character is excluded from A_delta.')

    z = group.default_truncation() if z is None else z
    y = math.log(group.q) if y is None else y
    lhs = abs(rough_sum(group, int(ell) % group.order, alpha, z, y))
    threshold = EXP_GAMMA * delta

    return ADeltaTest(lhs, threshold, lhs <= threshold)


def exceptional_count_envelope(q, delta):
    """q^(1 - delta^2/log log q) + q^(1 - 1/(500 log log q))."""

    llq = math.log(math.log(q))
    return q ** (1 - delta * delta / llq) + q ** (1 - 1 / (500 * llq))


def a_delta_fraction(group, delta, alpha, z=None, y=None):
    """Non-members of A_delta among all non-principal characters.

    The rough sums for every label come from two inverse
    transforms over the discrete-log positions of the rough n.
    """

    z = group.default_truncation() if z is None else z
    y = math.log(group.q) if y is None else y
    threshold = EXP_GAMMA * delta

    n = _rough_numbers(y, z)
    coeff_minus = np.zeros(group.order, dtype=np.complex128)
    coeff_plus = np.zeros(group.order, dtype=np.complex128)
    if n.size:
        pos = group.ind[n % group.q]
        coeff_minus[pos] = (1 - signed_phase(alpha, n, -1)) / n
        coeff_plus[pos] = (1 - signed_phase(alpha, n, 1)) / n

    labels = np.arange(group.order)
    chi_minus_one = np.where(labels % 2 == 1, -1.0, 1.0)
    totals = (fft.ifft(coeff_minus) - chi_minus_one * fft.ifft(coeff_plus)) * group.order

    lhs = np.abs(totals[1:])
    non_members = labels[1:][lhs > threshold]

    return ADeltaFraction(group.q, delta, alpha, threshold,
                          non_members.size / (group.order - 1),
                          non_members, exceptional_count_envelope(group.q, delta))


def theorem_probe(q, B, parity, group=None):
    """Largest character sum up to q/(log q)^B against the predicted main term."""

    if parity not in ('odd', 'even'):
        raise DomainError('Parity must be odd or even: %s' % parity)
    if parity == 'even' and B < 1:
        raise DomainError('Even probes require B >= 1: %s' % B)

    group = _group(q) if group is None else group
    x = q / math.log(q) ** B
    if x < 1:
        raise DomainError('Sum length q/(log q)^B is below 1 for B = %s.' % B)

    sweep = group.sweep_max(x, parity)
    predicted = predicted_main_term(q, B, parity)

    # a sum over a full period vanishes for every non-principal character
    degenerate = x >= q - 1
    if degenerate:
        logging.getLogger('timestamp').warning(
            'Sum length %g covers a full period of q = %d; the ratio is flagged degenerate.' % (x, q))

    return TheoremProbe(q, B, parity, x, sweep.max_abs, predicted,
                        sweep.max_abs / predicted, sweep.argmax_ell, degenerate)


def conjecture_probe(group, ell, x, y=None, alpha_grid=()):
    """Largest |sum_{n<=x, P(n)>y} chi(n) e(alpha n)/n| over a grid of alpha."""

    check_finite(x, 'x')
    if x > CONJECTURE_X_CAP:
        raise CapacityError('x exceeds conjecture probe cap %d: %s' % (CONJECTURE_X_CAP, x))

    y = math.log(group.q) if y is None else y
    alphas = [float(a) for a in alpha_grid]
    X = int(math.floor(x))
    if not alphas or X <= y:
        return ConjectureProbe(0.0, alphas, [0.0] * len(alphas))

    sieve = SmoothSieve(limit=X)
    n, smooth = sieve.smooth_mask(1, X, y)
    n = n[~smooth]
    base = group.values(ell, n) / n

    values = [abs(csum(base * signed_phase(a, n, 1))) for a in alphas]
    return ConjectureProbe(max(values), alphas, values)


def large_sieve_check(group, ell, x, y, alpha, B):
    """Smooth exponential sum against the multiplicative large-sieve shape.

    The comparison is x sqrt(log x) log y (sqrt(y/x) + sqrt(m/x)
    + 1/sqrt(m) + exp(-sqrt(log x))) with m the integer nearest y^B.
    """

    check_finite(x, 'x')
    if x < 3:
        raise DomainError('large_sieve_check requires x >= 3: %s' % x)

    n = smooth_numbers(y, int(math.floor(x)))
    lhs = abs(csum(group.values(ell, n) * signed_phase(alpha, n, 1)))

    m = max(1, int(round(y ** B)))
    log_x = math.log(x)
    rhs = x * math.sqrt(log_x) * math.log(y) * (math.sqrt(y / x) + math.sqrt(m / x)
                                               + 1 / math.sqrt(m) + math.exp(-math.sqrt(log_x)))

    return LargeSieveCheck(lhs, rhs, lhs / rhs)


def first_piece_check(group, ell, B, sign=1):
    """First S3 piece over n <= y^B/log y against rho(B)/log y."""

    y = _log_scale(group.q)
    alpha = y ** (-B)
    n = smooth_numbers(y, int(math.floor(y ** B / math.log(y))))
    n = n[n >= 1]
    value = csum(group.values(ell, n) / n * (1 - signed_phase(alpha, n, sign))) if n.size else 0j

    bound = float(dickman.rho(B)) / math.log(y)
    return FirstPieceCheck(complex(value), bound, abs(value) / bound)


def sweep_comparison(q, x_fraction=0.5, parity='any'):
    """Transform sweep against the per-character sweep at x = floor(q x_fraction)."""

    group = _group(q)
    x = math.floor(q * x_fraction)
    fast = group.sweep_max(x, parity, method='fft')
    if q > SWEEP_VERIFY_CAP:
        return SweepComparison(q, x, parity, fast.max_abs, None, None, fast.argmax_ell)

    naive = group.sweep_max(x, parity, method='naive')
    agree = abs(fast.max_abs - naive.max_abs) <= SWEEP_AGREEMENT_TOL
    return SweepComparison(q, x, parity, fast.max_abs, naive.max_abs, agree, fast.argmax_ell)


def _expand_probe(probe):
    """Work items for one configured probe, in a fixed order."""

    kind = probe['type']
    parity = probe.get('parity', 'any')

    if kind == 'theorem':
        parities = ('odd', 'even') if parity == 'any' else (parity,)
        for q in probe['q']:
            for B in probe['B']:
                for par in parities:
                    if par == 'even' and B < 1:
                        continue
                    yield {'type': kind, 'q': q, 'B': B, 'parity': par}
    elif kind == 'decompose':
        for q in probe['q']:
            for ell in probe['ell']:
                for B in probe['B']:
                    yield {'type': kind, 'q': q, 'ell': ell, 'B': B}
    elif kind == 'a_delta':
        for q in probe['q']:
            for B in probe.get('B', [1]):
                for delta in probe.get('delta', [None]):
                    yield {'type': kind, 'q': q, 'B': B, 'delta': delta}
    elif kind == 'conjecture':
        grid = probe.get('grid', CONJECTURE_GRID_SIZE)
        for q in probe['q']:
            for ell in probe['ell']:
                for x in probe['x']:
                    yield {'type': kind, 'q': q, 'ell': ell, 'x': x, 'grid': grid}
    elif kind == 'sweep':
        for q in probe['q']:
            yield {'type': kind, 'q': q, 'parity': parity, 'x_fraction': probe.get('x_fraction', 0.5)}
    elif kind == 'dickman':
        yield {'type': kind, 'u': probe.get('u', []), 'tail_B': probe.get('tail_B', [])}


def _run_work_item(item):
    """Evaluate one work item; module level so worker processes can import it."""

    kind = item['type']
    if kind == 'theorem':
        result = theorem_probe(item['q'], item['B'], item['parity'])
    elif kind == 'decompose':
        result = decompose(_group(item['q']), item['ell'], item['B'])
    elif kind == 'a_delta':
        q = item['q']
        delta = default_delta(q) if item['delta'] is None else item['delta']
        alpha = math.log(q) ** (-item['B'])
        result = a_delta_fraction(_group(q), delta, alpha)
    elif kind == 'conjecture':
        grid = item['grid']
        alphas = [j / (grid + 1) for j in range(1, grid + 1)]
        result = conjecture_probe(_group(item['q']), item['ell'], item['x'], alpha_grid=alphas)
    elif kind == 'sweep':
        result = sweep_comparison(item['q'], item['x_fraction'], item['parity'])
    elif kind == 'dickman':
        result = {'rho': [dickman.rho_evaluate(u) for u in item['u']],
                  'tail': [dickman.default_evaluator().rho_tail_integral(B) for B in item['tail_B']]}
    else:
        raise DomainError('Unknown probe type: %s' % kind)

    return {'probe': item, 'result': to_jsonable(result)}


def _read_records(output_file):
    if not os.path.exists(output_file):
        return []

    records = []
    with open(output_file) as f:
        for line in f:
            if line.strip():
                records.append(json.loads(line))
    return records


def _append_record(output_file, record):
    out_dir = os.path.dirname(output_file)
    if out_dir:
        make_sure_path_exists(out_dir)

    with open(output_file, 'a') as fout:
        fout.write(json.dumps(record._asdict(), sort_keys=True) + '\n')


def _record_from_dict(doc):
    return ExperimentRecord(*[doc.get(field) for field in ExperimentRecord._fields])


def run_experiment(config):
    """Run the probes of an experiment configuration.

    Parameters
    ----------
    config : dict or str
        Parsed configuration or path to a JSON configuration file.

    Returns
    -------
    ExperimentRecord
        The appended record, or the stored one when a successful
        record with the same configuration hash already exists.
    """

    logger = logging.getLogger('timestamp')

    if isinstance(config, str):
        config = load_experiment_config(config)
    else:
        config = validate_experiment_config(dict(config))

    # worker count does not affect the payload
    digest = config_hash({k: v for k, v in config.items() if k != 'cpus'})
    output_file = config['output']

    for doc in _read_records(output_file):
        if doc.get('config_hash') == digest and not doc.get('error'):
            logger.info('Configuration %s already recorded in %s.' % (digest[:12], output_file))
            return _record_from_dict(doc)

    items = [item for probe in config['probes'] for item in _expand_probe(probe)]
    logger.info('Running %d work items for experiment %s.' % (len(items), config['name']))

    time_keeper = TimeKeeper()
    started = time.strftime('%Y-%m-%dT%H:%M:%S')
    parallel = Parallel(config['cpus'])
    batch_size = 4 * config['cpus']

    payload = []
    try:
        for start in range(0, len(items), batch_size):
            batch = items[start:start + batch_size]
            payload.extend(parallel.run(_run_work_item, batch))
            time_keeper.mark('items %d-%d' % (start, start + len(batch) - 1))
    except Exception as error:
        record = ExperimentRecord(digest, config['name'], started,
                                  time.strftime('%Y-%m-%dT%H:%M:%S'), payload, str(error))
        _append_record(output_file, record)
        logger.error('Experiment %s stopped after %d of %d items.' % (config['name'], len(payload), len(items)))
        raise

    record = ExperimentRecord(digest, config['name'], started,
                              time.strftime('%Y-%m-%dT%H:%M:%S'), payload, None)
    _append_record(output_file, record)
    if time_keeper.stages:
        slowest, secs = max(time_keeper.stages, key=lambda s: s[1])
        logger.debug('Slowest batch: %s (%s).' % (slowest, time_keeper.seconds_to_str(secs)))
    logger.info('Experiment %s finished in %s.' % (config['name'], time_keeper.seconds_to_str(time_keeper.total_seconds())))

    return record


def _flatten(prefix, value, row):
    """Scalar fields of a JSON result; [re, im] pairs become moduli."""

    if isinstance(value, dict):
        for k, v in value.items():
            _flatten('%s%s' % (prefix + '_' if prefix else '', k), v, row)
    elif isinstance(value, list):
        if len(value) == 2 and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
            row[prefix + '_abs'] = math.hypot(value[0], value[1])
    elif value is not None:
        row[prefix] = value


def report(path, output_file=None):
    """Flatten an experiment file into summary rows, optionally written as CSV.

    Parameters
    ----------
    path : str
        JSON-lines experiment file.
    output_file : str
        CSV file to write (skipped if None).

    Returns
    -------
    list
        One dict per work item.
    """

    rows = []
    for doc in _read_records(path):
        for entry in doc.get('payload') or []:
            row = {'name': doc.get('name'), 'config_hash': doc.get('config_hash')}
            for k, v in entry['probe'].items():
                row['probe' if k == 'type' else k] = v
            _flatten('', entry['result'], row)
            rows.append(row)

    if output_file:
        fieldnames = []
        for row in rows:
            fieldnames.extend(k for k in row if k not in fieldnames)

        with open(output_file, 'w', newline='') as fout:
            writer = csv.DictWriter(fout, fieldnames=fieldnames)
            writer.writeheader()
            writer.writerows(rows)

    return rows
