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
import json
import numbers

from charsum.exceptions import ConfigError

# dickman
RHO_MAX_U = 400
RHO_TAIL_SWITCH = 300
RHO_TOL = 1e-12
RHO_PRECISION_DPS = 40
XI_TOL = 1e-14
XI_MAX_ITER = 100

# smooth
SIEVE_LIMIT = 10**8

# characters
GROUP_CAP = 2 * 10**7
POLYA_EXPONENT = 11.0 / 21.0

# lattice
ENUMERATION_CAP = 10**8
COUNT_CAP = 10**9
EXHAUSTIVE_RELATION_CAP = 10**8
MITM_HALF_CAP = 10**7
CHUNK_SIZE = 1 << 20

# pretentious
PRETENTIOUS_EXHAUSTIVE_CAP = 10**6
EULER_TRUNCATION_HEIGHT = 10**9

# expsum
TAIL_EXPONENT_C = 5
EXPSUM_MAX_TERMS = 10**7
EXPSUM_HEAD_CAP = 10**9

# harness
S2_LOG_EXPONENT = 5
SMOOTH_TRUNCATION_HEIGHT = 10**15
CONJECTURE_X_CAP = 10**7
CONJECTURE_GRID_SIZE = 256
SWEEP_VERIFY_CAP = 2 * 10**4

PROBE_TYPES = ('theorem', 'decompose', 'a_delta', 'conjecture', 'sweep', 'dickman')
PARITIES = ('any', 'odd', 'even')

_REQUIRED_PROBE_KEYS = {
    'theorem': ('q', 'B'),
    'decompose': ('q', 'ell', 'B'),
    'a_delta': ('q',),
    'conjecture': ('q', 'ell', 'x'),
    'sweep': ('q',),
    'dickman': (),
}


def _check_int_list(probe, key):
    values = probe[key]
    if not isinstance(values, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in values):
        raise ConfigError("Probe '%s' key '%s' must be a list of integers." % (probe['type'], key))


def _check_number_list(probe, key):
    values = probe[key]
    if not isinstance(values, list) or not all(isinstance(v, numbers.Real) and not isinstance(v, bool) for v in values):
        raise ConfigError("Probe '%s' key '%s' must be a list of numbers." % (probe['type'], key))


def validate_experiment_config(document):
    """Validate a parsed experiment configuration.

    Parameters
    ----------
    document : dict
        Parsed configuration.

    Returns
    -------
    dict
        The same document with defaults filled in.
    """

    if not isinstance(document, dict):
        raise ConfigError('Configuration must be a JSON object.')

    for key in ('name', 'output'):
        if not isinstance(document.get(key), str) or not document[key]:
            raise ConfigError("Configuration requires a non-empty string '%s'." % key)

    cpus = document.setdefault('cpus', 1)
    if not isinstance(cpus, int) or cpus < 1:
        raise ConfigError("'cpus' must be a positive integer.")

    probes = document.setdefault('probes', [])
    if not isinstance(probes, list):
        raise ConfigError("'probes' must be a list.")

    for probe in probes:
        if not isinstance(probe, dict) or probe.get('type') not in PROBE_TYPES:
            raise ConfigError('Probe type must be one of %s: %s' % (', '.join(PROBE_TYPES), probe))

        for key in _REQUIRED_PROBE_KEYS[probe['type']]:
            if key not in probe:
                raise ConfigError("Probe '%s' is missing key '%s'." % (probe['type'], key))

        if 'q' in probe:
            _check_int_list(probe, 'q')
        if 'ell' in probe:
            _check_int_list(probe, 'ell')
        for key in ('B', 'u', 'tail_B', 'x', 'delta'):
            if key in probe:
                _check_number_list(probe, key)

        parity = probe.get('parity', 'any')
        if parity not in PARITIES:
            raise ConfigError("Probe parity must be one of %s." % ', '.join(PARITIES))

    return document


def load_experiment_config(config_file):
    """Read and validate an experiment configuration file.

    Parameters
    ----------
    config_file : str
        Path to JSON configuration document.

    Returns
    -------
    dict
        Validated configuration.
    """

    if not os.path.isfile(config_file):
        raise ConfigError('Configuration file does not exist: %s' % config_file)

    with open(config_file) as f:
        try:
            document = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError('Configuration file is not valid JSON: %s' % e)

    return validate_experiment_config(document)
