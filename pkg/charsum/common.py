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
import errno
import math
import logging
from fractions import Fraction

import numpy as np
import mpmath

from charsum.exceptions import CharSumError, DomainError

EULER_GAMMA = float(mpmath.euler)
EXP_GAMMA = float(mpmath.exp(mpmath.euler))


def make_sure_path_exists(path):
    """Create directory if it does not exist."""

    if not path:
        # lack of a path qualifier is acceptable as this
        # simply specifies the current directory
        return

    try:
        os.makedirs(path)
    except OSError as exception:
        if exception.errno != errno.EEXIST:
            logger = logging.getLogger('timestamp')
            logger.error('Specified path could not be created: ' + path)
            raise CharSumError('Specified path could not be created: ' + path)


def is_float(s):
    """Check if a string can be converted to a float.

    Parameters
    ----------
    s : str
        String to evaluate.

    Returns
    -------
    boolean
        True if string can be converted, else False.
    """

    try:
        float(s)
    except ValueError:
        return False

    return True


def check_finite(value, name):
    """Raise DomainError unless value is a finite real."""

    if not is_float(value) or not math.isfinite(float(value)):
        raise DomainError('%s must be a finite real: %s' % (name, value))


def e(x):
    """Additive character e(x) = exp(2 pi i x).

    The integer part of x is removed before exponentiating so
    phases of large arguments keep full double precision.
    """

    x = np.asarray(x, dtype=np.float64)
    return np.exp(2j * np.pi * (x - np.rint(x)))


def signed_phase(alpha, n, sign):
    """Compute e(sign * alpha * n) for an array of integers n.

    The two signs are formed from the same cosine and sine
    values, so the results for +1 and -1 are exact conjugates.

    Parameters
    ----------
    alpha : float
        Frequency.
    n : array_like
        Integer arguments.
    sign : int
        +1 or -1.

    Returns
    -------
    ndarray
        Complex phases.
    """

    t = alpha * np.asarray(n, dtype=np.float64)
    t = t - np.rint(t)
    angle = 2 * np.pi * t
    return np.cos(angle) + 1j * sign * np.sin(angle)


def parse_sign(sign):
    """Map '+', '-', +1, -1 to an integer sign."""

    if sign in ('+', 1, '1', '+1', 'plus'):
        return 1
    if sign in ('-', -1, '-1', 'minus'):
        return -1

    raise DomainError('Sign must be + or -: %s' % sign)


def centered_residue(a, m):
    """Centered residue of a modulo m in (-m/2, m/2].

    Works on Python integers and on integer numpy arrays.
    """

    r = a % m
    if isinstance(r, np.ndarray):
        return np.where(2 * r > m, r - m, r)

    return r - m if 2 * r > m else r


def dist_to_int(x):
    """Distance from x to the nearest integer."""

    x = np.asarray(x, dtype=np.float64)
    return np.abs(x - np.rint(x))


def csum(values):
    """Compensated sum of real or complex values.

    Real and imaginary parts are accumulated separately with
    math.fsum, which tracks partial sums exactly.
    """

    arr = np.asarray(values)
    if arr.size == 0:
        return 0.0
    if np.iscomplexobj(arr):
        return complex(math.fsum(arr.real.ravel()), math.fsum(arr.imag.ravel()))

    return math.fsum(arr.ravel())


def floor_power(base, exponent, rel_tol=1e-12):
    """Floor of base**exponent, robust to rounding at exact integers."""

    v = float(base) ** float(exponent)
    nearest = round(v)
    if abs(v - nearest) <= rel_tol * max(1.0, abs(v)):
        return int(nearest)

    return int(math.floor(v))


def as_fraction(x):
    """Convert an int, float, Fraction or 'p/q' string to a Fraction."""

    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())

    return Fraction(x)


def fraction_str(f):
    """Render a Fraction as a 'p/q' string."""

    f = as_fraction(f)
    return '%d/%d' % (f.numerator, f.denominator)


def to_jsonable(obj):
    """Convert result objects to JSON-serialisable structures.

    Namedtuples become dicts, complex numbers become [re, im]
    pairs, Fractions become 'p/q' strings and numpy or mpmath
    scalars become Python floats and ints.
    """

    if hasattr(obj, '_asdict'):
        return {k: to_jsonable(v) for k, v in obj._asdict().items()}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating, mpmath.mpc)):
        c = complex(obj)
        return [c.real, c.imag]
    if isinstance(obj, (float, np.floating, mpmath.mpf)):
        return float(obj)

    return obj
