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

import math
import logging
import functools
from collections import namedtuple

import mpmath
from scipy import optimize

from charsum.config import (RHO_MAX_U,
                            RHO_TAIL_SWITCH,
                            RHO_TOL,
                            RHO_PRECISION_DPS,
                            XI_TOL,
                            XI_MAX_ITER)
from charsum.common import check_finite
from charsum.exceptions import DomainError

RhoValue = namedtuple('RhoValue', 'u value approximate')
TailIntegral = namedtuple('TailIntegral', 'B value error_bound approximate')
PerturbationResidual = namedtuple('PerturbationResidual', 'u v ratio')
ShiftTrend = namedtuple('ShiftTrend', 'u v exponent')


class XiSolver(object):
    """Solve e^xi = 1 + u*xi for the unique positive root xi(u), u > 1."""

    def __init__(self, tol=XI_TOL, max_iter=XI_MAX_ITER):
        """Initialization.

        Parameters
        ----------
        tol : float
            Relative residual accepted for the root.
        max_iter : int
            Iteration cap for Newton and bisection steps.
        """

        self.logger = logging.getLogger('timestamp')

        self.tol = tol
        self.max_iter = max_iter

    def residual_ok(self, u, xi):
        """Check |(e^xi - 1)/xi - u| <= tol*u.

        The quotient form rejects the spurious root xi = 0.
        """
        return xi > 0 and abs(math.expm1(xi) / xi - u) <= self.tol * u

    def solve(self, u):
        """Positive root of e^xi = 1 + u*xi.

        Newton's method is started from log(u log u) and the
        result is accepted only if it lies inside the bracket
        and meets the residual test; otherwise Brent's method
        is run on the bracket.

        Parameters
        ----------
        u : float
            Argument, u > 1.

        Returns
        -------
        float
            xi(u) > 0.
        """

        check_finite(u, 'u')
        u = float(u)
        if u <= 1:
            raise DomainError('xi(u) requires u > 1: %s' % u)

        # (e^x - 1)/x increases from 1, so the root is its crossing of u
        def g(x):
            return math.expm1(x) / x - u

        lo = 1e-300
        hi = 2.0 * math.log(u) + 2.0

        if u >= 3:
            x0 = math.log(u * math.log(u))
        else:
            x0 = min(2.0 * (u - 1.0), 0.5 * hi)

        try:
            root = optimize.newton(lambda x: math.expm1(x) - u * x,
                                   x0,
                                   fprime=lambda x: math.exp(x) - u,
                                   tol=1e-15,
                                   maxiter=self.max_iter)
            if lo < root < hi and self.residual_ok(u, root):
                return float(root)
        except (RuntimeError, ZeroDivisionError, OverflowError):
            pass

        self.logger.debug('Newton iteration for xi(%g) failed, using bisection.' % u)
        root = optimize.brentq(g, lo, hi, xtol=1e-300, maxiter=self.max_iter)

        return float(root)


class RhoEvaluator(object):
    """Piecewise evaluation of the Dickman-de Bruijn function.

    On each interval [k, k+1] the function is stored as a power
    series in t = k + 1 - u. The delay equation u rho'(u) =
    -rho(u-1) gives the recursion

        a[k][i+1] = (a[k-1][i] + i*a[k][i]) / ((k+1)(i+1)),

    and the integral form (k+1) rho(k+1) = int_k^{k+1} rho gives
    the constant term as a positive sum. All coefficients are
    positive, so the table is accurate in relative terms far
    below double precision range; coefficients are mpmath
    numbers.
    """

    def __init__(self,
                 max_u=RHO_MAX_U,
                 tail_switch=RHO_TAIL_SWITCH,
                 tol=RHO_TOL,
                 dps=RHO_PRECISION_DPS):
        """Initialization.

        Parameters
        ----------
        max_u : float
            Largest u covered by the piecewise table.
        tail_switch : float
            Values for u beyond this point come from the
            saddle-point asymptotic and are flagged approximate.
        tol : float
            Absolute accuracy target.
        dps : int
            Decimal digits used for coefficients.
        """

        self.logger = logging.getLogger('timestamp')

        if tail_switch > max_u:
            raise DomainError('tail_switch must not exceed max_u.')

        self.max_u = float(max_u)
        self.tail_switch = float(tail_switch)
        self.tol = tol
        self.dps = dps
        self.xi_solver = XiSolver()

        self.pieces = self._build_pieces(int(math.ceil(self.max_u)))

    def _build_pieces(self, num_pieces):
        """Build power series coefficients for [k, k+1], k < num_pieces."""

        with mpmath.workdps(self.dps):
            rel_cut = mpmath.mpf(10) ** (-self.dps)
            pieces = [[mpmath.mpf(1)]]
            for k in range(1, num_pieces):
                prev = pieces[k - 1]
                scale = k + 1

                coeffs = [mpmath.mpf(0), prev[0] / scale]
                i = 1
                while True:
                    b_i = prev[i] if i < len(prev) else 0
                    a_next = (b_i + i * coeffs[i]) / (scale * (i + 1))
                    coeffs.append(a_next)
                    i += 1
                    if a_next < rel_cut * coeffs[1] and i >= len(prev):
                        break

                coeffs[0] = mpmath.fsum(c / (j + 1) for j, c in enumerate(coeffs) if j > 0) / k
                pieces.append(coeffs)

        self.logger.debug('Built rho table with %d pieces.' % len(pieces))
        return pieces

    def _locate(self, u):
        """Piece index k and local coordinate t for 1 < u <= max_u."""
        k = int(math.ceil(u)) - 1
        with mpmath.workdps(self.dps):
            t = mpmath.mpf(k + 1) - mpmath.mpf(u)
        return k, t

    def _check_u(self, u):
        check_finite(u, 'u')
        if u < 0:
            raise DomainError('rho(u) requires u >= 0: %s' % u)

    def rho_exact(self, u):
        """Piecewise value of rho(u) for 0 <= u <= max_u."""

        self._check_u(u)
        if u <= 1:
            return mpmath.mpf(1)
        if u > self.max_u:
            raise DomainError('u beyond tabulated range %g: %s' % (self.max_u, u))

        k, t = self._locate(u)
        with mpmath.workdps(self.dps):
            return mpmath.polyval(self.pieces[k][::-1], t)

    def rho_asymptotic(self, u):
        """Saddle-point asymptotic sqrt(xi'/(2 pi)) exp(gamma - u xi + Ei(xi))."""

        if u <= 1:
            raise DomainError('Asymptotic form requires u > 1: %s' % u)

        xi = self.xi_solver.solve(u)
        with mpmath.workdps(self.dps):
            u = mpmath.mpf(u)
            xi = mpmath.mpf(xi)
            xi_prime = xi / (1 + u * xi - u)
            return mpmath.sqrt(xi_prime / (2 * mpmath.pi)) * mpmath.exp(mpmath.euler - u * xi + mpmath.ei(xi))

    def evaluate(self, u):
        """Evaluate rho(u) with metadata.

        Returns
        -------
        RhoValue
            Value and a flag set when the asymptotic form was used.
        """

        self._check_u(u)
        if u > self.tail_switch:
            return RhoValue(u, self.rho_asymptotic(u), True)

        return RhoValue(u, self.rho_exact(u), False)

    def rho(self, u):
        """Dickman-de Bruijn function rho(u) as an mpmath number."""
        return self.evaluate(u).value

    def rho_deriv(self, u):
        """Derivative rho'(u).

        Zero on [0, 1); undefined at the knot u = 1.
        """

        check_finite(u, 'u')
        if u < 0 or u == 1:
            raise DomainError('rho_deriv(u) undefined at u = %s' % u)
        if u < 1:
            return mpmath.mpf(0)
        if u > self.max_u:
            return -self.xi_solver.solve(u) * self.rho_asymptotic(u)

        k, t = self._locate(u)
        coeffs = self.pieces[k]
        with mpmath.workdps(self.dps):
            deriv = [i * c for i, c in enumerate(coeffs)][1:]
            return -mpmath.polyval(deriv[::-1], t)

    def _piece_integral(self, k, u_lo, u_hi):
        """Integral of piece k over [u_lo, u_hi] inside [k, k+1]."""

        with mpmath.workdps(self.dps):
            t_lo = mpmath.mpf(k + 1) - mpmath.mpf(u_hi)
            t_hi = mpmath.mpf(k + 1) - mpmath.mpf(u_lo)
            return mpmath.fsum(c * (t_hi ** (i + 1) - t_lo ** (i + 1)) / (i + 1)
                               for i, c in enumerate(self.pieces[k]))

    def rho_integral(self, a, b):
        """Exact piecewise integral of rho over [a, b], 0 <= a <= b <= max_u."""

        check_finite(a, 'a')
        check_finite(b, 'b')
        if a < 0 or b < a:
            raise DomainError('rho_integral requires 0 <= a <= b: (%s, %s)' % (a, b))
        if b > self.max_u:
            raise DomainError('Upper limit beyond tabulated range %g: %s' % (self.max_u, b))

        with mpmath.workdps(self.dps):
            total = mpmath.mpf(0)
            if a < 1:
                total += min(b, 1) - mpmath.mpf(a)
                a = 1.0
            if b <= a:
                return total

            k = int(math.floor(a))
            while k < b:
                lo = max(a, k)
                hi = min(b, k + 1)
                if hi > lo:
                    total += self._piece_integral(k, lo, hi)
                k += 1

            return total

    def rho_tail_integral(self, B):
        """Integral of rho over [B, infinity) with its error budget.

        Returns
        -------
        TailIntegral
            Value, an upper bound on the omitted part beyond max_u,
            and a flag set when B lies beyond the table.
        """

        check_finite(B, 'B')
        if B < 0:
            raise DomainError('rho_tail_integral requires B >= 0: %s' % B)

        # rho(u+1) <= rho(u)/u, so the tail past X is at most rho(X) X/(X-1)
        with mpmath.workdps(self.dps):
            if B >= self.max_u:
                value = self.rho_asymptotic(B) / self.xi_solver.solve(B)
                bound = self.rho_asymptotic(B) * B / (B - 1)
                return TailIntegral(B, value, bound, True)

            value = self.rho_integral(B, self.max_u)
            bound = self.rho_exact(self.max_u) * self.max_u / (self.max_u - 1)
            return TailIntegral(B, value, bound, False)

    def rho_perturb_check(self, u, v):
        """Normalised effect of perturbing u by v.

        Parameters
        ----------
        u : float
            Base point, u >= 2.
        v : float
            Perturbation with |v| <= 1/log u.

        Returns
        -------
        PerturbationResidual
            Ratio |rho(u+v)/rho(u) - 1| / (|v| log(u+1)).
        """

        check_finite(u, 'u')
        check_finite(v, 'v')
        if u < 2:
            raise DomainError('rho_perturb_check requires u >= 2: %s' % u)
        if abs(v) > 1.0 / math.log(u):
            raise DomainError('Perturbation |v| must be at most 1/log u: %s' % v)
        if v == 0:
            return PerturbationResidual(u, v, 0.0)

        ratio = self.rho(u + v) / self.rho(u)
        return PerturbationResidual(u, v, float(abs(ratio - 1) / (abs(v) * math.log(u + 1))))

    def rho_shift_trend(self, u, v):
        """Exponent e with rho(u+v) = rho(u) u^(-e v), for 0 < v <= u/log u."""

        check_finite(u, 'u')
        check_finite(v, 'v')
        if u <= 1 or v <= 0 or v > u / math.log(u):
            raise DomainError('rho_shift_trend requires u > 1 and 0 < v <= u/log u.')

        with mpmath.workdps(self.dps):
            exponent = -mpmath.log(self.rho(u + v) / self.rho(u)) / (v * mpmath.log(u))

        return ShiftTrend(u, v, float(exponent))


@functools.lru_cache(maxsize=1)
def default_evaluator():
    """Shared evaluator built with the default configuration."""
    return RhoEvaluator()


def rho(u):
    """rho(u) from the shared evaluator."""
    return default_evaluator().rho(u)


def rho_evaluate(u):
    return default_evaluator().evaluate(u)


def rho_deriv(u):
    return default_evaluator().rho_deriv(u)


def rho_integral(a, b):
    return default_evaluator().rho_integral(a, b)


def rho_tail_integral(B):
    """Integral of rho over [B, infinity) as an mpmath number."""
    return default_evaluator().rho_tail_integral(B).value


def rho_perturb_check(u, v):
    return default_evaluator().rho_perturb_check(u, v)


def rho_shift_trend(u, v):
    return default_evaluator().rho_shift_trend(u, v)


def xi(u):
    """Positive root of e^xi = 1 + u*xi."""
    return default_evaluator().xi_solver.solve(u)
