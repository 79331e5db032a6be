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

import argparse

from charsum.common import is_float


class NumberListAction(argparse.Action):
    """Parse a comma separated list of numbers.

    Example:
        <parser>.add_argument('--u', action=NumberListAction, help="comma separated arguments")
    """
    def __call__(self, parser, namespace, values, option_string=None):
        tokens = [t for t in values.replace(' ', '').split(',') if t]
        if not tokens or not all(is_float(t) for t in tokens):
            raise argparse.ArgumentError(self, 'expected comma separated numbers: %s' % values)

        numbers = [int(t) if t.lstrip('-').isdigit() else float(t) for t in tokens]
        setattr(namespace, self.dest, numbers)


class CustomHelpFormatter(argparse.HelpFormatter):
    """Provide a customized format for help output.

    Defaults are appended to help strings and positional
    arguments are shown without duplicated ALLCAPS metavars.
    """

    def _get_help_string(self, action):
        """Place default value in help string."""
        h = action.help or ''
        if '%(default)' in h:
            return h

        if action.default in ('', [], None, argparse.SUPPRESS) or isinstance(action.default, bool):
            return h

        if action.option_strings or action.nargs in (argparse.OPTIONAL, argparse.ZERO_OR_MORE):
            if '\n' in h:
                lines = h.splitlines()
                lines[0] += ' (default: %(default)s)'
                h = '\n'.join(lines)
            else:
                h += ' (default: %(default)s)'

        return h

    def _format_action_invocation(self, action):
        """Removes duplicate ALLCAPS with positional arguments."""
        if not action.option_strings:
            metavar, = self._metavar_formatter(action, action.dest)(1)
            return metavar

        if action.nargs == 0:
            return ', '.join(action.option_strings)

        args_string = self._format_args(action, action.dest.upper())
        return '%s %s' % (', '.join(action.option_strings), args_string)
