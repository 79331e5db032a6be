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


class CharSumError(Exception):
    def __init__(self, msg):
        Exception.__init__(self, msg)


class DomainError(CharSumError):
    """Argument lies outside the domain of the operation."""
    def __init__(self, msg):
        CharSumError.__init__(self, msg)


class CapacityError(CharSumError):
    """Requested work exceeds a configured capacity."""
    def __init__(self, msg):
        CharSumError.__init__(self, msg)


class ValidationError(CharSumError):
    """Input is malformed, e.g. a composite modulus."""
    def __init__(self, msg):
        CharSumError.__init__(self, msg)


class PreconditionError(CharSumError):
    """A checked precondition of the operation failed."""
    def __init__(self, msg):
        CharSumError.__init__(self, msg)


class ConfigError(CharSumError):
    """Experiment configuration document is invalid."""
    def __init__(self, msg):
        CharSumError.__init__(self, msg)
