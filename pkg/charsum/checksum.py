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

import json
import hashlib


def canonical_json(document):
    """Canonical JSON encoding: sorted keys, compact separators."""
    return json.dumps(document, sort_keys=True, separators=(',', ':'))


def config_hash(document):
    """SHA-256 hex digest of the canonical encoding of a configuration.

    Parameters
    ----------
    document : dict
        Validated experiment configuration.

    Returns
    -------
    str
        Hex digest; equal for documents differing only in key order.
    """

    return hashlib.sha256(canonical_json(document).encode('utf-8')).hexdigest()
