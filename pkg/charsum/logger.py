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
import sys
import logging
import ntpath

from charsum.common import make_sure_path_exists

LOG_FORMAT = '[%(asctime)s] %(levelname)s: %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def _reset(name):
    """Fetch a logger with level DEBUG and no handlers attached."""

    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    return logger


def logger_setup(log_dir, log_file, program_name, version, silent):
    """Setup the 'timestamp' and 'no_timestamp' loggers.

    Messages on 'timestamp' carry time and level; 'no_timestamp'
    writes tables verbatim. Both go to stdout, and to log_file
    inside log_dir when log_dir is given. Each logger gets an
    'is_silent' attribute mirroring the silent flag.

    Parameters
    ----------
    log_dir : str
        Output directory for log file.
    log_file : str
        Desired name of log file.
    program_name : str
        Name of program.
    version : str
        Program version number.
    silent : boolean
        Restrict console output to errors.
    """

    formats = {'timestamp': logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT),
               'no_timestamp': None}

    log_path = None
    if log_dir:
        make_sure_path_exists(log_dir)
        log_path = os.path.join(log_dir, log_file)

    for name, fmt in formats.items():
        logger = _reset(name)
        logger.is_silent = bool(silent)

        console = logging.StreamHandler(sys.stdout)
        console.setFormatter(fmt)
        console.setLevel(logging.ERROR if silent else logging.DEBUG)
        logger.addHandler(console)

        if log_path:
            log_handler = logging.FileHandler(log_path, 'a')
            log_handler.setFormatter(fmt)
            logger.addHandler(log_handler)

    timestamp_logger = logging.getLogger('timestamp')
    timestamp_logger.info('%s v%s' % (program_name, version))
    timestamp_logger.info(ntpath.basename(sys.argv[0]) + ' ' + ' '.join(sys.argv[1:]))
