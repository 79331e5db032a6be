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

import time


class TimeKeeper(object):
    """Wall-clock timing of named experiment stages."""

    def __init__(self):
        """Initialization."""
        self.start_timer()

    def start_timer(self):
        """Restart the clock and forget recorded stages."""
        self.start_time = time.perf_counter()
        self.last_mark = self.start_time
        self.stages = []

    def mark(self, stage=None):
        """Close the current stage; returns (stage seconds, total seconds)."""
        now = time.perf_counter()
        stage_secs = now - self.last_mark
        self.last_mark = now
        if stage:
            self.stages.append((stage, stage_secs))

        return stage_secs, now - self.start_time

    def total_seconds(self):
        return time.perf_counter() - self.start_time

    @staticmethod
    def seconds_to_str(seconds):
        """Format seconds as H:MM:SS.mmm."""
        millis = int(round(seconds * 1000))
        hours, millis = divmod(millis, 3600 * 1000)
        minutes, millis = divmod(millis, 60 * 1000)
        secs, millis = divmod(millis, 1000)
        return '%d:%02d:%02d.%03d' % (hours, minutes, secs, millis)
