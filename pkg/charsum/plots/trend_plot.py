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
from collections import defaultdict

from charsum.plots.abstract_plot import AbstractPlot


class RatioTrendPlot(AbstractPlot):
    """Measured/predicted ratios of theorem probes against q."""

    def __init__(self, options=None):
        AbstractPlot.__init__(self, options)

    def series(self, rows):
        """Group theorem rows into (parity, B) series sorted by q."""

        series = defaultdict(list)
        for row in rows:
            if row.get('probe') != 'theorem':
                continue

            ratio = row.get('ratio')
            if ratio is None or not math.isfinite(ratio):
                self.logger.warning('Skipping non-finite ratio for q = %s.' % row.get('q'))
                continue

            if row.get('degenerate'):
                continue

            series[(row['parity'], row['B'])].append((row['q'], ratio))

        return {key: sorted(points) for key, points in sorted(series.items())}

    def plot(self, rows, title=None):
        """Draw one line per (parity, B) series on a log q axis."""

        self.fig.clear()
        self.fig.set_size_inches(self.options.width, self.options.height)
        axes = self.fig.add_subplot(111)

        for (parity, B), points in self.series(rows).items():
            qs = [p[0] for p in points]
            ratios = [p[1] for p in points]
            axes.plot(qs, ratios, marker='o', ms=4, lw=1, label='%s, B = %g' % (parity, B))

        axes.set_xscale('log')
        axes.axhline(1.0, color=self.axes_colour, lw=0.5, ls='--')
        axes.set_xlabel('q')
        axes.set_ylabel('measured / predicted')
        if title:
            axes.set_title(title)
        if axes.get_legend_handles_labels()[0]:
            axes.legend(frameon=False, fontsize=self.options.tick_font_size)

        self.prettify(axes)
        self.draw()
