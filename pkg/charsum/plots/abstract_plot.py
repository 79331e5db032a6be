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

import logging
from pathlib import PurePath
from collections import namedtuple

import matplotlib as mpl
from matplotlib.backends.backend_agg import FigureCanvasAgg as FigureCanvas
from matplotlib.figure import Figure

from charsum.exceptions import CharSumError

IMAGE_FORMATS = ('.png', '.pdf', '.ps', '.eps', '.svg')


class AbstractPlot(FigureCanvas):
    """Base class for off-screen figures."""

    Options = namedtuple('Options', 'width height label_font_size tick_font_size dpi')

    def __init__(self, options=None):
        """Initialization."""

        self.logger = logging.getLogger('timestamp')

        self.options = options or AbstractPlot.Options(6, 4, 10, 8, 300)
        self.set_font_size(self.options.label_font_size, self.options.tick_font_size)

        self.fig = Figure(facecolor='white', dpi=self.options.dpi)
        FigureCanvas.__init__(self, self.fig)

        self.axes_colour = (0.5, 0.5, 0.5)

    @staticmethod
    def set_font_size(label_size, tick_size):
        """Font sizes for labels, titles, legends and ticks."""
        mpl.rcParams.update({'font.size': label_size,
                             'axes.titlesize': label_size,
                             'axes.labelsize': label_size,
                             'legend.fontsize': label_size,
                             'xtick.labelsize': tick_size,
                             'ytick.labelsize': tick_size,
                             'svg.fonttype': 'none'})

    def save_plot(self, filename, dpi=300):
        """Write the figure; the file extension selects the format."""

        path = PurePath(filename)
        if path.suffix not in IMAGE_FORMATS:
            raise CharSumError('Unrecognized image format: %s' % path.suffix)

        self.fig.savefig(path.as_posix(), format=path.suffix[1:], dpi=dpi,
                         facecolor='white', edgecolor='white', bbox_inches='tight')

    def prettify(self, axes):
        """Grey left and bottom spines and ticks; hide the rest."""

        for axis in (axes.xaxis, axes.yaxis):
            for tick in axis.get_major_ticks():
                tick.tick2line.set_visible(False)
            for line in axis.get_ticklines():
                line.set_color(self.axes_colour)

        for loc, spine in axes.spines.items():
            spine.set_color('none' if loc in ('right', 'top') else self.axes_colour)
