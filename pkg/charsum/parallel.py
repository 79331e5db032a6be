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

import sys
import logging
import traceback
import multiprocessing as mp

from charsum.exceptions import CharSumError


def _worker(callback, tasks, results):
    """Drain (index, item) pairs from tasks until the None sentinel."""

    for index, item in iter(tasks.get, None):
        try:
            results.put((index, True, callback(item)))
        except Exception:
            results.put((index, False, traceback.format_exc()))


class Parallel(object):
    """Evaluates a function over work items with a pool of processes.

    Worker processes produce results and the calling process
    consumes them, so everything returned stays in its address
    space. Items carry their input position and results are put
    back in input order, making the output independent of
    scheduling. The callback must be a module-level function so
    it pickles under any start method.

    Example:

        def _square(x):
            return x * x

        squares = Parallel(cpus=2).run(_square, [1, 2, 3, 4, 5])
    """

    def __init__(self, cpus=1):
        """Initialization.

        cpus : int
            Number of worker processes.
        """

        self.logger = logging.getLogger('timestamp')

        self.cpus = max(1, int(cpus))

    @staticmethod
    def _report(progress, done, total):
        if progress:
            sys.stdout.write('%s\r' % progress(done, total))
            sys.stdout.flush()

    def _run_serial(self, producer, data_items, progress):
        results = []
        for i, item in enumerate(data_items):
            self._report(progress, i, len(data_items))
            results.append(producer(item))

        return results

    def run(self, producer, data_items, progress=None):
        """Apply producer to every data item.

        Parameters
        ----------
        producer : function
            Module-level function of one data item.
        data_items : iterable
            Data items to process.
        progress : function
            Maps (processed, total) to a progress string.

        Returns
        -------
        list
            Producer results in input order.

        Raises
        ------
        CharSumError
            If the producer raised in a worker; the traceback of the
            failing item with the lowest index is logged.
        """

        data_items = list(data_items)
        total = len(data_items)
        if self.cpus == 1 or total <= 1:
            results = self._run_serial(producer, data_items, progress)
            if progress:
                sys.stdout.write('\n')
            return results

        num_workers = min(self.cpus, total)
        tasks = mp.Queue()
        results = mp.Queue()
        for task in enumerate(data_items):
            tasks.put(task)
        for _ in range(num_workers):
            tasks.put(None)

        workers = [mp.Process(target=_worker, args=(producer, tasks, results))
                   for _ in range(num_workers)]
        for w in workers:
            w.start()

        collected = {}
        failures = []
        try:
            for done in range(total):
                self._report(progress, done, total)
                index, ok, value = results.get(block=True, timeout=None)
                if ok:
                    collected[index] = value
                else:
                    failures.append((index, value))
        except BaseException:
            self.logger.warning('Terminating worker processes.')
            for w in workers:
                w.terminate()
            raise
        finally:
            if progress:
                sys.stdout.write('\n')

        for w in workers:
            w.join()

        if failures:
            index, tb = min(failures)
            self.logger.error('Work item %d failed:\n%s' % (index, tb))
            raise CharSumError('Work item %d failed in worker process.' % index)

        return [collected[i] for i in range(total)]
