"""
Thread fan-out for the embarrassingly parallel loops (instance chunks,
Monte-Carlo batches, output configurations).

Work is always split into the same chunks whatever the thread count, and
results come back in chunk order, so sums built from them don't depend on
scheduling. numpy releases the GIL in most of the heavy array operations we
use, which is what makes threads worthwhile here.
"""

import os
from queue import Empty, Queue
from threading import Thread

THREADS_ENV = "SPECMODE_THREADS"


def thread_count():
    value = os.environ.get(THREADS_ENV)
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            pass
    return os.cpu_count() or 1


def return_to_queue(func, queue, index, *args):
    try:
        queue.put((index, func(*args), None))
    except Exception as e:
        queue.put((index, None, e))


def ordered_map(func, items, threads=None):
    """
    Apply func to every item and return the results as a list in item order.
    The first exception raised by any call is re-raised here.
    """
    items = list(items)
    if threads is None:
        threads = thread_count()
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    work = Queue()
    for index, item in enumerate(items):
        work.put((index, item))

    results = Queue()

    def worker():
        while True:
            try:
                index, item = work.get_nowait()
            except Empty:
                return
            return_to_queue(func, results, index, item)

    workers = [Thread(target=worker, daemon=True) for _ in range(min(threads, len(items)))]
    for t in workers:
        t.start()

    ordered = [None] * len(items)
    error = None
    for _ in range(len(items)):
        index, value, e = results.get()
        if e is not None and error is None:
            error = e
        ordered[index] = value
    for t in workers:
        t.join()
    if error is not None:
        raise error
    return ordered
