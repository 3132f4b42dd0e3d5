"""Worker team and point-to-point channel.

Workers are threads of the current process.  They exchange data only
through :class:`QueueChannel`, so a multi-process transport can replace it
without touching the halo logic.
"""

import queue
from concurrent.futures import ThreadPoolExecutor

# Seconds a receive may block before the exchange is declared dead.
RECV_TIMEOUT = 120.0


class QueueChannel:
    """Mailboxes keyed by ``(source, destination, tag)``."""

    def __init__(self, workers):
        self.workers = workers
        self._boxes = {}

    def _box(self, src, dst, tag):
        key = (src, dst, tag)
        # dict.setdefault is atomic under the GIL
        return self._boxes.setdefault(key, queue.SimpleQueue())

    def send(self, src, dst, tag, payload):
        self._box(src, dst, tag).put(payload)

    def recv(self, dst, src, tag, timeout=RECV_TIMEOUT):
        try:
            return self._box(src, dst, tag).get(timeout=timeout)
        except queue.Empty:
            raise TimeoutError(
                f"rank {dst} timed out waiting for {tag!r} from rank {src}") from None


class Team:
    """Runs one task per rank and returns the results in rank order.

    Every call to :meth:`run` is a collective: all ranks start, and the call
    returns only when all have finished.  With a single worker the task runs
    inline on the calling thread.
    """

    def __init__(self, workers):
        self.workers = workers
        self.channel = QueueChannel(workers)
        self._pool = None
        if workers > 1:
            self._pool = ThreadPoolExecutor(max_workers=workers,
                                            thread_name_prefix="odeflow-rank")

    def run(self, fn):
        if self._pool is None:
            return [fn(0)]
        futures = [self._pool.submit(fn, r) for r in range(self.workers)]
        return [f.result() for f in futures]

    def shutdown(self):
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None
