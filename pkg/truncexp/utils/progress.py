import time
from typing import Callable, Optional


def make_progress_pacer(
    progress_cb: Optional[Callable[[str, int], None]] = None, interval_sec: float = 0.5
):
    """
    Return a function `update_progress_maybe(msg=None, pct=None, force=False)`
    that coalesces progress updates to at most one per `interval_sec`.
    """
    last = [float("-inf")]

    def update_progress_maybe(
        msg: Optional[str] = None, pct: Optional[int] = None, *, force: bool = False
    ):
        now = time.perf_counter()
        if force or (now - last[0]) >= interval_sec:
            if progress_cb and (msg is not None or pct is not None):
                try:
                    progress_cb(msg or "", 0 if pct is None else int(pct))
                except Exception:
                    pass
            last[0] = now

    return update_progress_maybe
