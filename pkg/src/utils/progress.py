"""
Module: Run progress

Public Classes:
    Progress : Work-item progress with an ETA
    TotalTime: Total time taken by the run
"""

from dataclasses import dataclass, field
from time import time

from progbar import progress_percent, progress_str


@dataclass
class Progress:
    """
    Work-item progress with an ETA

    Args:
        total (int): Total number of work items

    Public Attributes:
        total      (int)         : Total number of work items
        current    (int)         : Number of finished items
        time_taken (float)       : Wall time spent on finished items
        string     (readonly str): "current/total" representation
        percent    (readonly str): Percent representation
        eta        (readonly str): Remaining time extrapolated from the
            mean item duration

    Public Methods:
        tick: Record one finished item
        line: Status line for `progbar.clear_print_clearable`
    """

    total: int
    current: int = 0
    time_taken: float = 0.0

    @property
    def string(self) -> str:
        return progress_str(self.current, self.total)

    @property
    def percent(self) -> str:
        return progress_percent(self.current, self.total)

    @property
    def eta(self) -> str:
        done = self.current or 1
        return _remaining_str(self.time_taken / done * (self.total - self.current))

    def tick(self, seconds: float) -> None:
        """
        Record one finished item

        Args:
            seconds (float): Wall time the item took
        """
        self.current += 1
        self.time_taken += seconds

    def line(self, label: str) -> str:
        """
        Status line for `progbar.clear_print_clearable`

        Args:
            label (str): What is being processed

        Returns:
            (str): "<percent> <eta> [<current>/<total>] <label>"
        """
        return f"{self.percent} {self.eta} [{self.string}] {label}"


@dataclass
class TotalTime:
    """
    Total time taken by the run

    Public Attributes:
        start  (float)       : Unix timestamp when the run started
        string (readonly str): Elapsed wall time as "H:MM:SS.mmm"
    """

    start: float = field(default_factory=time)

    @property
    def string(self) -> str:
        return _elapsed_str(time() - self.start)


def _elapsed_str(seconds: float) -> str:
    """
    Wall time of a whole experiment, millisecond resolution

    Args:
        seconds (float): Elapsed seconds

    Returns:
        (str): "H:MM:SS.mmm"
    """
    minutes, millis = divmod(round(seconds * 1_000), 60_000)
    hours, minutes = divmod(minutes, 60)
    return f"{hours}:{minutes:02}:{millis // 1_000:02}.{millis % 1_000:03}"


def _remaining_str(seconds: float) -> str:
    hours, rest = divmod(round(seconds), 3_600)
    minutes, secs = divmod(rest, 60)
    if hours:
        return f"{hours}h{minutes:02}m"
    return f"{minutes}m{secs:02}s" if minutes else f"{secs}s"
