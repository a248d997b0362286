from dataclasses import dataclass


@dataclass(frozen=True)
class StirlingTable:
    """
    Triangular table a[n][k] of Stirling numbers of the second kind for
    1 <= k <= n <= n_max.

    ``entries`` is padded so the natural indices work directly: entries[n][k], with
    entries[0] = (1,) and entries[n][0] = 0 for n >= 1.
    """
    n_max: int
    entries: tuple

    def get(self, n, k):
        if k > n or k < 1 or n < 1:
            return 0
        return self.entries[n][k]

    def row(self, n):
        """a[n][1..n]"""
        return self.entries[n][1:]

    def rows(self):
        for n in range(1, self.n_max + 1):
            for k in range(1, n + 1):
                yield n, k, self.entries[n][k]
