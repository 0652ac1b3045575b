"""Per-artist statistics: summaries, Welch t-tests and pooled distributions."""

from __future__ import annotations

import csv
import io
import logging
import math
import re
from dataclasses import dataclass, field
from typing import Sequence

from scipy.special import betainc

from .errors import EmptyInput, InsufficientData, InsufficientGroups
from .metrics import Distribution, distribution_of

log = logging.getLogger(__name__)

TEST_NAME = "Welch two-sided t-test (unequal variances)"


@dataclass(frozen=True)
class Summary:
    mean: float
    std: float | None  # Bessel-corrected; None for a single value
    count: int


def summarize(values: Sequence[float]) -> Summary:
    if not values:
        raise EmptyInput("cannot summarize an empty sample")
    n = len(values)
    mean = math.fsum(values) / n
    if n < 2:
        return Summary(mean, None, 1)
    var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
    return Summary(mean, math.sqrt(var), n)


def welch_statistic(a: Sequence[float], b: Sequence[float]) -> tuple[float, float]:
    """Welch t statistic and Welch-Satterthwaite degrees of freedom."""
    if len(a) < 2 or len(b) < 2:
        raise InsufficientData("each sample needs at least two values")
    sa, sb = summarize(a), summarize(b)
    va, vb = sa.std**2 / sa.count, sb.std**2 / sb.count
    se2 = va + vb
    if se2 == 0:
        raise ZeroDivisionError("both samples are constant")
    t = (sa.mean - sb.mean) / math.sqrt(se2)
    df = se2**2 / (va**2 / (sa.count - 1) + vb**2 / (sb.count - 1))
    return t, df


def welch_t_test(a: Sequence[float], b: Sequence[float]) -> float:
    """Two-sided p-value of Welch's unequal-variance t-test.

    Two constant samples give 1.0 if they are equal and 0.0 otherwise.
    """
    try:
        t, df = welch_statistic(a, b)
    except ZeroDivisionError:
        return 1.0 if summarize(a).mean == summarize(b).mean else 0.0
    if t == 0:
        return 1.0
    # P(|T| > |t|) = I_{df/(df+t^2)}(df/2, 1/2)
    return float(betainc(df / 2, 0.5, df / (df + t * t)))


@dataclass(frozen=True)
class ArtistSample:
    artist: str
    metric: str
    values: tuple[float, ...]


def acronyms(names: Sequence[str]) -> list[str]:
    """Initials of each name ("B.B. King" -> "BBK"), made unique with a suffix."""
    out, seen = [], {}
    for name in names:
        words = re.findall(r"[A-Za-z0-9]+", name)
        base = "".join(w[0].upper() for w in words) or "X"
        seen[base] = seen.get(base, 0) + 1
        out.append(base if seen[base] == 1 else f"{base}{seen[base]}")
    return out


@dataclass
class TTestMatrix:
    """Lower-triangular p-values: ``pvalues[i][j]`` compares artist i with j < i."""

    artists: list[str]
    metric: str
    pvalues: list[list[float]]
    alpha: float = 0.05
    test: str = TEST_NAME
    flags: list[list[bool]] = field(init=False)

    def __post_init__(self):
        self.flags = [[p <= self.alpha for p in row] for row in self.pvalues]

    def p(self, i: int, j: int) -> float:
        if i == j:
            raise ValueError("no self comparison")
        return self.pvalues[i][j] if i > j else self.pvalues[j][i]

    def significant(self, i: int, j: int) -> bool:
        return self.p(i, j) <= self.alpha

    def to_json(self) -> dict:
        return {
            "metric": self.metric,
            "test": self.test,
            "alpha": self.alpha,
            "artists": self.artists,
            "acronyms": acronyms(self.artists),
            "pvalues": self.pvalues,
            "flags": self.flags,
        }

    def to_csv(self, digits: int = 4) -> str:
        """Lower triangle with acronym headers; significant cells are starred."""
        acr = acronyms(self.artists)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["", *acr[:-1]])
        for i in range(1, len(acr)):
            cells = [f"{p:.{digits}f}{'*' if f else ''}" for p, f in zip(self.pvalues[i], self.flags[i])]
            writer.writerow([acr[i], *cells, *[""] * (len(acr) - 1 - i)])
        return buf.getvalue()


def pairwise_matrix(samples: Sequence[ArtistSample], alpha: float = 0.05) -> TTestMatrix:
    """Welch p-value for every unordered artist pair, in input order.

    Artists with fewer than two values are left out with a warning.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    metrics = {s.metric for s in samples}
    if len(metrics) > 1:
        raise ValueError(f"samples mix metrics {sorted(metrics)}")
    usable = []
    for s in samples:
        if len(s.values) < 2:
            log.warning("leaving out %s: %d value(s) for %s", s.artist, len(s.values), s.metric)
        else:
            usable.append(s)
    if len(usable) < 2:
        raise InsufficientGroups("need at least two artists with two or more values each")
    pvals = [[welch_t_test(usable[i].values, usable[j].values) for j in range(i)] for i in range(len(usable))]
    return TTestMatrix([s.artist for s in usable], usable[0].metric, pvals, alpha)


def _bin(value: float, width: float) -> int:
    # tolerance keeps 0.3 / 0.01 = 29.999999999999996 in bin 30
    return math.floor(value / width + 1e-9)


def pooled_distribution(
    per_solo: Sequence[Sequence[float]], bin_width: float = 0.01, normalize: bool = False
) -> list[Distribution]:
    """One binned distribution (lower bin edges) plus cumulative curve per solo.

    With ``normalize`` each solo's values are first divided by that solo's
    maximum, so solos of different size share the [0, 1] range.
    """
    if bin_width <= 0:
        raise ValueError("bin_width must be positive")
    out = []
    for values in per_solo:
        values = list(values)
        if normalize and values:
            top = max(values)
            if top > 0:
                values = [v / top for v in values]
        bins = [round(_bin(v, bin_width) * bin_width, 12) for v in values]
        out.append(distribution_of(bins) if bins else Distribution((), (), ()))
    return out
