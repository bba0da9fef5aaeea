"""Itineraries and kneading sequences.

A point right of the divider gets ``+``, left of it ``-``; points inside the
divider band get ``?`` unless a tie can be resolved along the unstable
manifold.
"""

from dataclasses import dataclass
import math

import numpy as np

from .conditions import require_structure
from .core import eval_map, inverse, max_expansion
from .geometry import GeometryError, turning_point_data
from .precision import divider_eps, real, significant_digits

PLUS, MINUS, AMBIGUOUS = "+", "-", "?"


@dataclass(frozen=True)
class SymbolSequence:
    symbols: str
    reliable_length: int
    zero_index: int = 0

    def __str__(self):
        return self.symbols

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, item):
        return self.symbols[item]

    @property
    def forward(self):
        return self.symbols[self.zero_index:]

    @property
    def backward(self):
        return self.symbols[:self.zero_index]


def symbol(x, eps=None):
    eps = divider_eps() if eps is None else eps
    if x > eps:
        return PLUS
    if x < -eps:
        return MINUS
    return AMBIGUOUS


def reliable_length(params):
    """Number of forward symbols roundoff cannot flip: digits / log10(max expansion)."""
    return int(math.floor(significant_digits() / math.log10(float(max_expansion(params)))))


def _cap_reliable(symbols, budget):
    first_tie = symbols.find(AMBIGUOUS)
    limit = len(symbols) if first_tie < 0 else first_tie
    return min(limit, budget)


def itinerary(params, p, n_fwd, n_back=0, radius=1e3):
    """Symbols of F^k(p) for k = -n_back .. n_fwd - 1 (``zero_index`` marks k = 0)."""
    require_structure(params)
    back = []
    q = (real(p[0]), real(p[1]))
    for k in range(n_back):
        q = inverse(params, q)
        if not (abs(q[0]) < radius and abs(q[1]) < radius):
            raise GeometryError(f"backward orbit diverged at index {-(k + 1)}")
        back.append(symbol(q[0]))
    fwd = []
    q = (real(p[0]), real(p[1]))
    for _ in range(n_fwd):
        fwd.append(symbol(q[0]))
        q = eval_map(params, q)
    symbols = "".join(reversed(back)) + "".join(fwd)
    budget = n_back + reliable_length(params)
    return SymbolSequence(symbols, _cap_reliable(symbols, budget), zero_index=n_back)


def point_kneading(params, point, length, tangents=()):
    """Forward itinerary of a turning point with the one-sided tie rule.

    ``tangents`` are unit vectors along the unstable manifold on either side
    of ``point``.  When an iterate falls in the divider band, nearby manifold
    points at arc distance ``10 * eps`` are iterated as well; if they agree on
    a half-plane that symbol is used, otherwise ``?`` is recorded.
    """
    eps = divider_eps()
    h = real(10 * eps)
    q = (real(point[0]), real(point[1]))
    probes = [(q[0] + h * real(t[0]), q[1] + h * real(t[1])) for t in tangents if t is not None]
    out = []
    for _ in range(length):
        s = symbol(q[0], eps)
        if s == AMBIGUOUS and probes:
            sides = {PLUS if r[0] > 0 else MINUS if r[0] < 0 else AMBIGUOUS for r in probes}
            if len(sides) == 1:
                s = sides.pop()
        out.append(s)
        q = eval_map(params, q)
        probes = [eval_map(params, r) for r in probes]
    symbols = "".join(out)
    return SymbolSequence(symbols, _cap_reliable(symbols, reliable_length(params)))


def kneading_sequence(params, turning_index, length):
    """Kneading sequence of the ``turning_index``-th turning point (0 is F(D), 1 is S)."""
    if turning_index < 0:
        raise ValueError("turning_index must be >= 0")
    tp = turning_point_data(params, turning_index + 1)[turning_index]
    return point_kneading(params, tp.point, length, tangents=(tp.back, tp.ahead))


def compare_sequences(sa, sb):
    """Index of the first mismatch, ``?`` matching anything; None when equal up to the shorter length."""
    for i, (x, y) in enumerate(zip(str(sa), str(sb))):
        if x != y and AMBIGUOUS not in (x, y):
            return i
    return None


def orbit_symbols(orbit):
    """Sign codes (+1 / -1 / 0) of the x-coordinates along a stored orbit."""
    x = np.asarray(orbit)[:, 0]
    eps = divider_eps()
    return np.where(x > eps, 1, np.where(x < -eps, -1, 0)).astype(np.int8)


def agreement_radius(codes, i, j, max_n):
    """Largest N <= max_n with codes[i-N .. i+N] == codes[j-N .. j+N]; -1 if codes differ at 0.

    Zero codes (divider band) never agree, to stay on the safe side.
    """
    n_total = len(codes)
    for n in range(max_n + 1):
        for k in (n, -n):
            ii, jj = i + k, j + k
            if not (0 <= ii < n_total and 0 <= jj < n_total):
                return n - 1
            if codes[ii] == 0 or codes[ii] != codes[jj]:
                return n - 1
    return max_n
