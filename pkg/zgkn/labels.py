"""Spectroscopic labels n l_j (m_j) for zGKN states.

The map between winding indices and labels goes through the a=0 quantum
numbers: N from N_theta, M = N_omega, then the spin-orbit number k.
"""

import re
from dataclasses import dataclass

from .errors import InvalidIndex, InvalidLabel
from .model import StateIndex

LETTERS = "spdfghiklmnoqrtuv"

_LABEL_RE = re.compile(
    r"^\s*(?P<n>\d+)(?P<letter>[a-z])(?P<two_j>\d+)/2"
    r"(?:\s*\(\s*mj\s*=\s*(?P<two_mj>[+-]?\d+)/2\s*\))?\s*$"
)


def _sign(x):
    return 1 if x > 0 else -1


@dataclass(frozen=True, order=True)
class SpectroLabel:
    n: int
    l: int
    two_j: int
    two_mj: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidLabel(f"n must be at least 1, got {self.n}")
        if not 0 <= self.l <= self.n - 1:
            raise InvalidLabel(f"l={self.l} must lie in 0..{self.n - 1}")
        if self.two_j <= 0 or self.two_j % 2 == 0:
            raise InvalidLabel(f"2j must be a positive odd integer, got {self.two_j}")
        if self.two_j not in (2 * self.l - 1, 2 * self.l + 1):
            raise InvalidLabel(f"j={self.two_j}/2 is not l +- 1/2 for l={self.l}")
        if self.two_mj % 2 == 0 or abs(self.two_mj) > self.two_j:
            raise InvalidLabel(f"mj={self.two_mj}/2 is not allowed for j={self.two_j}/2")
        if self.l >= len(LETTERS):
            raise InvalidLabel(f"no spectroscopic letter for l={self.l}")

    @property
    def letter(self):
        return LETTERS[self.l]

    @property
    def k(self):
        """Spin-orbit quantum number: negative for j = l + 1/2."""
        magnitude = (self.two_j + 1) // 2
        return -magnitude if self.two_j == 2 * self.l + 1 else magnitude

    @property
    def term(self):
        return f"{self.n}{self.letter}{self.two_j}/2"

    @property
    def mj(self):
        return f"{self.two_mj}/2"

    def as_dict(self):
        return {
            "term": self.term,
            "mj": self.mj,
            "n": self.n,
            "l": self.l,
            "two_j": self.two_j,
            "two_mj": self.two_mj,
        }


def winding_to_label(index):
    n_theta, n_omega = index.n_theta, index.n_omega
    if n_omega < 0:
        raise InvalidIndex(f"{index} has N_omega < 0; no a=0 counterpart")
    N = n_theta + 1 if n_theta >= 0 else n_theta
    k = -N - _sign(N) * (abs(index.two_kappa) - 1) // 2
    n = n_omega + abs(k)
    l = abs(k) if k > 0 else abs(k) - 1
    if l > n - 1:
        raise InvalidIndex(f"{index} maps to k={k}, M={n_omega}: l={l} exceeds n-1={n - 1}")
    return SpectroLabel(n=n, l=l, two_j=2 * abs(k) - 1, two_mj=index.two_kappa)


def label_to_winding(label):
    if not isinstance(label, SpectroLabel):
        raise InvalidLabel(f"expected a SpectroLabel, got {label!r}")
    k = label.k
    M = label.n - abs(k)
    if M < 0 or (k > 0 and M == 0):
        raise InvalidLabel(f"{format_label(label)} has no bound state (k={k}, M={M})")
    N = -_sign(k) * (abs(k) - (abs(label.two_mj) - 1) // 2)
    n_theta = N - 1 if N > 0 else N
    return StateIndex(n_theta=n_theta, n_omega=M, two_kappa=label.two_mj)


def format_label(label, show_mj=True):
    if not show_mj:
        return label.term
    return f"{label.term} (mj={label.two_mj}/2)"


def parse_label(text, two_mj=None):
    """Read "2p1/2 (mj=-1/2)"; `two_mj` supplies m_j when the text has none."""
    match = _LABEL_RE.match(text)
    if match is None:
        raise InvalidLabel(f"cannot parse label {text!r}")
    letter = match.group("letter")
    if letter not in LETTERS:
        raise InvalidLabel(f"unknown orbital letter {letter!r} in {text!r}")
    if match.group("two_mj") is not None:
        two_mj = int(match.group("two_mj"))
    elif two_mj is None:
        raise InvalidLabel(f"label {text!r} does not give mj")
    return SpectroLabel(
        n=int(match.group("n")),
        l=LETTERS.index(letter),
        two_j=int(match.group("two_j")),
        two_mj=two_mj,
    )


def enumerate_labels(nmax):
    """Every (n, l, j, m_j) with n <= nmax, ordered by n, l, j, m_j."""
    labels = []
    for n in range(1, nmax + 1):
        for l in range(n):
            for two_j in (2 * l - 1, 2 * l + 1):
                if two_j <= 0:
                    continue
                for two_mj in range(-two_j, two_j + 1, 2):
                    labels.append(SpectroLabel(n, l, two_j, two_mj))
    return labels
