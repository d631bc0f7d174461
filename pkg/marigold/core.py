"""
Weighted tournament data model.

An n-weighted tournament on m alternatives is an m x m integer matrix w with a
zero diagonal and w[x][y] + w[y][x] = n for every pair. Everything else in
Marigold (winning sets, flow networks, MoV solvers, generators) consumes the
types defined here.

Alternatives are dense 0-based indices. Human-readable names ride along in a
label tuple that survives remove_alternative, so files and the CLI can keep
talking about "a", "b", "c" while the algorithms work on integers.
"""

import logging
import string
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .utils.errors import PreconditionError, TournamentError

logger = logging.getLogger(__name__)

# Keeps n * m * m comfortably inside int64 for every sum the solvers form
_MAX_MAGNITUDE = 2 ** 60


def default_labels(m: int) -> Tuple[str, ...]:
    """Letters for small tournaments, x0..x{m-1} otherwise."""
    if m <= len(string.ascii_lowercase):
        return tuple(string.ascii_lowercase[:m])
    return tuple(f"x{i}" for i in range(m))


def _frozen_int_matrix(values: Any, what: str) -> np.ndarray:
    matrix = np.array(values, dtype=np.int64, copy=True)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise TournamentError(f"{what} must be a square matrix, got shape {matrix.shape}")
    matrix.setflags(write=False)
    return matrix


# ======================================================================
# Tournament
# ======================================================================

@dataclass(frozen=True, eq=False)
class WeightedTournament:
    """
    An n-weighted tournament.

    Attributes:
        n: total weight shared by every pair of alternatives.
        w: read-only m x m matrix, w[x][y] = weight of x over y.
        labels: display names, one per alternative.
    """

    n: int
    w: np.ndarray
    labels: Tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        w = _frozen_int_matrix(self.w, "weight matrix")
        object.__setattr__(self, 'w', w)
        object.__setattr__(self, 'n', int(self.n))
        m = w.shape[0]
        labels = tuple(str(label) for label in self.labels) if self.labels else default_labels(m)
        object.__setattr__(self, 'labels', labels)
        self._validate()

    def _validate(self) -> None:
        m, n, w = self.m, self.n, self.w
        if m < 1:
            raise TournamentError("a tournament needs at least one alternative")
        if n < 1:
            raise TournamentError(f"n must be at least 1, got {n}")
        if n * m * m >= _MAX_MAGNITUDE:
            raise TournamentError(f"n={n}, m={m} overflow the integer range")
        if len(self.labels) != m:
            raise TournamentError(f"expected {m} labels, got {len(self.labels)}")
        if len(set(self.labels)) != m:
            raise TournamentError("labels must be unique")
        if np.any(np.diag(w) != 0):
            raise TournamentError("diagonal weights must be zero")
        if np.any(w < 0) or np.any(w > n):
            raise TournamentError(f"weights must lie in 0..{n}")
        off_diagonal = ~np.eye(m, dtype=bool)
        if np.any((w + w.T)[off_diagonal] != n):
            x, y = np.argwhere(((w + w.T) != n) & off_diagonal)[0]
            raise TournamentError(
                f"w[{x}][{y}] + w[{y}][{x}] = {w[x, y] + w[y, x]}, expected {n}")

    # ------------------------------------------------------------------
    @property
    def m(self) -> int:
        return int(self.w.shape[0])

    @property
    def alternatives(self) -> range:
        return range(self.m)

    def weight(self, x: int, y: int) -> int:
        return int(self.w[x, y])

    def margins(self) -> np.ndarray:
        """Full margin matrix w - w^T."""
        return self.w - self.w.T

    def label(self, x: int) -> str:
        return self.labels[x]

    def index(self, label: str) -> int:
        """Look up an alternative by label, or by its decimal index."""
        if label in self.labels:
            return self.labels.index(label)
        if label.isdigit() and int(label) < self.m:
            return int(label)
        raise PreconditionError(f"unknown alternative {label!r}; known: {' '.join(self.labels)}")

    def check_alternative(self, x: int) -> None:
        if not 0 <= x < self.m:
            raise PreconditionError(f"alternative index {x} out of range 0..{self.m - 1}")

    # ------------------------------------------------------------------
    @classmethod
    def from_pairs(cls, m: int, n: int, weights: Mapping[Tuple[int, int], int],
                   labels: Sequence[str] = (), default: Optional[int] = None) -> "WeightedTournament":
        """
        Build from w(x,y) for a set of ordered pairs; complements are forced.

        Pairs not mentioned get `default` (n // 2 when omitted, which needs an
        even n to be a valid tie).
        """
        w = np.zeros((m, m), dtype=np.int64)
        filled = np.eye(m, dtype=bool)
        for (x, y), value in weights.items():
            if x == y:
                raise TournamentError(f"self pair ({x},{x}) given")
            w[x, y] = value
            w[y, x] = n - value
            filled[x, y] = filled[y, x] = True
        if not filled.all():
            fill = n // 2 if default is None else default
            for x, y in np.argwhere(~filled):
                if x < y:
                    w[x, y] = fill
                    w[y, x] = n - fill
        return cls(n=n, w=w, labels=tuple(labels))

    @classmethod
    def tied(cls, m: int, n: int) -> "WeightedTournament":
        """Every pair split n/2 : n/2 (n must be even)."""
        if n % 2:
            raise TournamentError("an all-tied tournament needs even n")
        w = np.full((m, m), n // 2, dtype=np.int64)
        np.fill_diagonal(w, 0)
        return cls(n=n, w=w)

    def relabel(self, permutation: Sequence[int]) -> "WeightedTournament":
        """Isomorphic copy: alternative i of the result is permutation[i] here."""
        perm = np.asarray(permutation, dtype=np.int64)
        return WeightedTournament(n=self.n, w=self.w[np.ix_(perm, perm)],
                                  labels=tuple(self.labels[i] for i in perm))

    # ------------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedTournament):
            return NotImplemented
        return (self.n == other.n and self.labels == other.labels
                and np.array_equal(self.w, other.w))

    def __hash__(self) -> int:
        return hash((self.n, self.labels, self.w.tobytes()))

    def __repr__(self) -> str:
        return f"WeightedTournament(m={self.m}, n={self.n}, labels={' '.join(self.labels)})"


# ======================================================================
# Reversal functions
# ======================================================================

@dataclass(frozen=True, eq=False)
class ReversalFunction:
    """
    Antisymmetric weight change r; the reversed tournament has w + r.

    r[x][y] > 0 means r[x][y] units of weight move to x from y.
    """

    r: np.ndarray

    def __post_init__(self) -> None:
        r = _frozen_int_matrix(self.r, "reversal matrix")
        object.__setattr__(self, 'r', r)
        if np.any(np.diag(r) != 0):
            raise TournamentError("reversal diagonal must be zero")
        if np.any(r != -r.T):
            raise TournamentError("reversal function must be antisymmetric")

    @property
    def m(self) -> int:
        return int(self.r.shape[0])

    @property
    def size(self) -> int:
        return reversal_size(self)

    @classmethod
    def zero(cls, m: int) -> "ReversalFunction":
        return cls(np.zeros((m, m), dtype=np.int64))

    @classmethod
    def from_entries(cls, m: int, entries: Mapping[Tuple[int, int], int]) -> "ReversalFunction":
        """Entries {(x, y): k} set r[x][y] += k and r[y][x] -= k."""
        r = np.zeros((m, m), dtype=np.int64)
        for (x, y), amount in entries.items():
            if x == y:
                raise TournamentError(f"reversal on self pair ({x},{x})")
            r[x, y] += amount
            r[y, x] -= amount
        return cls(r)

    @classmethod
    def between(cls, before: WeightedTournament, after: WeightedTournament) -> "ReversalFunction":
        """The reversal that turns `before` into `after`."""
        if before.m != after.m or before.n != after.n:
            raise TournamentError("tournaments differ in m or n")
        return cls(after.w - before.w)

    def entries(self) -> List[Tuple[int, int, int]]:
        """Positive entries (x, y, amount), sorted."""
        return [(int(x), int(y), int(self.r[x, y])) for x, y in np.argwhere(self.r > 0)]

    def check_against(self, tournament: WeightedTournament) -> None:
        if self.m != tournament.m:
            raise TournamentError(f"reversal is {self.m}x{self.m}, tournament has m={tournament.m}")
        result = tournament.w + self.r
        if np.any(result < 0) or np.any(result > tournament.n):
            x, y = np.argwhere((result < 0) | (result > tournament.n))[0]
            raise TournamentError(
                f"reversal pushes w[{x}][{y}] to {result[x, y]}, outside 0..{tournament.n}")

    def __neg__(self) -> "ReversalFunction":
        return ReversalFunction(-self.r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReversalFunction):
            return NotImplemented
        return np.array_equal(self.r, other.r)

    def __hash__(self) -> int:
        return hash(self.r.tobytes())

    def describe(self, labels: Optional[Sequence[str]] = None) -> str:
        """Human-readable listing such as 'R(d,a)=3, R(c,b)=1'."""
        names = labels or default_labels(self.m)
        parts = [f"R({names[x]},{names[y]})={k}" for x, y, k in self.entries()]
        return ", ".join(parts) if parts else "(empty)"


# ======================================================================
# Margin graph
# ======================================================================

@dataclass(frozen=True)
class MarginGraph:
    """Positive-margin edges of a tournament, each annotated with its margin."""

    m: int
    edges: Dict[Tuple[int, int], int]

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.m))
        for (x, y), value in self.edges.items():
            graph.add_edge(x, y, margin=value)
        return graph


@dataclass
class MovResult:
    """
    Signed margin of victory plus a witness reversal of matching size.

    value is positive for winners (destructive) and negative for non-winners
    (constructive); |value| == witness.size.
    """

    value: int
    witness: ReversalFunction
    solver: str
    alternative: int
    solution: str
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def destructive(self) -> bool:
        return self.value > 0


# ======================================================================
# Operations
# ======================================================================

def margin(tournament: WeightedTournament, x: int, y: int) -> int:
    """w[x][y] - w[y][x]."""
    tournament.check_alternative(x)
    tournament.check_alternative(y)
    if x == y:
        raise PreconditionError("margin needs two distinct alternatives")
    return int(tournament.w[x, y] - tournament.w[y, x])


def margin_graph(tournament: WeightedTournament) -> MarginGraph:
    margins = tournament.margins()
    edges = {(int(x), int(y)): int(margins[x, y]) for x, y in np.argwhere(margins > 0)}
    return MarginGraph(m=tournament.m, edges=edges)


def apply_reversal(tournament: WeightedTournament, reversal: ReversalFunction) -> WeightedTournament:
    """The tournament w + r, after checking capacities."""
    reversal.check_against(tournament)
    return WeightedTournament(n=tournament.n, w=tournament.w + reversal.r, labels=tournament.labels)


def reversal_size(reversal: ReversalFunction) -> int:
    """Total weight moved: sum of the positive entries."""
    return int(reversal.r[reversal.r > 0].sum())


def remove_alternative(tournament: WeightedTournament, x: int) -> WeightedTournament:
    """
    Subtournament without x. Later indices shift down by one; labels keep the
    identity of the survivors.
    """
    tournament.check_alternative(x)
    if tournament.m == 1:
        raise PreconditionError("cannot remove the only alternative")
    keep = [i for i in range(tournament.m) if i != x]
    return WeightedTournament(n=tournament.n, w=tournament.w[np.ix_(keep, keep)],
                              labels=tuple(tournament.labels[i] for i in keep))


def is_condorcet_winner(tournament: WeightedTournament, x: int) -> bool:
    tournament.check_alternative(x)
    margins = tournament.margins()[x]
    return bool(np.all(np.delete(margins, x) > 0))


def is_condorcet_loser(tournament: WeightedTournament, x: int) -> bool:
    tournament.check_alternative(x)
    margins = tournament.margins()[x]
    return bool(np.all(np.delete(margins, x) < 0))


def pairs(m: int) -> List[Tuple[int, int]]:
    """Unordered pairs (x, y), x < y, in lexicographic order."""
    return [(x, y) for x in range(m) for y in range(x + 1, m)]
