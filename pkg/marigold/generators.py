"""
Stochastic tournament models.

Two models draw the tournament directly (uniform, condorcet-direct); the other
four draw a preference profile of n voters and aggregate it with
profile_to_tournament. All of them take a seed (or a ready numpy Generator) and
are deterministic given it.

Seeding rule: tournament_rng(seed, *key) builds
default_rng(SeedSequence(seed, spawn_key=key)), so the replicate with key
(model, m, n, index) draws the same stream no matter which worker runs it.
"""

import logging
import math
import zlib
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple, Union

import numpy as np

from .core import WeightedTournament
from .utils.config import get_config
from .utils.errors import PreconditionError

logger = logging.getLogger(__name__)

Seed = Union[int, np.random.Generator]


def as_rng(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(np.random.SeedSequence(int(seed)))


def tournament_rng(seed: int, *key: Union[int, str]) -> np.random.Generator:
    """Independent stream for one replicate; string parts are hashed with crc32."""
    spawn_key = tuple(zlib.crc32(part.encode()) if isinstance(part, str) else int(part) for part in key)
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=spawn_key))


# ======================================================================
# Profiles
# ======================================================================

@dataclass(frozen=True)
class PreferenceProfile:
    """
    relations[i, a, b] is True when voter i prefers a to b. Exactly one of
    (a, b), (b, a) holds for every pair; rankings are kept when the voters
    are transitive.
    """

    relations: np.ndarray
    rankings: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        rel = np.asarray(self.relations, dtype=bool)
        if rel.ndim != 3 or rel.shape[1] != rel.shape[2] or rel.shape[0] < 1:
            raise PreconditionError(f"relations must have shape (voters, m, m), got {rel.shape}")
        m = rel.shape[1]
        mirrored = rel.transpose(0, 2, 1)
        off_diagonal = ~np.eye(m, dtype=bool)
        if np.any(rel & mirrored) or not np.all((rel | mirrored)[:, off_diagonal]):
            raise PreconditionError("each voter must order every pair exactly one way")
        object.__setattr__(self, 'relations', rel)

    @property
    def voters(self) -> int:
        return int(self.relations.shape[0])

    @property
    def m(self) -> int:
        return int(self.relations.shape[1])

    @classmethod
    def from_rankings(cls, rankings) -> "PreferenceProfile":
        """rankings[i] lists voter i's alternatives, best first."""
        rankings = np.asarray(rankings, dtype=np.int64)
        voters, m = rankings.shape
        position = np.empty_like(rankings)
        rows = np.arange(voters)[:, None]
        position[rows, rankings] = np.arange(m)[None, :]
        relations = position[:, :, None] < position[:, None, :]
        return cls(relations, rankings)


def profile_to_tournament(profile: PreferenceProfile) -> WeightedTournament:
    """w[a][b] = number of voters preferring a to b; n = number of voters."""
    return WeightedTournament(n=profile.voters, w=profile.relations.sum(axis=0))


# ======================================================================
# Direct models
# ======================================================================

def _orient(m: int, n: int, first_wins: np.ndarray, rng: np.random.Generator) -> WeightedTournament:
    """Winner of each pair i < j gets a weight uniform on ceil(n/2)..n."""
    w = np.zeros((m, m), dtype=np.int64)
    rows, cols = np.triu_indices(m, k=1)
    weights = rng.integers((n + 1) // 2, n + 1, size=rows.size)
    upper = np.where(first_wins, weights, n - weights)
    w[rows, cols] = upper
    w[cols, rows] = n - upper
    return WeightedTournament(n=n, w=w)


def uniform_random(m: int, n: int, seed: Seed) -> WeightedTournament:
    rng = as_rng(seed)
    pair_count = m * (m - 1) // 2
    return _orient(m, n, rng.random(pair_count) < 0.5, rng)


def _check_p(p: float) -> None:
    if not 0.5 <= p <= 1:
        raise PreconditionError(f"p must lie in [0.5, 1], got {p}")


def condorcet_noise_direct(m: int, n: int, p: float, seed: Seed) -> WeightedTournament:
    """Each pair follows the index order with probability p."""
    _check_p(p)
    rng = as_rng(seed)
    pair_count = m * (m - 1) // 2
    return _orient(m, n, rng.random(pair_count) < p, rng)


# ======================================================================
# Voter models
# ======================================================================

def condorcet_noise_voters(m: int, n: int, p: float, seed: Seed) -> WeightedTournament:
    """n voters, each ordering every pair independently; index order with probability p."""
    _check_p(p)
    rng = as_rng(seed)
    rows, cols = np.triu_indices(m, k=1)
    agree = rng.random((n, rows.size)) < p
    relations = np.zeros((n, m, m), dtype=bool)
    relations[:, rows, cols] = agree
    relations[:, cols, rows] = ~agree
    return profile_to_tournament(PreferenceProfile(relations))


def impartial_culture_rankings(m: int, n: int, rng: np.random.Generator) -> np.ndarray:
    return np.argsort(rng.random((n, m)), axis=1)


def impartial_culture(m: int, n: int, seed: Seed) -> WeightedTournament:
    rng = as_rng(seed)
    return profile_to_tournament(PreferenceProfile.from_rankings(impartial_culture_rankings(m, n, rng)))


def mallows_rankings(m: int, n: int, phi: float, rng: np.random.Generator) -> np.ndarray:
    """
    Repeated insertion: the i-th alternative of the reference order (index
    order) lands at position j of the partial ranking with probability
    proportional to phi ** (i - j), 0 <= j <= i.
    """
    if not 0 < phi <= 1:
        raise PreconditionError(f"phi must lie in (0, 1], got {phi}")
    partial = [[] for _ in range(n)]
    for i in range(m):
        weights = phi ** (i - np.arange(i + 1, dtype=float))
        positions = rng.choice(i + 1, size=n, p=weights / weights.sum())
        for ranking, position in zip(partial, positions):
            ranking.insert(int(position), i)
    return np.array(partial, dtype=np.int64).reshape(n, m)


def mallows(m: int, n: int, phi: float, seed: Seed) -> WeightedTournament:
    rng = as_rng(seed)
    return profile_to_tournament(PreferenceProfile.from_rankings(mallows_rankings(m, n, phi, rng)))


def urn_rankings(m: int, n: int, alpha: int, rng: np.random.Generator) -> np.ndarray:
    """
    Polya-Eggenberger urn over the m! rankings, drawn lazily: after t draws
    the urn holds m! originals and alpha * t copies, so a fresh uniform ranking
    comes out with probability m! / (m! + alpha t) and otherwise a uniformly
    chosen earlier draw repeats.
    """
    if alpha < 0 or int(alpha) != alpha:
        raise PreconditionError(f"alpha must be a non-negative integer, got {alpha}")
    alpha = int(alpha)
    orderings = math.factorial(m)
    drawn = np.empty((n, m), dtype=np.int64)
    for t in range(n):
        fresh = 1.0 / (1.0 + alpha * t / orderings)
        if rng.random() < fresh:
            drawn[t] = rng.permutation(m)
        else:
            drawn[t] = drawn[rng.integers(t)]
    return drawn


def urn(m: int, n: int, alpha: int, seed: Seed) -> WeightedTournament:
    rng = as_rng(seed)
    return profile_to_tournament(PreferenceProfile.from_rankings(urn_rankings(m, n, alpha, rng)))


# ======================================================================
# Registry
# ======================================================================

@dataclass(frozen=True)
class Model:
    name: str
    build: Callable[..., WeightedTournament]
    parameter: Optional[str] = None
    cast: Callable = float
    config_key: Optional[str] = None


MODELS: Dict[str, Model] = {
    'uniform': Model('uniform', uniform_random),
    'condorcet-direct': Model('condorcet-direct', condorcet_noise_direct, 'p', float, 'condorcet_p'),
    'condorcet-voters': Model('condorcet-voters', condorcet_noise_voters, 'p', float, 'condorcet_p'),
    'impartial': Model('impartial', impartial_culture),
    'mallows': Model('mallows', mallows, 'phi', float, 'mallows_phi'),
    'urn': Model('urn', urn, 'alpha', int, 'urn_alpha'),
}


def parse_model(spec: str) -> Tuple[Model, Optional[float]]:
    """
    'mallows:phi=0.9' -> (MODELS['mallows'], 0.9). A missing parameter takes
    the configured default.
    """
    name, _, rest = spec.strip().partition(':')
    model = MODELS.get(name)
    if model is None:
        raise PreconditionError(f"unknown model {name!r}; choose from {', '.join(MODELS)}")
    if model.parameter is None:
        if rest:
            raise PreconditionError(f"model {name!r} takes no parameters")
        return model, None
    if not rest:
        return model, model.cast(get_config()['generators'][model.config_key])
    key, _, value = rest.partition('=')
    if key != model.parameter or not value:
        raise PreconditionError(f"model {name!r} expects '{model.parameter}=<value>', got {rest!r}")
    try:
        return model, model.cast(value)
    except ValueError:
        raise PreconditionError(f"bad value {value!r} for {model.parameter}") from None


def canonical_model(spec: str) -> str:
    model, value = parse_model(spec)
    return model.name if value is None else f"{model.name}:{model.parameter}={value}"


def generate(spec: str, m: int, n: int, seed: Seed) -> WeightedTournament:
    """Draw one tournament from a model string such as 'urn:alpha=10'."""
    if m < 1 or n < 1:
        raise PreconditionError(f"need m >= 1 and n >= 1, got m={m}, n={n}")
    model, value = parse_model(spec)
    if value is None:
        return model.build(m, n, seed)
    return model.build(m, n, value, seed)
