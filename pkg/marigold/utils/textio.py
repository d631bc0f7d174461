"""
Plain-text formats read and written by the command line.

Tournament file:
    # comment lines anywhere
    m n
    labels: a b c          (optional)
    <m rows of m integers>

Graph file (dominating-set input): one `u v` edge per line, 0-based. The vertex
count is the largest index plus one unless a `vertices: r` line says otherwise.

Set-system file (set-cover input): `r s`, then s lines of element indices.
"""

import logging
from typing import List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from ..core import WeightedTournament, default_labels
from .errors import ParseError, TournamentError

logger = logging.getLogger(__name__)


def _content_lines(text: str) -> List[Tuple[int, str]]:
    """(1-based line number, stripped text) for every non-blank, non-comment line."""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith('#'):
            lines.append((number, line))
    return lines


def _ints(line: str, number: int, source: Optional[str]) -> List[int]:
    try:
        return [int(token) for token in line.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {line!r}", number, source) from None


# ======================================================================
# Tournaments
# ======================================================================

def parse_tournament(text: str, source: Optional[str] = None) -> WeightedTournament:
    lines = _content_lines(text)
    labels: Sequence[str] = ()
    body = []
    for number, line in lines:
        if line.lower().startswith('labels:'):
            labels = line.split(':', 1)[1].split()
            label_line = number
        else:
            body.append((number, line))

    if not body:
        raise ParseError("empty tournament file", None, source)
    number, header = body[0]
    head = _ints(header, number, source)
    if len(head) != 2:
        raise ParseError(f"header must be 'm n', got {header!r}", number, source)
    m, n = head
    if m < 1:
        raise ParseError(f"m must be positive, got {m}", number, source)
    rows = body[1:]
    if len(rows) != m:
        last = rows[-1][0] if rows else number
        raise ParseError(f"expected {m} weight rows, found {len(rows)}", last, source)

    matrix = []
    for row_number, line in rows:
        values = _ints(line, row_number, source)
        if len(values) != m:
            raise ParseError(f"expected {m} weights, got {len(values)}", row_number, source)
        matrix.append(values)

    if labels and len(labels) != m:
        raise ParseError(f"expected {m} labels, got {len(labels)}", label_line, source)
    try:
        return WeightedTournament(n=n, w=np.array(matrix, dtype=np.int64), labels=tuple(labels))
    except TournamentError as e:
        raise ParseError(str(e), None, source) from e


def format_tournament(tournament: WeightedTournament, comments: Sequence[str] = ()) -> str:
    out = [f"# {comment}" for comment in comments]
    out.append(f"{tournament.m} {tournament.n}")
    if tournament.labels != default_labels(tournament.m):
        out.append("labels: " + " ".join(tournament.labels))
    width = len(str(tournament.n))
    for row in tournament.w:
        out.append(" ".join(str(int(v)).rjust(width) for v in row))
    return "\n".join(out) + "\n"


def read_tournament(path: str) -> WeightedTournament:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", None, path) from e
    tournament = parse_tournament(text, source=path)
    logger.debug(f"Read {tournament!r} from {path}")
    return tournament


def write_tournament(path: str, tournament: WeightedTournament, comments: Sequence[str] = ()) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        f.write(format_tournament(tournament, comments))
    logger.debug(f"Wrote {tournament!r} to {path}")


# ======================================================================
# Reduction inputs
# ======================================================================

def parse_graph(text: str, source: Optional[str] = None) -> nx.Graph:
    """Undirected graph on vertices 0..r-1 from an edge list."""
    graph = nx.Graph()
    declared = None
    for number, line in _content_lines(text):
        if line.lower().startswith('vertices:'):
            values = _ints(line.split(':', 1)[1], number, source)
            if len(values) != 1 or values[0] < 1:
                raise ParseError("'vertices:' takes one positive integer", number, source)
            declared = values[0]
            continue
        values = _ints(line, number, source)
        if len(values) != 2:
            raise ParseError(f"edge lines hold two vertices, got {line!r}", number, source)
        u, v = values
        if u < 0 or v < 0:
            raise ParseError("vertex indices are 0-based and non-negative", number, source)
        if u == v:
            raise ParseError(f"self loop on vertex {u}", number, source)
        graph.add_edge(u, v)

    highest = max(graph.nodes, default=-1)
    count = declared if declared is not None else highest + 1
    if highest >= count:
        raise ParseError(f"vertex {highest} exceeds declared count {count}", None, source)
    if count < 1:
        raise ParseError("graph has no vertices", None, source)
    graph.add_nodes_from(range(count))
    return graph


def parse_set_system(text: str, source: Optional[str] = None) -> Tuple[int, List[Set[int]]]:
    """(universe size r, list of s subsets of 0..r-1)."""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty set-system file", None, source)
    number, header = lines[0]
    head = _ints(header, number, source)
    if len(head) != 2:
        raise ParseError(f"header must be 'r s', got {header!r}", number, source)
    r, s = head
    body = lines[1:]
    if len(body) != s:
        raise ParseError(f"expected {s} set lines, found {len(body)}", body[-1][0] if body else number, source)
    sets = []
    for line_number, line in body:
        elements = set(_ints(line, line_number, source))
        if not elements:
            raise ParseError("sets must be non-empty", line_number, source)
        if min(elements) < 0 or max(elements) >= r:
            raise ParseError(f"elements must lie in 0..{r - 1}", line_number, source)
        sets.append(elements)
    return r, sets


def read_text(path: str) -> str:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return f.read()
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", None, path) from e
