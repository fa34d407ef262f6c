"""Turning a yes/no detector into a witness finder.

The recursion: split the vertices into k+1 parts. Any k-vertex copy of
the pattern avoids at least one part entirely, so if the detector still
says "present" after deleting some part, recurse on that smaller graph;
below a constant size threshold, hand over to brute force. A detector
that says "present" while every one-part-deleted subgraph (and the final
brute force) comes up empty has contradicted itself — that is surfaced
as :class:`DetectorInconsistentError` rather than being folded into a
plain "absent".
"""

from __future__ import annotations

from typing import Callable, Sequence

from .graphs import Graph, OrderedPattern
from .oracles import find_induced_copy


class DetectorInconsistentError(RuntimeError):
    """The detector claimed presence but no witness exists where it pointed."""


def find_from_detection(
    g: Graph,
    h: OrderedPattern,
    detector: Callable[[Graph], bool],
    threshold: int | None = None,
) -> tuple[int, ...] | None:
    """Locate an induced copy of h using only a presence detector.

    Returns the host vertices (original ids, indexed by pattern vertex)
    or None when the detector reports absence at the top level.
    """

    k = h.node_count
    if threshold is None:
        threshold = max(k + 2, 8)
    if not detector(g):
        return None
    vertices: Sequence[int] = range(g.node_count)
    return _descend(g, list(vertices), h, detector, threshold)


def _descend(
    g: Graph,
    ids: list[int],
    h: OrderedPattern,
    detector: Callable[[Graph], bool],
    threshold: int,
) -> tuple[int, ...]:
    # Invariant: detector(current graph) was true on the way in.
    n = g.node_count
    if n <= threshold:
        image = find_induced_copy(g, h)
        if image is None:
            raise DetectorInconsistentError(
                f"detector reported presence on {n} vertices but brute force finds nothing"
            )
        return tuple(ids[v] for v in image)
    k = h.node_count
    parts: list[list[int]] = [[] for _ in range(k + 1)]
    for v in range(n):
        parts[v % (k + 1)].append(v)
    for part in parts:
        keep = [v for v in range(n) if v % (k + 1) != part[0] % (k + 1)] if part else list(range(n))
        if len(keep) == n:
            continue
        sub = g.induced(keep)
        if detector(sub):
            return _descend(sub, [ids[v] for v in keep], h, detector, threshold)
    raise DetectorInconsistentError(
        "detector reported presence but denied it on every (k+1)-part-deleted subgraph"
    )
