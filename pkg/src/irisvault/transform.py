"""Revocable template generation: quadrant translation and pruning.

Feature points live on a 256x256 canonical grid (8-bit coordinates, forced
by the 16-bit lock-unit encoding).  The grid splits into four 128x128
quadrants, each translated by its own password block with wrap-around
inside the quadrant, so transformed points never leave their quadrant and
relative positions within a quadrant are preserved.  Changing the password
produces a different, reissuable template from the same biometric.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .password import TranslationBlock

GRID_SIZE = 256
QUADRANT_SIZE = 128


class MinutiaPoint(NamedTuple):
    """One feature point; both coordinates must fit in 8 bits."""

    x: int
    y: int


Template = list[MinutiaPoint]


def quadrant_of(p: MinutiaPoint) -> int:
    """Quadrant index 0..3: 0 top-left, 1 top-right, 2 bottom-left, 3 bottom-right.

    Coordinates >= 128 fall right/down.
    """
    return (1 if p.x >= QUADRANT_SIZE else 0) + (2 if p.y >= QUADRANT_SIZE else 0)


def transform_point(p: MinutiaPoint, block: TranslationBlock) -> MinutiaPoint:
    """Translate a point by (tu, tv) with wrap-around inside its quadrant.

    Translation amounts larger than 128 simply wrap; only tu mod 128 and
    tv mod 128 matter to the output.
    """
    bx = QUADRANT_SIZE if p.x >= QUADRANT_SIZE else 0
    by = QUADRANT_SIZE if p.y >= QUADRANT_SIZE else 0
    return MinutiaPoint(
        x=bx + (p.x - bx + block.tu) % QUADRANT_SIZE,
        y=by + (p.y - by + block.tv) % QUADRANT_SIZE,
    )


def transform_template(points: Sequence[MinutiaPoint],
                       blocks: Sequence[TranslationBlock]) -> Template:
    """Transform every point with its quadrant's block; order is preserved."""
    return [transform_point(p, blocks[quadrant_of(p)]) for p in points]


def prune_close(points: Sequence[MinutiaPoint], min_dist: float) -> Template:
    """Drop points closer than ``min_dist`` to an already-kept point.

    Greedy scan in list order: a point survives iff its Euclidean distance
    to every earlier survivor is >= min_dist.  Deterministic and
    order-stable; O(n^2), which is fine at template scale.
    """
    threshold = min_dist * min_dist
    kept: Template = []
    for p in points:
        if all((p.x - q.x) ** 2 + (p.y - q.y) ** 2 >= threshold for q in kept):
            kept.append(p)
    return kept
