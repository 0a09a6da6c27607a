"""
Blocks: indivisible runs of layers between partition points.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..graph import DnnGraph
from .points import CutPoint, enumerate_cutpoints


@dataclass(frozen=True)
class Block:
    """
    A contiguous run of topological positions that no cut point splits.

    Attributes:
        start: First topological position (inclusive)
        end: Last topological position (inclusive)
        members: Layer ids in topological order
    """

    start: int
    end: int
    members: Tuple[int, ...]

    @property
    def is_parallel(self) -> bool:
        return len(self.members) > 1

    def contains_strictly(self, position: int) -> bool:
        """True iff ``position`` is inside the block but not its last position."""
        return self.start <= position < self.end

    def __len__(self) -> int:
        return len(self.members)


def blocks(graph: DnnGraph, cuts: Optional[Sequence[CutPoint]] = None) -> List[Block]:
    """
    Split the topological order into blocks.

    Boundaries are the cut positions plus the boundary in front of the
    output layer, so the input and output layers always form their own
    blocks. Concatenating the blocks gives the full topological order.

    Args:
        graph: Validated graph
        cuts: Cut points to use; enumerated from the graph when omitted

    Returns:
        List[Block]: Blocks in topological order
    """
    order = graph.topological_order
    if cuts is None:
        cuts = enumerate_cutpoints(graph)

    boundaries = {cut.position for cut in cuts if cut.position >= 0}
    if len(order) >= 2:
        boundaries.add(len(order) - 2)

    result: List[Block] = []
    start = 0
    for end in sorted(boundaries) + [len(order) - 1]:
        if end < start:
            continue
        result.append(Block(start=start, end=end, members=tuple(order[start : end + 1])))
        start = end + 1
    return result
