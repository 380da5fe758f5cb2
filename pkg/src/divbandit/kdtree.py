"""Incremental k-d tree for exact nearest-neighbour queries.

Points are inserted one at a time and identified by their insertion index.
Leaves hold small buckets that split on their widest axis once they overflow.
Queries return the point closest in Euclidean distance, the lowest index
winning ties, which makes results identical to a linear scan.
"""

from __future__ import annotations

import math


class _Leaf:
    __slots__ = ("items",)

    def __init__(self, items=None):
        self.items = items or []  # (index, point)


class _Node:
    __slots__ = ("axis", "split", "left", "right")

    def __init__(self, axis, split, left, right):
        self.axis = axis
        self.split = split
        self.left = left
        self.right = right


def _split_leaf(items):
    dim = len(items[0][1])
    spreads = []
    for a in range(dim):
        vals = [p[a] for _, p in items]
        spreads.append(max(vals) - min(vals))
    axis = max(range(dim), key=spreads.__getitem__)
    if spreads[axis] == 0:
        return None  # all points coincide
    vals = sorted(p[axis] for _, p in items)
    n = len(vals)
    # nearest distinct boundary to the median so both sides are nonempty
    for off in range(n):
        for k in (n // 2 - off, n // 2 + off):
            if 0 < k < n and vals[k - 1] < vals[k]:
                split = vals[k]
                left = [it for it in items if it[1][axis] < split]
                right = [it for it in items if it[1][axis] >= split]
                return _Node(axis, split, _Leaf(left), _Leaf(right))
    return None


class KDTree:
    bucket_size = 8

    def __init__(self, dim: int):
        self.dim = dim
        self._root = _Leaf()
        self._size = 0

    def __len__(self):
        return self._size

    def insert(self, point) -> int:
        point = tuple(float(v) for v in point)
        if len(point) != self.dim:
            raise ValueError(f"point has dimension {len(point)}, tree has {self.dim}")
        index = self._size
        parent, node, went_left = None, self._root, False
        while isinstance(node, _Node):
            parent = node
            went_left = point[node.axis] < node.split
            node = node.left if went_left else node.right
        node.items.append((index, point))
        if len(node.items) > self.bucket_size:
            new = _split_leaf(node.items)
            if new is not None:
                if parent is None:
                    self._root = new
                elif went_left:
                    parent.left = new
                else:
                    parent.right = new
        self._size += 1
        return index

    def nearest(self, query) -> tuple[int, float]:
        """Return ``(index, distance)`` of the nearest stored point."""
        if not self._size:
            raise LookupError("nearest() on an empty tree")
        q = tuple(float(v) for v in query)
        best = [math.inf, -1]  # squared distance, index
        self._search(self._root, q, best)
        return best[1], math.sqrt(best[0])

    def _search(self, node, q, best):
        if isinstance(node, _Leaf):
            for index, p in node.items:
                d2 = 0.0
                for a, b in zip(p, q):
                    d2 += (a - b) * (a - b)
                if d2 < best[0] or (d2 == best[0] and index < best[1]):
                    best[0] = d2
                    best[1] = index
            return
        diff = q[node.axis] - node.split
        near, far = (node.left, node.right) if diff < 0 else (node.right, node.left)
        self._search(near, q, best)
        # <= so equal-distance points with a lower index are still visited
        if diff * diff <= best[0]:
            self._search(far, q, best)
