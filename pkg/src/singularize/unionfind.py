"""Union-find over hashable, orderable ids.

The representative of a class is always its smallest member, so quotient
ids are stable and predictable (the lowest id wins).
"""

from __future__ import annotations


class UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        parent = self.parent
        if x not in parent:
            parent[x] = x
            return x
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return rx

    def classes(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out

    def __len__(self):
        return sum(1 for x in self.parent if self.find(x) == x)


class ParityUnionFind:
    """Union-find that also tracks a relative orientation bit.

    ``find(x)`` returns ``(root, parity)`` where parity is 1 when ``x`` is
    glued to its root with reversed orientation.
    """

    def __init__(self):
        self.parent = {}
        self.parity = {}

    def find(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.parity[x] = 0
            return x, 0
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, accumulating parity from the top down
        acc = 0
        for node in reversed(path):
            acc ^= self.parity[node]
            self.parent[node] = root
            self.parity[node] = acc
        return (root, self.parity[path[0]]) if path else (root, 0)

    def union(self, x, y, flipped):
        """Glue ``x`` to ``y``; ``flipped`` says whether orientations disagree.

        Returns False if the gluing contradicts an earlier one.
        """
        (rx, px), (ry, py) = self.find(x), self.find(y)
        rel = px ^ py ^ int(flipped)
        if rx == ry:
            return rel == 0
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.parity[ry] = rel
        return True
