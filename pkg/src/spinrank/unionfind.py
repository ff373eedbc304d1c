class DisjointSet:
    """Union-find over ``{0, ..., size-1}`` with path halving and union by size."""

    def __init__(self, size):
        self.parent = list(range(size))
        self.size = [1] * size

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return rx

    def labels(self):
        """Class index of each element, classes numbered by first occurrence."""
        seen = {}
        out = []
        for x in range(len(self.parent)):
            root = self.find(x)
            if root not in seen:
                seen[root] = len(seen)
            out.append(seen[root])
        return out

    def count(self):
        return sum(1 for x in range(len(self.parent)) if self.find(x) == x)
