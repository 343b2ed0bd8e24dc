"""Finite quivers and their paths."""


class QuiverError(ValueError):
    pass


class Quiver:
    """Vertices are string labels; arrows are (label, source, target)."""

    __slots__ = ("vertices", "arrows", "_arrow_index", "_vertex_index")

    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        self.arrows = tuple((str(a), str(s), str(t)) for a, s, t in arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex labels")
        labels = [a for a, _, _ in self.arrows]
        if len(set(labels)) != len(labels):
            raise QuiverError("duplicate arrow labels")
        if set(labels) & set(self.vertices):
            raise QuiverError("arrow label collides with a vertex label")
        self._vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self._arrow_index = {}
        for a, s, t in self.arrows:
            if s not in self._vertex_index or t not in self._vertex_index:
                raise QuiverError(f"arrow {a}: undeclared endpoint")
            self._arrow_index[a] = (s, t)

    def arrow_ends(self, label):
        return self._arrow_index[label]

    def has_vertex(self, v):
        return v in self._vertex_index

    def opposite(self):
        return Quiver(self.vertices, [(a, t, s) for a, s, t in self.arrows])

    def path_ends(self, path):
        """(source, target) of a tuple of composable arrow labels.

        Composition reads left to right: path (a, b) means first a, then b,
        so the target of a must equal the source of b.
        """
        if not path:
            raise QuiverError("empty path has no canonical endpoints")
        src, cur = self._arrow_index[path[0]]
        for a in path[1:]:
            s, t = self._arrow_index[a]
            if s != cur:
                raise QuiverError(f"non-composable path {path}")
            cur = t
        return src, cur

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and self.arrows == other.arrows)

    def __repr__(self):
        return f"Quiver({list(self.vertices)!r}, {list(self.arrows)!r})"


def quiver_to_json(q):
    return {"vertices": list(q.vertices), "arrows": [list(a) for a in q.arrows]}


def quiver_from_json(obj):
    return Quiver(obj["vertices"], [tuple(a) for a in obj["arrows"]])
