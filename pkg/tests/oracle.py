"""Brute-force congruence oracle.

Computes the full equivalence classes of the rewrite relation by
union-find over the exhaustively closed rewrite graph, instead of the
bounded bidirectional search the library uses.  When the closure
stabilizes within the node budget, connectivity in the closed graph is
*exactly* provable equality, so the oracle is complete on its domain.
A budget overrun returns None ("oracle did not terminate").
"""

from ologs.category import Path, PathCategory


class UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        self.parent[self.find(x)] = self.find(y)


def _one_step(cat: PathCategory, p: Path) -> list[Path]:
    gen_target = {g.name: g.target for g in cat.generators}
    objs = [p.source]
    for name in p.arrows:
        objs.append(gen_target[name])
    out = []
    for eq in cat.equations:
        for frm, to in ((eq.left, eq.right), (eq.right, eq.left)):
            k = len(frm.arrows)
            for i in range(len(p.arrows) - k + 1):
                if p.arrows[i:i + k] == frm.arrows and objs[i] == frm.source:
                    out.append(Path(p.source,
                                    p.arrows[:i] + to.arrows + p.arrows[i + k:]))
    return out


def congruence_closure(cat: PathCategory, seeds, budget=5000, max_len=25):
    """Map every rewrite-reachable path to a class representative.

    Returns None ("did not terminate") when the reachable set exceeds
    the node budget or produces a path longer than max_len; only a
    fully closed set makes connectivity equal provability.
    """
    uf = UnionFind()
    seen = set(seeds)
    stack = list(seeds)
    while stack:
        p = stack.pop()
        uf.find(p)
        for q in _one_step(cat, p):
            if len(q.arrows) > max_len:
                return None
            uf.union(p, q)
            if q not in seen:
                if len(seen) >= budget:
                    return None
                seen.add(q)
                stack.append(q)
    return {p: uf.find(p) for p in seen}
