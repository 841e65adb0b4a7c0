"""Class hierarchies (trees and DAGs) and allocation-path helpers.

A :class:`Taxonomy` is an immutable rooted DAG of class labels. Allocation
paths are plain tuples of node ids that start at the root and follow
parent-to-child edges, e.g. ``("R", "A", "A1")``.
"""
import warnings
from collections import deque
from dataclasses import dataclass
from enum import Enum

from .errors import (
    CycleDetected,
    DeclaredRootMismatch,
    DuplicateEdge,
    InvalidNodeId,
    InvalidPath,
    KindMismatch,
    MultipleRoots,
    TaxonomyError,
    UnknownNode,
    UnreachableNode,
)

RESERVED_CHARS = frozenset(">;")


class Structure(str, Enum):
    TREE = "tree"
    DAG = "dag"


class PathCount(str, Enum):
    SPL = "spl"
    MPL = "mpl"


class LabelDepth(str, Enum):
    MLNP = "mlnp"
    NMLNP = "nmlnp"


@dataclass(frozen=True)
class ProblemKind:
    """Problem type along the three axes structure / paths / label depth."""

    structure: Structure
    paths: PathCount
    depth: LabelDepth

    @classmethod
    def parse(cls, text):
        """Parse ``"tree-spl-mlnp"`` style strings."""
        parts = text.strip().lower().split("-")
        if len(parts) != 3:
            raise ValueError(f"problem kind must look like 'tree-spl-mlnp', got {text!r}")
        try:
            return cls(Structure(parts[0]), PathCount(parts[1]), LabelDepth(parts[2]))
        except ValueError:
            raise ValueError(f"unknown problem kind {text!r}") from None

    def __str__(self):
        return f"{self.structure.value}-{self.paths.value}-{self.depth.value}"


def check_node_id(node):
    if not isinstance(node, str) or not node:
        raise InvalidNodeId(f"node id must be a non-empty string, got {node!r}")
    if any(ch.isspace() or ch in RESERVED_CHARS for ch in node):
        raise InvalidNodeId(f"node id {node!r} contains whitespace or a reserved character")
    return node


class Taxonomy:
    """Immutable rooted DAG of classes with precomputed ancestry indexes.

    Use :func:`build_taxonomy` (or the constructor directly) with a list of
    ``(parent, child)`` edges. Duplicate edges are dropped with a
    :class:`~hierconf.errors.DuplicateEdge` warning.

    >>> t = build_taxonomy([("R", "A"), ("R", "B"), ("A", "C"), ("B", "C")])
    >>> t.kind
    <Structure.DAG: 'dag'>
    >>> sorted(t.ancestors("C"))
    ['A', 'B', 'R']
    """

    def __init__(self, edges, root=None):
        edge_list = list(edges)
        if not edge_list:
            raise TaxonomyError("edge list is empty")

        seen = set()
        for edge in edge_list:
            if len(edge) != 2:
                raise TaxonomyError(f"edge must be a (parent, child) pair, got {edge!r}")
            parent, child = edge
            check_node_id(parent)
            check_node_id(child)
            if (parent, child) in seen:
                warnings.warn(f"duplicate edge {parent} -> {child} ignored", DuplicateEdge, stacklevel=3)
                continue
            seen.add((parent, child))

        nodes = sorted({n for e in seen for n in e})
        parents = {n: [] for n in nodes}
        children = {n: [] for n in nodes}
        for parent, child in seen:
            parents[child].append(parent)
            children[parent].append(child)

        order = _topological_order(nodes, parents, children)
        roots = [n for n in nodes if not parents[n]]
        if len(roots) > 1:
            raise MultipleRoots(f"taxonomy has several nodes without ancestors: {', '.join(roots)}")
        (found_root,) = roots
        if root is not None and root != found_root:
            raise DeclaredRootMismatch(f"declared root {root!r} but the graph is rooted at {found_root!r}")

        reachable = _reachable(found_root, children)
        if len(reachable) != len(nodes):
            missing = sorted(set(nodes) - reachable)
            raise UnreachableNode(f"nodes not reachable from root: {', '.join(missing)}")

        self._root = found_root
        self._nodes = frozenset(nodes)
        self._edges = frozenset(seen)
        self._index = {n: i for i, n in enumerate(nodes)}
        self._parents = {n: tuple(sorted(ps)) for n, ps in parents.items()}
        self._children = {n: tuple(sorted(cs)) for n, cs in children.items()}

        ancestors = {}
        for n in order:
            acc = set()
            for p in self._parents[n]:
                acc.add(p)
                acc |= ancestors[p]
            ancestors[n] = frozenset(acc)
        descendants = {}
        for n in reversed(order):
            acc = set()
            for c in self._children[n]:
                acc.add(c)
                acc |= descendants[c]
            descendants[n] = frozenset(acc)
        self._ancestors = ancestors
        self._descendants = descendants

        neighbors = {}
        for n in nodes:
            sibs = set()
            for p in self._parents[n]:
                sibs.update(self._children[p])
            sibs.discard(n)
            neighbors[n] = frozenset(sibs)
        self._neighbors = neighbors

        is_tree = all(len(ps) == 1 for n, ps in self._parents.items() if n != found_root)
        self._kind = Structure.TREE if is_tree else Structure.DAG
        self._path_cache = {}

    # basic accessors

    @property
    def root(self):
        return self._root

    @property
    def nodes(self):
        return self._nodes

    @property
    def edges(self):
        return self._edges

    @property
    def kind(self):
        return self._kind

    @property
    def leaves(self):
        return frozenset(n for n, cs in self._children.items() if not cs)

    def __len__(self):
        return len(self._nodes)

    def __contains__(self, node):
        return node in self._nodes

    def __iter__(self):
        return iter(sorted(self._nodes))

    def __eq__(self, other):
        if not isinstance(other, Taxonomy):
            return NotImplemented
        return self._root == other._root and self._edges == other._edges

    def __hash__(self):
        return hash((self._root, self._edges))

    def __repr__(self):
        return f"Taxonomy(root={self._root!r}, nodes={len(self._nodes)}, kind={self._kind.value})"

    def index(self, node):
        """Dense integer index of ``node`` (position in sorted node order)."""
        self._require(node)
        return self._index[node]

    def _require(self, node):
        if node not in self._nodes:
            raise UnknownNode(f"unknown node {node!r}")

    # structural queries

    def parents(self, node):
        self._require(node)
        return self._parents[node]

    def children(self, node):
        self._require(node)
        return self._children[node]

    def is_leaf(self, node):
        self._require(node)
        return not self._children[node]

    def ancestors(self, node):
        """All nodes from which ``node`` can be reached (empty for the root)."""
        self._require(node)
        return self._ancestors[node]

    def descendants(self, node):
        """All nodes reachable from ``node`` through at least one edge."""
        self._require(node)
        return self._descendants[node]

    def neighbors(self, node):
        """Nodes other than ``node`` that share at least one direct parent with it."""
        self._require(node)
        return self._neighbors[node]

    def true_paths(self, node):
        """Every root-to-``node`` allocation path, sorted lexicographically.

        Trees always give exactly one path. The result is cached, so repeated
        calls are cheap.
        """
        self._require(node)
        return self._paths_to(node)

    def _paths_to(self, node):
        cached = self._path_cache.get(node)
        if cached is not None:
            return cached
        if node == self._root:
            paths = ((node,),)
        else:
            paths = tuple(sorted(
                prefix + (node,)
                for parent in self._parents[node]
                for prefix in self._paths_to(parent)
            ))
        self._path_cache[node] = paths
        return paths

    def validate_path(self, path):
        """Return ``path`` as a tuple, or raise :class:`InvalidPath`."""
        path = tuple(path)
        if not path:
            raise InvalidPath("allocation path is empty")
        for node in path:
            if node not in self._nodes:
                raise InvalidPath(f"path {format_path(path)} contains unknown node {node!r}")
        if path[0] != self._root:
            raise InvalidPath(f"path {format_path(path)} does not start at root {self._root!r}")
        if len(set(path)) != len(path):
            raise InvalidPath(f"path {format_path(path)} repeats a node")
        for a, b in zip(path, path[1:]):
            if (a, b) not in self._edges:
                raise InvalidPath(f"path {format_path(path)} steps {a} -> {b}, which is not an edge")
        return path

    def check_kind(self, kind):
        if kind.structure is Structure.TREE and self._kind is Structure.DAG:
            raise KindMismatch("problem kind says tree but the taxonomy has nodes with several parents")


def build_taxonomy(edges, declared_root=None):
    """Validate ``(parent, child)`` edges and return a :class:`Taxonomy`."""
    return Taxonomy(edges, root=declared_root)


def common_path(a, b):
    """Longest root-anchored run of nodes shared consecutively by both paths.

    >>> common_path(("R", "A", "A1", "A1a"), ("R", "A", "A2"))
    ('R', 'A')
    """
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return tuple(a[:n])


def path_leaf(path):
    """Last node of an allocation path."""
    if not path:
        raise InvalidPath("allocation path is empty")
    return path[-1]


def format_path(path):
    return ">".join(path)


def _topological_order(nodes, parents, children):
    indegree = {n: len(parents[n]) for n in nodes}
    queue = deque(n for n in nodes if indegree[n] == 0)
    order = []
    while queue:
        n = queue.popleft()
        order.append(n)
        for c in sorted(children[n]):
            indegree[c] -= 1
            if indegree[c] == 0:
                queue.append(c)
    if len(order) != len(nodes):
        stuck = sorted(n for n in nodes if indegree[n] > 0)
        raise CycleDetected(f"edges contain a cycle through: {', '.join(stuck)}")
    return order


def _reachable(root, children):
    seen = {root}
    stack = [root]
    while stack:
        for c in children[stack.pop()]:
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return seen
