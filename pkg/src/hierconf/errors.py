"""Exception hierarchy shared by all hierconf modules."""


class HierConfError(ValueError):
    """Base class for every input or evaluation error raised by hierconf.

    ``source`` and ``line`` are filled in by the file parsers so that
    messages can point at ``file:line``.
    """

    def __init__(self, message, *, source=None, line=None):
        super().__init__(message)
        self.message = message
        self.source = source
        self.line = line

    def __str__(self):
        if self.line is None:
            prefix = f"{self.source}: " if self.source else ""
        else:
            prefix = f"{self.source or '<input>'}:{self.line}: "
        return prefix + self.message


# taxonomy construction and queries

class TaxonomyError(HierConfError):
    pass


class CycleDetected(TaxonomyError):
    pass


class MultipleRoots(TaxonomyError):
    pass


class UnreachableNode(TaxonomyError):
    pass


class DeclaredRootMismatch(TaxonomyError):
    pass


class InvalidNodeId(TaxonomyError):
    pass


class UnknownNode(TaxonomyError, KeyError):
    # KeyError.__str__ would add quotes around the message
    __str__ = HierConfError.__str__


class InvalidPath(HierConfError):
    pass


class DuplicateEdge(UserWarning):
    """Warning emitted when an edge list contains the same edge twice."""


# confusion

class EmptyTruth(HierConfError):
    pass


class EmptyPredictions(HierConfError):
    pass


class EmptyTruePaths(HierConfError):
    pass


class KindMismatch(HierConfError):
    """A record violates the declared problem kind (SPL/MLNP/structure)."""


# metrics

class EmptyRecordList(HierConfError):
    pass


# dataset parsing and evaluation

class MalformedLine(HierConfError):
    pass


class UnknownClass(HierConfError):
    pass


class DuplicateRecord(HierConfError):
    pass


class DuplicateClassInRecord(HierConfError):
    pass


class EmptyIntersection(HierConfError):
    pass
