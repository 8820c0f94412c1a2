"""Exception hierarchy shared by all modules."""


class LatticeError(ValueError):
    pass


class NotAPoset(LatticeError):
    pass


class NoBottomOrTop(LatticeError):
    pass


class NotALattice(LatticeError):
    pass


class InconsistentOrder(LatticeError):
    pass


class NotComparable(LatticeError):
    pass


class BottomHasNoCovers(LatticeError):
    pass


class NotASwing(LatticeError):
    pass


class WitnessNotS7(LatticeError):
    pass


class UnknownFixture(LatticeError, KeyError):
    pass


class NotACoveringSquare(LatticeError):
    pass


class NotSPS(LatticeError):
    pass


class TraceStuck(LatticeError):
    pass


class NotAWitness(LatticeError):
    pass


class ParseError(LatticeError):
    pass


class SchemaError(LatticeError):
    pass


class ValidationError(LatticeError):
    pass
