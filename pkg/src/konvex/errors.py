"""Exception hierarchy.

``InputError`` subclasses signal bad user input (CLI exit code 2).
``InvariantViolation`` subclasses signal that a theorem-guaranteed property
failed to hold, which can only mean a bug (CLI exit code 3).
"""


class KonvexError(Exception):
    pass


class InputError(KonvexError):
    pass


class InvariantViolation(KonvexError):
    pass


class BadTable(InputError):
    pass


class UnknownLabel(InputError):
    def __init__(self, label, where=""):
        self.label = label
        super().__init__(f"unknown element label {label!r}{where}")


class NotCommutative(InputError):
    def __init__(self, x, y):
        self.witness = (x, y)
        super().__init__(f"operation is not commutative: {x}+{y} != {y}+{x}")


class NotAssociative(InputError):
    def __init__(self, x, y, z):
        self.witness = (x, y, z)
        super().__init__(
            f"operation is not associative: ({x}+{y})+{z} != {x}+({y}+{z})"
        )


class BadParams(InputError):
    pass


class EmptyGenerators(InputError):
    pass


class BadN(InputError):
    def __init__(self, n):
        self.n = n
        super().__init__(f"multiplier must be a positive integer, got {n!r}")


class CarrierMismatch(InputError):
    pass


class SymbolicUnsupported(InputError):
    pass


class CoverNotKonvex(InputError):
    def __init__(self, i):
        self.index = i
        super().__init__(f"cover B_{i + 1} is not konvex for all n")


class CoverMissesSet(InputError):
    def __init__(self, i):
        self.index = i
        super().__init__(f"cover B_{i + 1} does not contain A_{i + 1}")


class NotDisjointInput(InputError):
    pass


class InputsNotDisjoint(InputError):
    def __init__(self, evidence):
        self.evidence = evidence
        super().__init__(
            f"inputs collide at n={evidence.collision_n} "
            f"(common element {evidence.collision_element!r})"
        )


class NotComplementary(InputError):
    pass


class WellDefinednessViolation(InvariantViolation):
    pass


class LemmaViolation(InvariantViolation):
    pass
