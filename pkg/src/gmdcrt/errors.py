"""Exception hierarchy shared by every gmdcrt module."""


class MdcrtError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class SingularMatrix(MdcrtError, ValueError):
    pass


class DimensionMismatch(MdcrtError, ValueError):
    pass


class ResidueOutOfRange(MdcrtError, ValueError):
    """A residue does not lie in the fundamental parallelepiped of its modulus."""


class NoSolution(MdcrtError):
    """A congruence system has no integer solution."""


class InvalidOverride(MdcrtError, ValueError):
    """A user supplied lcrm is not an lcrm of its subset of moduli."""


class ReconstructionFailed(MdcrtError):
    pass


class InconsistentSystem(MdcrtError):
    pass


class NoCommonDifference(MdcrtError):
    pass


class ConditionNotMet(MdcrtError):
    """Prior-information condition for the two-vector solver does not hold."""


class NoPeaks(MdcrtError):
    pass


class DetectionMismatch(MdcrtError):
    pass
