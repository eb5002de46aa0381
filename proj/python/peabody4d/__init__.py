from ._peabody4d import (
    BallModel,
    PeabodyError,
    Skeleton,
    constants,
    exact_forms,
    verify,
)

__all__ = ["BallModel", "PeabodyError", "Skeleton", "constants", "exact_forms", "verify"]
