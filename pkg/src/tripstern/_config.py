import os

DEPTH_CAP_ENV = "TRIP_DEPTH_CAP"


class DepthCapExceeded(ValueError):
    pass


def depth_cap(default: int) -> int:
    """The depth cap, overridable through the ``TRIP_DEPTH_CAP`` variable."""
    value = os.environ.get(DEPTH_CAP_ENV)
    if value:
        try:
            return int(value)
        except ValueError:
            raise ValueError(f"{DEPTH_CAP_ENV} must be an integer, got {value!r}") from None
    return default


def check_depth(n: int, default: int, cap=None) -> None:
    limit = cap if cap is not None else depth_cap(default)
    if n > limit:
        raise DepthCapExceeded(f"depth {n} exceeds the cap {limit} "
                               f"(set {DEPTH_CAP_ENV} to raise it)")
