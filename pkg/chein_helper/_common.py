import numpy as np


def cached_property(fn):
    def getter(self):
        fld = f"@{fn.__name__}"
        if not hasattr(self, fld):
            setattr(self, fld, fn(self))
        return getattr(self, fld)

    return property(getter)


def valuations(order: int, arity: int) -> np.ndarray:
    """
    All assignments of ``arity`` variables to ``0..order-1`` as an
    ``(arity, order**arity)`` array, first variable varying slowest.
    """
    if arity == 0:
        return np.zeros((0, 1), dtype=np.int64)
    return np.indices((order,) * arity, dtype=np.int64).reshape(arity, -1)


def frozen(array) -> np.ndarray:
    out = np.array(array, dtype=np.int64)
    out.flags.writeable = False
    return out
