"""Exact integer helpers."""


def iroot(x: int, k: int) -> int:
    """Largest integer ``r >= 0`` with ``r**k <= x``."""
    if x < 0 or k < 1:
        raise ValueError("iroot needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    r = 1 << -(-x.bit_length() // k)  # r**k >= x
    while True:
        s = ((k - 1) * r + x // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def exact_log2(x: int) -> int | None:
    """``log2(x)`` when ``x`` is a power of two, else ``None``."""
    if x > 0 and x & (x - 1) == 0:
        return x.bit_length() - 1
    return None
