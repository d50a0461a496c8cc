"""Independent reference computations used by several test modules."""


def family_oracle(m, d0, d1):
    """The three component shapes, listed directly from (m, d0, d1)."""
    out = set()
    if d0 <= m and d1 <= m and (d0 or d1):
        out.add(((d0,) if d0 else (), (d1,) if d1 else ()))
    for q in range(1, m):
        for p in range(1, q):
            if (m + p, q) == (d0, d1):
                out.add(((m, p), (q,)))
    for p in range(1, m):
        for q in range(1, p):
            if (p, m + q) == (d0, d1):
                out.add(((p,), (m, q)))
    return out
