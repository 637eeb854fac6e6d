"""Pure-Python windowed closure kernel (fallback for the compiled one)."""
from __future__ import annotations


def window_closure(nd, opposite, base, offsets, targets, p1s, p2s, qs, seeds, window):
    """Pairwise fixpoint on (direction index, level) pairs with level <= window.

    ``offsets[u*nd + v] : offsets[u*nd + v + 1]`` indexes the combine entries for
    the ordered direction pair (u, v): target t reached at level
    (p1*n_u + p2*n_v)/q when that is an integer.
    """
    width = window + 1
    member = bytearray(nd * width)
    order = []

    def push(d, n):
        if n < base[d] or n > window:
            return
        k = d * width + n
        if not member[k]:
            member[k] = 1
            order.append((d, n))

    for d, n in seeds:
        push(d, n)
    head = 0
    while head < len(order):
        d1, n1 = order[head]
        head += 1
        for j in range(head):
            d2, n2 = order[j]
            if d2 == d1:
                lo, hi = (n1, n2) if n1 < n2 else (n2, n1)
                for n in range(lo + 1, hi):
                    push(d1, n)
            elif d2 == opposite[d1]:
                for n in range(n1 + 1, width):
                    push(d1, n)
                for n in range(n2 + 1, width):
                    push(d2, n)
            else:
                row = d1 * nd + d2
                for e in range(offsets[row], offsets[row + 1]):
                    num = p1s[e] * n1 + p2s[e] * n2
                    q = qs[e]
                    if num % q == 0:
                        push(targets[e], num // q)
    return sorted(order)
