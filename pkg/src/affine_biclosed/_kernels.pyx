# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled windowed closure kernel; same contract as _kernels_py.window_closure."""
from libc.stdlib cimport malloc, free
from libc.string cimport memset


def window_closure(int nd, opposite, base, offsets, targets, p1s, p2s, qs, seeds, int window):
    cdef int width = window + 1
    cdef int total = nd * width
    cdef int n_entries = len(targets)
    cdef char *member = <char *> malloc(total)
    cdef int *qd = <int *> malloc(total * sizeof(int))
    cdef int *ql = <int *> malloc(total * sizeof(int))
    cdef int *opp = <int *> malloc(nd * sizeof(int))
    cdef int *bas = <int *> malloc(nd * sizeof(int))
    cdef int *off = <int *> malloc((nd * nd + 1) * sizeof(int))
    cdef int *tg = <int *> malloc((n_entries + 1) * sizeof(int))
    cdef int *pa = <int *> malloc((n_entries + 1) * sizeof(int))
    cdef int *pb = <int *> malloc((n_entries + 1) * sizeof(int))
    cdef int *qq = <int *> malloc((n_entries + 1) * sizeof(int))
    cdef int i, j, e, d1, n1, d2, n2, n, lo, hi, row, num, q, t, k
    cdef int count = 0, head = 0
    try:
        memset(member, 0, total)
        for i in range(nd):
            opp[i] = opposite[i]
            bas[i] = base[i]
        for i in range(nd * nd + 1):
            off[i] = offsets[i]
        for i in range(n_entries):
            tg[i] = targets[i]
            pa[i] = p1s[i]
            pb[i] = p2s[i]
            qq[i] = qs[i]
        for d1, n1 in seeds:
            if n1 >= bas[d1] and n1 <= window:
                k = d1 * width + n1
                if not member[k]:
                    member[k] = 1
                    qd[count] = d1
                    ql[count] = n1
                    count += 1
        while head < count:
            d1 = qd[head]
            n1 = ql[head]
            head += 1
            for j in range(head):
                d2 = qd[j]
                n2 = ql[j]
                if d2 == d1:
                    if n1 < n2:
                        lo = n1
                        hi = n2
                    else:
                        lo = n2
                        hi = n1
                    for n in range(lo + 1, hi):
                        k = d1 * width + n
                        if not member[k]:
                            member[k] = 1
                            qd[count] = d1
                            ql[count] = n
                            count += 1
                elif d2 == opp[d1]:
                    for n in range(n1 + 1, width):
                        k = d1 * width + n
                        if not member[k]:
                            member[k] = 1
                            qd[count] = d1
                            ql[count] = n
                            count += 1
                    for n in range(n2 + 1, width):
                        k = d2 * width + n
                        if not member[k]:
                            member[k] = 1
                            qd[count] = d2
                            ql[count] = n
                            count += 1
                else:
                    row = d1 * nd + d2
                    for e in range(off[row], off[row + 1]):
                        num = pa[e] * n1 + pb[e] * n2
                        q = qq[e]
                        if num % q == 0:
                            n = num // q
                            t = tg[e]
                            if n >= bas[t] and n <= window:
                                k = t * width + n
                                if not member[k]:
                                    member[k] = 1
                                    qd[count] = t
                                    ql[count] = n
                                    count += 1
        return sorted([(qd[i], ql[i]) for i in range(count)])
    finally:
        free(member); free(qd); free(ql); free(opp); free(bas)
        free(off); free(tg); free(pa); free(pb); free(qq)
