"""Independent brute force for tiny PDAs: cell-wise search, no pruning beyond
first-use symbol numbering.  Used to cross-check the pruned solver."""

from pdacache.core import PdaGrid, verify


def naive_exists(F, K, Z, s):
    cells = [[None] * K for _ in range(F)]
    order = [(j, k) for k in range(K) for j in range(F)]

    def ok_cond4(j, k, t):
        for j2 in range(F):
            for k2 in range(K):
                if cells[j2][k2] == t and (j2 == j or k2 == k):
                    return False
                if cells[j2][k2] == t and (cells[j][k2] is not None or cells[j2][k] is not None):
                    return False
        # (j,k) must not be a crossing cell of two equal symbols
        row = {cells[j][k2]: k2 for k2 in range(K) if cells[j][k2] is not None}
        return not any(cells[j2][k] in row for j2 in range(F) if cells[j2][k] is not None)

    def rec(i, used, empties):
        if i == len(order):
            return all(e == Z for e in empties)
        j, k = order[i]
        rows_left = F - j - 1
        # empty
        if empties[k] < Z:
            # an empty cell may be blocked by cond 4 only via symbols placed later; fine
            empties[k] += 1
            if rec(i + 1, used, empties):
                return True
            empties[k] -= 1
        if Z - empties[k] <= rows_left:
            for t in range(1, min(used + 1, s) + 1):
                if ok_cond4(j, k, t):
                    cells[j][k] = t
                    if rec(i + 1, max(used, t), empties):
                        return True
                    cells[j][k] = None
        return False

    found = rec(0, 0, [0] * K)
    if found:
        g = PdaGrid(tuple(tuple(r) for r in cells))
        assert verify(g).valid
    return found


def naive_min_s(F, K, Z):
    s = 0
    while not naive_exists(F, K, Z, s):
        s += 1
    return s
