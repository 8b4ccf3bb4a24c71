"""Pure-Python modular kernels; same interface as the compiled module."""

PRIME = 2147483647


def rank_mod_p(rows, p=PRIME):
    """Rank of an integer matrix reduced mod ``p``."""
    A = [[x % p for x in row] for row in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, m) if A[i][j]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][j], p - 2, p)
        pivot_row = A[r]
        for i in range(r + 1, m):
            f = A[i][j]
            if f:
                f = f * inv % p
                row = A[i]
                for k in range(j, n):
                    row[k] = (row[k] - f * pivot_row[k]) % p
        r += 1
        if r == m:
            break
    return r


def det_mod_p(rows, p=PRIME):
    """Determinant of a square integer matrix mod ``p``."""
    A = [[x % p for x in row] for row in rows]
    n = len(A)
    det = 1
    for j in range(n):
        piv = next((i for i in range(j, n) if A[i][j]), None)
        if piv is None:
            return 0
        if piv != j:
            A[j], A[piv] = A[piv], A[j]
            det = -det
        det = det * A[j][j] % p
        inv = pow(A[j][j], p - 2, p)
        for i in range(j + 1, n):
            f = A[i][j]
            if f:
                f = f * inv % p
                for k in range(j, n):
                    A[i][k] = (A[i][k] - f * A[j][k]) % p
    return det % p


def eval_terms_mod_p(coeffs, exponents, point, p=PRIME):
    """Evaluate ``sum c_k * x^e_k`` mod ``p``; coefficients already reduced."""
    total = 0
    for c, exps in zip(coeffs, exponents):
        term = c % p
        for x, e in zip(point, exps):
            if e:
                term = term * pow(x, e, p) % p
        total = (total + term) % p
    return total
