"""A plain-Fraction textbook simplex used only as a test oracle.

Independent of the package's fraction-free engine: the tableau here is
a dense Fraction matrix updated with the classic pivot formula.
"""

from fractions import Fraction

from proctheory.lp import LinearProgram, LPStatus


def reference_solve(lp: LinearProgram):
    """Returns (status, value) disregarding the solution vector."""
    n = lp.num_vars
    rows = []
    kinds = []
    for coeffs, rhs in lp.eq:
        rows.append((list(coeffs), rhs))
        kinds.append("eq")
    for coeffs, rhs in lp.le:
        rows.append((list(coeffs), rhs))
        kinds.append("le")
    for coeffs, rhs in lp.ge:
        rows.append((list(coeffs), rhs))
        kinds.append("ge")
    m = len(rows)
    num_slack = sum(1 for k in kinds if k != "eq")
    total = n + num_slack + m
    tab = []
    basis = []
    s_at = 0
    for i, ((coeffs, rhs), kind) in enumerate(zip(rows, kinds)):
        row = [Fraction(x) for x in coeffs] + [Fraction(0)] * (num_slack + m) + [Fraction(rhs)]
        if kind == "le":
            row[n + s_at] = Fraction(1)
            s_at += 1
        elif kind == "ge":
            row[n + s_at] = Fraction(-1)
            s_at += 1
        if row[-1] < 0:
            row = [-x for x in row]
        row[n + num_slack + i] = Fraction(1)
        basis.append(n + num_slack + i)
        tab.append(row)

    def pivot(r, c):
        piv = tab[r][c]
        tab[r] = [x / piv for x in tab[r]]
        for i in range(m):
            if i != r and tab[i][c]:
                f = tab[i][c]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[r])]
        basis[r] = c

    def run(costs, allowed):
        while True:
            z = [Fraction(0)] * (total + 1)
            for i in range(m):
                cb = costs[basis[i]]
                if cb:
                    z = [a + cb * b for a, b in zip(z, tab[i])]
            enter = -1
            for j in range(total):
                if allowed[j] and costs[j] - z[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal"
            best = -1
            for i in range(m):
                if tab[i][enter] > 0:
                    if best < 0 or tab[i][-1] / tab[i][enter] < tab[best][-1] / tab[best][enter] or (
                        tab[i][-1] / tab[i][enter] == tab[best][-1] / tab[best][enter]
                        and basis[i] < basis[best]
                    ):
                        best = i
            if best < 0:
                return "unbounded"
            pivot(best, enter)

    art_start = n + num_slack
    costs1 = [Fraction(0)] * total
    for j in range(art_start, total):
        costs1[j] = Fraction(1)
    if m:
        run(costs1, [True] * total)
        residual = sum(tab[i][-1] for i in range(m) if basis[i] >= art_start)
        if residual > 0:
            return LPStatus.INFEASIBLE, None
    costs2 = [Fraction(0)] * total
    for j in range(n):
        costs2[j] = -lp.objective[j]
    allowed = [j < art_start for j in range(total)]
    status = run(costs2, allowed)
    if status == "unbounded":
        return LPStatus.UNBOUNDED, None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][-1]
    return LPStatus.OPTIMAL, sum(c * v for c, v in zip(lp.objective, x))
