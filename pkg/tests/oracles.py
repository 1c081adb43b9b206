"""Reference computations that share no code with the package."""


def _sigma(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def _mul(a, b, n):
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]


def j_via_e6(order):
    """c(-1..order) from j - 1728 = E6^2 / Delta, with naive series loops."""
    n = order + 2
    e6 = [1] + [-504 * _sigma(5, m) for m in range(1, n)]
    eta = [1] + [0] * (n - 1)
    for m in range(1, n):  # prod (1 - q^m), factor by factor
        eta = [eta[k] - (eta[k - m] if k >= m else 0) for k in range(n)]
    d = [1] + [0] * (n - 1)
    for _ in range(24):
        d = _mul(d, eta, n)
    num = _mul(e6, e6, n)
    quo = []
    for k in range(n):
        quo.append(num[k] - sum(d[i] * quo[k - i] for i in range(1, k + 1)))
    coeffs = {k - 1: quo[k] for k in range(n)}
    coeffs[0] += 1728
    return coeffs
