from __future__ import annotations

import random

from hodgeorbit.linalg import Matrix


def random_nilpotent(rng: random.Random, n: int) -> Matrix:
    """A strictly lower triangular matrix conjugated by a random unimodular matrix."""
    sparsity = rng.choice([0.3, 0.6, 1.0])
    low = Matrix(
        [[rng.randint(-2, 2) if j < i and rng.random() < sparsity else 0 for j in range(n)] for i in range(n)]
    )
    u = Matrix.identity(n)
    for _ in range(n if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        e = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        e[i][j] = rng.randint(-1, 1)
        u = u @ Matrix(e)
    return u @ low @ u.inverse()
