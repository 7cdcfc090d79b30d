"""Small named seeds used by the tests, scripts and CLI examples."""

from .seeds import initial_seed

A2_B = ((0, 1), (-1, 0))
A2_LAMBDA = ((0, 1), (-1, 0))

KRONECKER_B = ((0, 2), (-2, 0))
KRONECKER_LAMBDA = ((0, 1), (-1, 0))


def block_diag(*blocks):
    size = sum(len(b) for b in blocks)
    widths = [len(b[0]) if b else 0 for b in blocks]
    ncols = sum(widths)
    out = [[0] * ncols for _ in range(size)]
    r = c = 0
    for b, w in zip(blocks, widths):
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[r + i][c + j] = x
        r += len(b)
        c += w
    del size
    return tuple(tuple(row) for row in out)


A2A2_B = block_diag(A2_B, A2_B)
A2A2_LAMBDA = block_diag(A2_LAMBDA, A2_LAMBDA)


def a2():
    return initial_seed(A2_B, A2_LAMBDA)


def kronecker():
    return initial_seed(KRONECKER_B, KRONECKER_LAMBDA)


def a2a2():
    return initial_seed(A2A2_B, A2A2_LAMBDA)


CATALOG = {"A2": a2, "Kronecker": kronecker, "A2+A2": a2a2}
