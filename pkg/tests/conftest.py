import itertools
from collections import Counter

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def weights(x, q):
    return tuple(x.count(a) for a in range(q))


def brute_histogram(q, n, diffs):
    """Arrangement histogram by plain iteration over (x, d); shares no code
    with the package."""
    h = Counter()
    for x in itertools.product(range(q), repeat=n):
        for d in itertools.product(range(diffs), repeat=n):
            h[tuple(weights(tuple((xi + j * di) % q for xi, di in zip(x, d)), q) for j in range(q))] += 1
    return h
