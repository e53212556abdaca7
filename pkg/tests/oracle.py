"""Deliberately naive reference implementations used only by the tests."""


def naive_sequence(n):
    """Values produced by the map from n until 1 shows up (seed 1 goes round once)."""
    seq = []
    while True:
        n = n // 2 if n % 2 == 0 else 3 * n + 1
        seq.append(n)
        if n == 1:
            return seq


def naive_steps(n):
    return len(naive_sequence(n))


def naive_odd_chain(n):
    """(halvings, next odd value) pairs read off the naive sequence."""
    pairs = []
    halvings = 0
    prev = n
    for x in naive_sequence(n):
        if prev % 2 == 0:
            halvings += 1
        if x % 2 == 1:
            pairs.append((halvings, x))
            halvings = 0
        prev = x
    return pairs
