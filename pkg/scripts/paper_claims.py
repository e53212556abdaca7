"""Print every worked number from the family construction next to what the code computes."""
from hailstone import (
    REGISTRY,
    family_term,
    predicted_steps,
    seed_search,
    stopping_count,
    theorem_steps,
)

FIXTURES = {1: 3, 2: 1, 9: 19, 11: 14, 27: 111, 109: 113, 437: 115}


def main():
    print("stopping counts")
    for n, quoted in FIXTURES.items():
        got = stopping_count(n)
        print(f"  N({n}) = {got:4d}  quoted {quoted:4d}  {'ok' if got == quoted else 'MISMATCH'}")

    print("\nfamilies (term: oracle / unified / per-family formula)")
    for name, spec in REGISTRY.items():
        cells = []
        for n in range(5):
            t = family_term(spec, n)
            cells.append(f"{t}:{stopping_count(t)}/{predicted_steps(spec, n)}/{theorem_steps(spec, n)}")
        print(f"  {name} c={spec.coefficient:<2} p={spec.parity} " + "  ".join(cells))

    print("\nseed search")
    used = set()
    for name in ("a", "b", "c", "d", "e", "e"):
        c = seed_search(REGISTRY[name], depth=5, exclude=used)
        used.add(c.next_seed)
        print(f"  from {name}: beta = {c.source_term}*2^{c.exponent} = {c.beta} -> seed {c.next_seed}")


if __name__ == "__main__":
    main()
