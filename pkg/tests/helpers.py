"""Independent oracles for the test-suite.

Nothing here goes through the package's coding or metric code: occurrence
counts are recounted by scanning labelled facts and the distance is summed
modality by modality in plain Python.
"""

# Published 10 x 19 disjunctive table and its reference row, copied by hand.
RAW_ROWS = """
0 1 0 1 0 0 1 0 0 0 0 0 0 1 1 0 0 0 1
0 1 0 0 1 0 1 0 0 1 0 0 0 0 0 1 0 1 0
1 0 0 1 0 1 0 0 1 0 0 0 0 0 0 1 1 0 0
0 1 1 0 0 1 0 1 0 0 0 0 0 0 1 0 1 0 0
0 1 0 0 1 0 1 0 0 0 0 1 0 0 0 1 1 0 0
1 0 0 1 0 1 0 0 0 0 1 0 0 0 0 1 0 1 0
0 1 1 0 0 0 1 0 0 0 0 0 1 0 1 0 0 0 1
1 0 0 1 0 0 1 0 0 0 0 0 1 0 1 0 1 0 0
0 1 1 0 0 1 0 0 1 0 0 0 0 0 1 0 0 1 0
0 1 0 0 1 1 0 0 0 1 0 0 0 0 0 1 0 1 0
"""
RAW_REF = "1 0 0 1 0 0 1 0 0 0 1 0 0 0 0 1 0 0 1"
RAW_SIZES = (2, 3, 2, 7, 2, 3)
PUBLISHED_ROW = (3.573, 3.867, 3.573, 5.147, 3.867, 3.573, 4.507, 3.573, 5.147, 4.507)


def raw_matrix():
    return [[int(v) for v in line.split()] for line in RAW_ROWS.strip().splitlines()]


def raw_ref():
    return [int(v) for v in RAW_REF.split()]


def decode(row, sizes):
    """Bit row -> tuple of 0-based modality codes, one per dimension."""
    out, pos = [], 0
    for k in sizes:
        block = row[pos:pos + k]
        assert sum(block) == 1
        out.append(block.index(1))
        pos += k
    return tuple(out)


def brute_unit_sum(sizes, facts, ref, fact, keep, variant):
    """Unscaled chi-squared sum for one fact.

    ``facts`` and ``ref``/``fact`` are tuples of modality codes; ``keep`` is
    a sequence of 0/1 per dimension.
    """
    total = 0.0
    for j, k in enumerate(sizes):
        for mod in range(k):
            m = sum(1 for f in facts if f[j] == mod)
            if m == 0:
                continue
            x_ref = 1 if ref[j] == mod else 0
            y = 1 if fact[j] == mod else 0
            if not keep[j]:
                if variant == "remove":
                    continue
                y = 0
            total += (x_ref - y) ** 2 / m
    return total


def brute_counts(sizes, facts):
    return [sum(1 for f in facts if f[j] == mod) for j, k in enumerate(sizes) for mod in range(k)]
