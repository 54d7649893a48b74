"""Writes the expected `lphodge table gromov` output from the closed-form counts."""

import csv
import sys

SPLIT = [
    ("A", range(1, 9), lambda n: 2 * n - 2),
    ("B", range(2, 9), lambda n: 4 * n - 6),
    ("C", range(2, 9), lambda n: 2 * n - 2),
    ("D", range(4, 9), lambda n: 4 * n - 8),
]
EXCEPTIONAL = [("G2", 2, 4), ("F4", 4, 14), ("E6", 6, 20), ("E7", 7, 32), ("E8", 8, 56)]
RESTRICTED = {
    1: lambda n: (4 * n - 4, 1),
    2: lambda n: (8 * n - 8, 3),
    3: lambda n: (8 * n - 8, 1),
    4: lambda n: (16 * n - 16, 1),
}


def rule(n2):
    return "k+1" if n2 == 1 else "k+min(k,n2)"


def rows():
    for family, ranks, n1 in SPLIT:
        for n in ranks:
            yield family, f"{family}{n}", n, n1(n), 1
    for group, rank, n1 in EXCEPTIONAL:
        yield group, group, rank, n1, 1
    for case, profile in RESTRICTED.items():
        for n in range(2, 7):
            n1, n2 = profile(n)
            yield f"Cn-restricted-{case}", f"C{n}/restricted-{case}", n, n1, n2


def main():
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["family", "group", "rank", "n1", "n2", "weight_sum", "rule"])
    for family, group, rank, n1, n2 in rows():
        out.writerow([family, group, rank, n1, n2, n1 + 2 * n2, rule(n2)])


if __name__ == "__main__":
    main()
