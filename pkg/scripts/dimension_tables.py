"""Print the dimension table rows for n = 1..N (default 8)."""
import sys

from plates.combinatorics import dims


def main(limit=8):
    print("n\tordered_bell\tcyclic_bell\thatP1\tP1\tcomposites by k\tstirling1 by k")
    for n in range(1, limit + 1):
        d = dims(n)
        print(f"{n}\t{d.ordered_bell}\t{d.cyclic_bell}\t{d.hatP1_total}\t{d.P1_dim}\t"
              f"{' '.join(map(str, d.composite_row))}\t{' '.join(map(str, d.stirling1_row))}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 8)
