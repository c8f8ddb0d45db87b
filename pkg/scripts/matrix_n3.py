"""Show the n=3 change-of-basis matrix with row labels and column composites."""
from plates.combinatorics import standard_decomposition
from plates.grammar import format_csp, format_osp
from plates.plate_algebra import change_of_basis


def main():
    cb = change_of_basis(3)
    cols = [format_csp(standard_decomposition(o)) for o in cb.labels]
    width = max(map(len, cols))
    print(" " * 8 + " ".join(c.rjust(width) for c in cols))
    for label, row in zip(cb.labels, cb.dense()):
        print(format_osp(label).ljust(8) + " ".join(str(x).rjust(width) for x in row))


if __name__ == "__main__":
    main()
