"""Expand the 7-vertex tree cone in every space and spot-check each closed form."""
from plates.analytic_oracle import GenericityPolicy, Oracle, verify_identity
from plates.plate_algebra import DirectedTree, Space, tree_expand

EDGES = "1>3,2>3,2>4,2>5,3>6,7>3"


def main():
    tree = DirectedTree.parse(EDGES)
    print(f"tree {tree}")
    for space, oracle in ((Space.hatP, Oracle.P), (Space.P, Oracle.P), (Space.hatP1, Oracle.hatP1), (Space.P1, Oracle.P1)):
        v = tree_expand(tree, space)
        report = verify_identity(v, tree, oracle, GenericityPolicy(seed=1), trials=10)
        print(f"{space.value:6} {len(v):4} terms  {report}")


if __name__ == "__main__":
    main()
