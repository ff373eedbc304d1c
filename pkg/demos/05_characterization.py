# Is a graph invariant a spin-model partition function?  Run the necessary conditions.
from fractions import Fraction

from spinrank import SpinMatrix
from spinrank.characterize import run_characterization
from spinrank.invariants import SpinSource, TableSource


def table(fn):
    return TableSource.tabulate(fn, 4, 3)


candidates = {
    "p_I2": SpinSource(SpinMatrix.identity(2)),
    "empty indicator": table(lambda g: 1 if g.vertex_count == 0 else 0),
    "(1/2)^|V|": table(lambda g: Fraction(1, 2) ** g.vertex_count),
    "|V| + 1": table(lambda g: g.vertex_count + 1),
    "2 on the empty graph": table(lambda g: 2 if g.vertex_count == 0 else 1),
}

for name, f in candidates.items():
    report = run_characterization(f)
    print("==", name)
    print(report.render())
    if report.violation is not None:
        # every witness can be recomputed from the invariant alone
        print("replayed:", report.violation.replay(f))
