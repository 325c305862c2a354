# Randomised exact verification of every property of the construction
#
# Each suite draws random members of C (rational breakpoints, denominators up
# to 64) and checks one identity or inequality exactly.  A wrong
# implementation is caught: the mutants swap in deliberately broken pieces.
from plsemigroup.verify import MUTANTS, CHECK_IDS, InstanceGen, mutant, run_all, run_suite

gen = InstanceGen(seed=0, count=100)
for rep in run_all(gen):
    print(f"{'PASS' if rep.ok else 'FAIL'} {rep.check_id:<20} {rep.passed}/{rep.instances}")

print()
small = InstanceGen(seed=0, count=30)
for name in MUTANTS:
    with mutant(name):
        failing = [cid for cid in CHECK_IDS if not run_suite(cid, small).ok]
    print(f"mutant {name:<24} caught by: {', '.join(failing)}")
