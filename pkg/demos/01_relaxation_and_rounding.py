import numpy as np

from parade_cover import RelaxedProblem, brute_force, recover_boolean, solve_relaxation

# two route points, two candidate spots, each spot sees one point
A = np.eye(2)
sol = solve_relaxation(RelaxedProblem(A, 1))
print("relaxed x:", sol.x, "t:", sol.t)          # half a robot at each spot, t = 0.5
print("best Boolean:", brute_force(A, 1).best_value)   # any real placement leaves a point dark

# the middle spot sees both points, so one robot is enough
A = np.array([[1, 1, 0],
              [0, 1, 1]], dtype=float)
placed = recover_boolean(A, 1)
print("selected:", placed.selected, "t:", placed.t_boolean, "iterations:", placed.iterations)

# a bigger random instance: relaxation >= optimum >= heuristic
def compare(seed, S=3):
    rng = np.random.default_rng(seed)
    A = (rng.random((12, 14)) < 0.35).astype(float)
    relax = solve_relaxation(RelaxedProblem(A, S))
    exact = brute_force(A, S)
    heur = recover_boolean(A, S)
    print(f"seed {seed}: relaxation {relax.t:.3f} >= optimum {exact.best_value:g} >= heuristic {heur.t_boolean:g}")
    print("  fractional entries in the relaxed x:", int(np.sum((relax.x > 1e-9) & (relax.x < 1 - 1e-9))))
    print("  oracle subset:", exact.best_subset, "heuristic subset:", heur.selected)
    # reweighting w_i = alpha / (tau + x_i) pushes small entries towards zero
    for k, r in enumerate(heur.residuals):
        print(f"  iteration {k}: distance from Boolean {r:.4f}")
    print("  converged:", heur.converged, "rounded:", heur.rounded, "stalled:", heur.stalled)


compare(1)
# here the reweighting reaches a fixed point with tied fractional entries;
# the weights are then equal on the support and cannot break the tie, so
# the top-S fallback rounds, and it happens to miss the optimum
compare(23)
