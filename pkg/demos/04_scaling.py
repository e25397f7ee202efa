import numpy as np

from parade_cover import load_scenario, run, shipped_scenario

s = load_scenario(shipped_scenario("city10"))
run(s)  # warm-up


def mean_ms(scenario):
    return 1e3 * min(run(scenario).mean_solve_seconds for _ in range(2))


# the number of candidate spots drives the cost...
for n in (512, 1024, 2048, 4096):
    print(f"S=12  n={n:4d}: {mean_ms(s.with_overrides(team_size=12, candidate_count=n)):6.2f} ms/step")

# ...while quadrupling the team costs less than twice as much
for S in (6, 12, 24):
    print(f"S={S:2d}  n=1024: {mean_ms(s.with_overrides(team_size=S, candidate_count=1024)):6.2f} ms/step")

# and a four times larger candidate set rarely buys a better placement
small = np.array([r.t_boolean for r in run(s).records])
large = np.array([r.t_boolean for r in run(s.with_overrides(candidate_count=2048)).records])
print(f"n=2048 vs n=512: better on {np.mean(large > small):.0%} of steps, "
      f"equal on {np.mean(large == small):.0%}, worse on {np.mean(large < small):.0%}")
