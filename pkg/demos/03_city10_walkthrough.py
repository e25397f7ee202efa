import tempfile
from pathlib import Path

from parade_cover import load_scenario, route_instance, run, shipped_scenario
from parade_cover.render import render_frame
from parade_cover.results import write_results

# the bundled desk-scale city: 10 blocks, 37 steps, 512 candidates, 6 robots
s = load_scenario(shipped_scenario("city10"))
print(s.name, "-", len(s.world.obstacles), "blocks,", s.steps, "steps,",
      s.candidate_count, "candidates,", s.team_size, "robots")

result = run(s)
for rec in result.records[::6]:
    print(f"step {rec.step_index:2d}: min coverage {rec.t_boolean:g} "
          f"(weakest point {rec.min_coverage_point_index}), moved {rec.move_distance:7.1f} m, "
          f"{rec.iterations} LP solves, {rec.solve_seconds * 1e3:.1f} ms")

totals = result.totals()
print("every step fully covered:", totals["min_t_boolean"] >= 1)
print(f"mean solve {totals['mean_solve_seconds'] * 1e3:.2f} ms, "
      f"max {totals['max_solve_seconds'] * 1e3:.2f} ms")

# results as JSON Lines plus one SVG frame
out = Path(tempfile.mkdtemp(prefix="city10_"))
write_results(result, out / "results.jsonl", s.name)
k = 18
svg = render_frame(s, result.records[k], route_instance(s.path, s.schedule, k))
(out / f"frame_{k:04d}.svg").write_text(svg)
print("wrote", sorted(p.name for p in out.iterdir()), "to", out)
