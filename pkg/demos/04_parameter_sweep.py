"""
Monte-Carlo parameter sweeps
============================

Sweep one parameter of the geometry while everything else stays fixed; each
point averages fresh randomized builds and carries two analytic baselines,
a classic filter of the same total length and one the size of the yes stage
alone. Reduced trial counts keep this demo quick; the defaults are heavier.
"""

from yesnobf.simulate import SweepConfig, sweep

# how many no-filters help? hold m fixed so more no-filters mean a smaller
# yes-filter: the trade-off has an interior sweet spot
config = SweepConfig("r_fixed_m", start=0, stop=6, trials=300, seed=0)
result = sweep(config)

print(f"m = {config.m} bits, n = {config.n} members, "
      f"t = {config.t} queried non-members, {config.trials} trials/point\n")
print("r   mean FP   same-m BF   yes-bits-only BF")
for pt in result.points:
    print(f"{pt.value}   {pt.mean_fp:7.3f}   {pt.baseline_bf_m:9.3f}   "
          f"{pt.baseline_bf_p:9.3f}")

best = min(result.points, key=lambda pt: pt.mean_fp)
print(f"\nbest r = {best.value} with {best.mean_fp:.3f} mean FPs; "
      f"r = 0 is the plain filter at {result.points[0].mean_fp:.3f}")

# the same harness emits CSV for plotting or downstream analysis
print("\nCSV head:")
print("\n".join(result.to_csv().splitlines()[:3]))
