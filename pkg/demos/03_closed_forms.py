"""
Closed-form error analysis
==========================
"""

from yesnobf import (
    FilterShape,
    expected_fp_count,
    f_E_single_no_filter,
    fp_prob_approx,
    fp_prob_exact,
    pr_E,
    pr_E_given_not_S,
)

# exact vs exponential approximation: the approximation is a lower bound
# whose gap closes as the filter grows
print("m      exact      approx     gap")
for m in (64, 256, 1024, 4096):
    shape = FilterShape(m, 4, m // 8)
    exact = fp_prob_exact(shape)
    approx = fp_prob_approx(shape)
    print(f"{m:<6d} {exact:.6f}   {approx:.6f}   {exact - approx:.2e}")

# the residual probability after the no stage, from the stage-wise terms:
# first-stage FP mass minus what the no-filters reject, minus their own FPs
value, consistent = pr_E(pr_s=0.1, f_s=0.3, f_r=0.2, pr_r=0.05)
print(f"\npr_E = {value:.6f} (consistent inputs: {consistent})")

# conditioning on non-membership drops the prior term
print(f"pr_E_given_not_S = {pr_E_given_not_S(0.3, 0.2, 0.05).value:.6f}")

# mutually impossible inputs are reported, not clamped
value, consistent = pr_E(pr_s=0.9, f_s=0.05, f_r=0.8, pr_r=0.3)
print(f"overconstrained: value {value:.4f}, consistent {consistent}")

# with one no-filter the single-line form applies; its load defaults to n
# but the honest load is the number of recorded false positives
base = f_E_single_no_filter(p=160, q=32, k=4, k_prime=5, n=30)
light = f_E_single_no_filter(p=160, q=32, k=4, k_prime=5, n=30,
                             no_filter_load=8)
print(f"\nf_E at default load {base:.6f}, at a light load {light:.6f}")

# scale any rate by the traffic to get expected false-positive counts
rate = fp_prob_exact(FilterShape(256, 6, 30))
print(f"expect {expected_fp_count(100, rate):.3f} FPs per 100 queries")
