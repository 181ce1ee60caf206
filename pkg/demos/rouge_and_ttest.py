"""
Scoring summaries with ROUGE and a paired t-test
================================================
"""
from discsum import paired_ttest, rouge_n, rouge_su

reference = "the zestimate is often wrong because it cannot see inside the house"
for cand in [
    "the zestimate is often wrong",
    "zillow cannot see inside the house so the zestimate is often wrong",
    "houses have kitchens",
]:
    r2 = rouge_n(cand, [reference], 2)
    su4 = rouge_su(cand, [reference], 4)
    print(f"R-2 {r2.recall:.3f}  R-SU4 {su4.recall:.3f}  {cand}")

# per-topic scores of two systems; differences are what get tested
system_a = [0.12, 0.09, 0.15, 0.11, 0.10, 0.14]
system_b = [0.10, 0.08, 0.11, 0.10, 0.07, 0.12]
res = paired_ttest(system_a, system_b)
print(f"t={res.t_statistic:.4f} df={res.degrees_of_freedom} p={res.p_value:.4f}")
