"""Full-scale comparison run: 1e7 generated bits -> 312500 words -> scan.

Mirrors the acceptance criterion's full mode; writes a summary JSON plus
the packed word stream and final orbit state for reuse.
"""
import json, time
import numpy as np
from scipy.special import gammaincc
from cubicorbit import (MT19937, generate_bits, load_recurrence_matrices,
                        run_suite, scan_conditions_ab, validate_triple)
from cubicorbit.bitstream import write_words_le

OUT = "/root/pkg/.fullrun"
CHUNK = 1_000_000
TOTAL = 10_000_000

state = validate_triple(0, 1, -1)
parts = []
t0 = time.perf_counter()
for i in range(TOTAL // CHUNK):
    bits, state = generate_bits(state, CHUNK)
    parts.append(bits.bits)
    print(f"chunk {i+1}/10 done at {time.perf_counter()-t0:.0f}s "
          f"(coeff bits ~{state.triple.max_coeff_bits()})", flush=True)
full = np.concatenate(parts)
gen_seconds = time.perf_counter() - t0

from cubicorbit import BitStream
stream = BitStream(full)
with open(f"{OUT}/final_state.txt", "w") as fh:
    fh.write(state.to_text())

words = stream.pack_words().words
assert words.size == 312_500
write_words_le(f"{OUT}/cubic_words_1e7.bin", words)

a, b = load_recurrence_matrices()
cpairs = scan_conditions_ab(words, a, b)
mu = (312_500 - 624) / 512
sigma = (mu * (1 - 1 / 512)) ** 0.5
counts = np.zeros((4, 4), dtype=np.int64)
for p in cpairs:
    counts[p.y_lag_top8 // 64, p.y_top8 // 64] += 1
expected = len(cpairs) / 16
chi2 = float(((counts - expected) ** 2 / expected).sum())
pval = float(gammaincc(7.5, chi2 / 2.0))
diag = sum(1 for p in cpairs if p.y_top8 == p.y_lag_top8)

mt_words = MT19937(5489).generate(312_500)
mpairs = scan_conditions_ab(mt_words, a, b)
mt_all_diag = all(p.y_top8 == p.y_lag_top8 for p in mpairs)

suite = run_suite(stream)

summary = {
    "generation_seconds": gen_seconds,
    "cubic_matches": len(cpairs),
    "cubic_match_window": [mu - 6 * sigma, mu + 6 * sigma],
    "cubic_diag_matches": diag,
    "cubic_grid_counts": counts.tolist(),
    "cubic_chi2": chi2,
    "cubic_chi2_p": pval,
    "mt_matches": len(mpairs),
    "mt_all_diagonal": mt_all_diag,
    "suite_all_passed": suite.all_passed,
    "suite": {r.name: r.p_value for r in suite.reports},
    "checks": {
        "cubic_count_in_window": abs(len(cpairs) - mu) <= 6 * sigma,
        "cubic_uniform_at_0.001": pval >= 0.001,
        "cubic_mostly_off_diagonal": diag < len(cpairs) / 2,
        "mt_exact_diagonal": mt_all_diag,
        "mt_count_in_window": abs(len(mpairs) - mu) <= 6 * sigma,
    },
}
with open(f"{OUT}/summary.json", "w") as fh:
    json.dump(summary, fh, indent=2)
print(json.dumps(summary["checks"], indent=2), flush=True)
print("full-scale run complete", flush=True)
