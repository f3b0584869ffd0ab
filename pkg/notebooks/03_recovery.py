# %% [markdown]
# # Filling in missing frequencies
#
# With `s` nonzero samples and `|L|` unobserved frequencies, `2 s |L| < M N`
# makes the sparse signal the unique best fit to what was observed.  The
# solver tries every support of size `s` and keeps the best least-squares
# fit.

# %%
import numpy as np

from qdft_uncertainty.recovery import (
    RecoveryProblem,
    noisy_recovery_experiment,
    observe,
    random_band,
    random_sparse_signal,
    recover,
)

rng = np.random.default_rng(3)
M, N, s = 4, 4, 2
band = random_band(M, N, 3, rng)
f = random_sparse_signal(M, N, s, rng)
res = recover(RecoveryProblem(M, N, band, observe(f, band), s))
print("support", res.support.entries, "max error", np.abs(res.signal.data - f.data).max())

# %% [markdown]
# With noise of norm eps on the observed band the error stays under
# `2 eps / sqrt(1 - 2 s |L| / MN)`.

# %%
rec = noisy_recovery_experiment(M, N, s, band, eps=0.05, trials=20, seed=1)
print("violations", rec.violations, "max error/bound", round(rec.max_ratio, 3))
print(rec.to_csv().splitlines()[:4])
