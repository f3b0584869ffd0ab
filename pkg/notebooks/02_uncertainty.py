# %% [markdown]
# # Counting nonzeros on both sides
#
# The product of the number of nonzero samples and the number of nonzero
# coefficients is at least M N.  Deltas and the lattice pattern meet it
# with equality.  Small grids can be checked exhaustively.

# %%
from qdft_uncertainty import QSignal
from qdft_uncertainty.uncertainty import (
    audit,
    case_table,
    consecutive_window_nonzero_check,
    example_block_pattern,
    exhaustive_verify,
)

for M, N in [(2, 2), (2, 3), (4, 4)]:
    print(f"delta {M}x{N}:", audit(QSignal.delta(M, N)))

for k, l in [(2, 2), (2, 3), (3, 2)]:
    r = audit(example_block_pattern(k, l))
    print(f"lattice k={k} l={l}: {r.n_time} x {r.n_freq} = {r.product}")

# %%
for M, N in [(1, 4), (2, 2), (2, 3), (3, 3), (2, 4)]:
    res = exhaustive_verify(M, N, trials_per_support=50, seed=1)
    print(f"{M}x{N}: passed={res.passed} over {res.supports_checked} supports")

# %% [markdown]
# ## Smallest spectrum per support size
#
# The table compares the sparsest spectrum found with the ceiling bound.
# The witness search solves for signals whose transform vanishes on a
# chosen frequency set, so structured minima are found.  Two rows differ
# from the values usually quoted: three cells on 2x2 never get below 3
# coefficients, and a row of three ones on 2x3 gets down to 2.

# %%
for M, N in [(2, 2), (2, 3)]:
    for row in case_table(M, N, trials=10):
        print(
            f"{M}x{N} size {row.n_time}: observed {row.observed_min_freq}, "
            f"bound {row.theorem_bound}, quoted {row.claimed_min_freq}"
        )

# %%
row = QSignal.from_real([[1.0, 1.0, 1.0], [0.0, 0.0, 0.0]])
print(audit(row))
print(consecutive_window_nonzero_check(row))
