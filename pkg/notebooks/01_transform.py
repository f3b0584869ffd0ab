# %% [markdown]
# # The two-sided quaternion transform
#
# A quaternion matrix is stored as an `(M, N, 4)` array.  The forward
# transform multiplies each sample by an i-exponential on the left and a
# j-exponential on the right.  This script checks the three ways of
# computing it against each other and shows that swapping the kernel sides
# changes the answer.

# %%
import numpy as np

from qdft_uncertainty import QSignal, dqft, dqft_matrix_form, idqft
from qdft_uncertainty.dqft import embedding_matrix, make_plan, unvectorize, vectorize
from qdft_uncertainty.quaternion import Quaternion

rng = np.random.default_rng(0)
f = QSignal.random(4, 6, rng)
F = dqft(f)

# %%
print("round trip error:", np.abs(idqft(F).data - f.data).max())
print("matrix form vs double sum:", np.abs(dqft_matrix_form(f).data - F.data).max())
W = embedding_matrix(make_plan(4, 6))
print("real embedding vs double sum:", np.abs(unvectorize(W @ vectorize(f), 4, 6).data - F.data).max())
print("embedding is orthogonal:", np.allclose(W.T @ W, np.eye(W.shape[0])))

# %% [markdown]
# A single `j` at (1, 1) on a 4x4 grid.  At (u, v) = (1, 0) the left kernel
# is `-i`, and `(-i) j = -k`.  If the kernels were swapped we would get `+k`.

# %%
g = QSignal.delta(4, 4, at=(1, 1), value=Quaternion(0, 0, 1, 0))
G = dqft(g)
for uv in [(0, 0), (1, 0), (0, 1), (1, 1)]:
    print(uv, G[uv])
