"""The protocol itself as a channel from resource states to Choi matrices.

The map taking Tr_{B2..Bn}[resource] to the simulated channel's Choi matrix
has an explicit Kraus family: a kernel-sector block and one operator per
(total spin, projection, multiplet) stratum of the measurement.
"""

import numpy as np

from pbtsim import (Alternate, apply_protocol, choi_from_reduced, make_family,
                    protocol_gram, protocol_kraus, reduced_port_state,
                    unreduced_multiplicity)

n = 3
pk = protocol_kraus(n)
print(f"n={n}: {len(pk.k2)} kernel-sector operators + {len(pk.k1)} bulk operators,")
print(f"each 4 x {2 ** (n + 1)}; the family with explicit receiver qubits has")
print(f"{unreduced_multiplicity(n)} copies of each.")

family = Alternate(0.8)
rho_red = reduced_port_state(family, n)
via_kraus = apply_protocol(pk, rho_red)
via_components = choi_from_reduced(make_family(family, n))
print("\nprotocol Kraus vs component assembly:",
      np.abs(via_kraus - via_components).max())
print("output trace:", np.trace(via_kraus).real)

# sum_k K_k^dag K_k is not the identity: trace preservation is guaranteed
# only on port-symmetric inputs
gram = protocol_gram(pk)
print("\nGram operator sum_k K^dag K: trace", np.trace(gram).real,
      " vs identity defect", np.abs(gram - np.eye(2 ** (n + 1))).max())
