# # Exponential sums over Galois-admissible classes
#
# S_{a,q,k}(b) sums e(by/q) over the units y mod q that extend to an automorphism
# of Q(zeta_k, a^(1/k)). At k = 1 this is the Ramanujan sum.

# In[1]:

import numpy as np

from artin_goldbach import artin_spec
from artin_goldbach.splitting import exp_sum_S_all, field_degree, ramanujan_sum

s = artin_spec(2)
vals = exp_sum_S_all(s, 12, 1)
print(np.round(vals.real, 10))
print([ramanujan_sum(12, b) for b in range(12)])

# At a prime power p^j with p not dividing b * Delta the sum has modulus 1 when
# j = 1 and vanishes when j > 1.

# In[2]:

for q in (7, 49, 343):
    vals = exp_sum_S_all(s, q, 14)
    zs = [b for b in range(1, q) if b % 7]
    print(q, np.round(np.abs(vals[zs]).min(), 12), np.round(np.abs(vals[zs]).max(), 12))

# Moduli built only from primes of Delta but not dividing Delta give zero.

# In[3]:

vals = exp_sum_S_all(s, 16, 2)
print(np.round(np.abs(vals[1::2]), 12))

# Degrees of the fields F_{a,q,k} = Q(zeta_q, zeta_k, a^(1/k)):

# In[4]:

for q, k in ((1, 1), (8, 2), (3, 6), (24, 6)):
    print(q, k, field_degree(s, q, k))
