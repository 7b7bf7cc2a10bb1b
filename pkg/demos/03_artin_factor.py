# # The Artin factor C_a(n)
#
# The leading constant splits into the Artin constants, a local density at the
# modulus D and an Euler product over the other primes. A second route sums
# the singular series directly; the two agree up to truncation.

# In[1]:

from artin_goldbach import euler_constant, ksum_constant, triple_spec

for bases, n in (((2, 2, 2), 101), ((5, 5, 5), 101), ((27, 27, 27), 111), ((27, 27, 27), 103)):
    t = triple_spec(*bases)
    e = euler_constant(t, n, 10**4)
    k = ksum_constant(t, n, 20, 60)
    print(bases, n, f"euler {e.value:.6f}  k-sum {k.value:.6f}")

# For (27, 27, 27) and n = 103 = 7 mod 12 the Euler form is exactly zero; the
# truncated k-sum is small but not zero.

# # Local factors
#
# Away from the discriminants sigma(p) has a closed form. Its deviation from 1
# decays at least like 1/p^2:

# In[2]:

from artin_goldbach import sigma_p_closed

t = triple_spec(2, 3, 5)
for p in (7, 11, 101, 1009):
    print(p, float(sigma_p_closed(t, 101, p) - 1))
