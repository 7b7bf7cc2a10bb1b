# # Primitive roots in residue classes
#
# For a base a the primes with a as a primitive root are not spread evenly over
# residue classes. The density of such primes in a class x mod q is an exact
# rational multiple of the Artin constant A_a, so we can print it as a fraction.

# In[1]:

from artin_goldbach import artin_A, artin_spec, delta_mod

# The base 27 is a cube and has discriminant 12. Only the class 5 mod 12 survives.

# In[2]:

s = artin_spec(27)
print(s)
for b in (1, 5, 7, 11):
    print(f"b = {b:2d} mod 12   delta/A = {delta_mod(s, b, 12)}")

# Compare with a count of primes up to 10^5.

# In[3]:

import numpy as np

from artin_goldbach.empirical import sieve_for

A = artin_A(s).value
data = sieve_for([27], 10**5)
n_primes = len(data.primes())
rooted = np.flatnonzero(data.primroot_array(27))
for b in (1, 5, 7, 11):
    share = np.count_nonzero(rooted % 12 == b) / n_primes
    print(f"b = {b:2d}: observed {share:.4f}   predicted {float(delta_mod(s, b, 12)) * A:.4f}")

# # The base (-15)^5
#
# Here the discriminant is -15 and h = 5. Positive classes mod 15, 3 and 5:

# In[4]:

from artin_goldbach.density import positivity_set

s = artin_spec(-759375)
for q in (15, 3, 5):
    print(q, positivity_set(s, q))
