# # Counting n = p1 + p2 + p3 with prescribed primitive roots
#
# We weight each ordered triple by log p1 log p2 log p3 and compare with
# C_a(n) n^2.

# In[1]:

from artin_goldbach import triple_spec
from artin_goldbach.empirical import classical_baseline, compare, count_representations, sieve_for

N = 10**5
data = sieve_for([2, 27], N)
rep = compare(triple_spec(2, 2, 2), 99999, data)
print(f"(2,2,2) n = 99999: {rep.raw_count} triples, ratio {rep.ratio:.4f}")
print("classical:", classical_baseline(99999, data))

# The base 27 only allows n = 3 mod 12 once the primes 2 and 3 are removed.

# In[2]:

t = triple_spec(27, 27, 27)
for n in (50007, 50011, 50015, 50019):
    r = count_representations(t, n, data, exclude_small=True)
    print(n, n % 12, r.raw_count)
