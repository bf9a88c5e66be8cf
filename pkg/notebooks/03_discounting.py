# coding: utf-8

# # Discounting properly versus typing a negative inflation rate
#
# A spreadsheet that only has an inflation cell can be coaxed into
# discounting by entering -6%. That gives a factor of (1 - d)^n where a
# discount calls for (1 + d)^-n.

# In[1]:

import numpy as np

from cashplan import load_demo
from cashplan.analysis import Proper, SignFlipHack, dcf_project
from cashplan.projection import scenario_set

for n in (1, 10, 24, 40):
    print(n, round(Proper(0.06).factor(n), 4), round(SignFlipHack(0.06).factor(n), 4))


# The gap widens with n because (1 - d)(1 + d) = 1 - d^2 < 1.

# In[2]:

n = np.arange(0, 61)
gap = (1.06 ** -n) - (0.94 ** n)
print(f"largest gap {gap.max():.4f} at n={n[gap.argmax()]}")


# Now with a stronger income of 18k a year.

# In[3]:

model = load_demo().with_changes(income_central=18_000.0)
central = scenario_set(model)[1]
proper = dcf_project(model, central, 110_000.0, Proper(0.06))
hacked = dcf_project(model, central, 110_000.0, SignFlipHack(0.06))
print(f"proper: end {proper.real_balance[-1]:,.0f}, breach {proper.first_breach_year}")
print(f"hacked: end {hacked.nominal_balance[-1]:,.0f}, breach {hacked.first_breach_year}")
