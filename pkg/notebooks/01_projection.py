# coding: utf-8

# # Projecting the bundled demo model
#
# The demo holds one asset with two recurring events over 2016-2050. We
# project the cash balance for each income level and look at both the
# base-year track and the money-of-the-day row.

# In[1]:

import numpy as np

from cashplan import load_demo
from cashplan.projection import project_all
from cashplan.schedule import yearly_flow_table

model = load_demo()
{year: amount for year, amount in yearly_flow_table(model).items() if amount}


# Three scenarios come from the central income and the two multipliers.

# In[2]:

results = project_all(model)
for r in results:
    print(f"{r.scenario.label:>8}  income {r.scenario.annual_income:>7,.0f}  "
          f"min real {r.real_balance.min():>9,.0f}  end nominal {r.nominal_balance[-1]:>11,.0f}")


# The nominal row is the real row times (1 + g)^k. The safety row moves with it,
# so a breach in one is a breach in the other.

# In[3]:

central = results[1]
k = np.arange(len(central.years))
print(np.allclose(central.nominal_balance, central.real_balance * 1.02 ** k))
print("first breach:", central.first_breach_year)


# A few rows of the central track.

# In[4]:

for record in list(central.records())[::8]:
    print(record)
