# coding: utf-8

# # How much cash does the club need up front?
#
# With no income and no opening cash the balance only falls, so the safety
# level gets breached. We ask two questions: what opening balance avoids
# that, and how big is the worst gap measured in money of the day.

# In[1]:

from cashplan import load_demo
from cashplan.analysis import edge_scan, inflation_sensitivity, peak_nominal_shortfall, required_opening_real
from cashplan.projection import IncomeLevel, IncomeScenario, scenario_set

model = load_demo().with_changes(opening_balance=0.0)
nothing = IncomeScenario(IncomeLevel.CENTRAL, 0.0)

print("required opening (real):", required_opening_real(model, nothing))
report = peak_nominal_shortfall(model, nothing, 0.0)
print(f"peak nominal shortfall {report.peak_nominal_shortfall:,.0f} in {report.binding_year}")


# The solver is closed form. With income switched on it gives one figure per scenario.

# In[2]:

for s in scenario_set(model):
    print(s.label, required_opening_real(model, s))


# ## The horizon edge
#
# The refurbishment repeats every 30 years starting in 2020, so its second
# occurrence lands on 2050, the final year. Nudging the period by one year
# pushes it off the end and the answer drops sharply.

# In[3]:

for effect in edge_scan(model, nothing, 0.0)[:4]:
    print(f"{effect.item:<22} {effect.perturbation:<16} "
          f"peak {effect.delta_peak_nominal:>10,.0f}  required {effect.delta_required_real:>9,.0f}")


# ## Inflation
#
# Moving inflation from 2% to 3% scales the peak by (1.03/1.02)^k at the
# binding year, as long as the binding year stays put.

# In[4]:

points = inflation_sensitivity(model, [nothing], 0.0, [0.02, 0.03])
low, high = (p.peak_nominal_shortfall for p in points)
k = points[0].binding_year - model.horizon.start
print(high / low, (1.03 / 1.02) ** k)
