# coding: utf-8

# # Looking backwards, then auditing the forward model
#
# The bundled balance sheets cover four years. We check that they add up,
# rebuild the historical surplus and compare it with what the forward model
# assumes.

# In[1]:

from cashplan.history import cash_drag, check_identities, parse_sheets, reconstruct_profit, roce
from cashplan.modelfile import demo_path

sheets = parse_sheets(demo_path("balance_sheets.sheets").read_text(encoding="utf-8"))
for sheet in sheets:
    print(sheet.year, sheet.total_assets, sheet.net_current, check_identities(sheet) or "ok")


# Net current assets in 1996 were negative even though the printed figure has no sign.

# In[2]:

profit = reconstruct_profit(25_000, 126_000, 150_000, 60_000, 20)
print(profit.total, profit.per_annum)

r = roce(201_000, 574_000, 20, 0.02)
print(f"ratio {r.ratio:.3f}, nominal {r.nominal_annual:.2%}, real {r.real_annual:.2%}")
print(f"cash left idle: {cash_drag(133_000, 0.028, 15):,.0f}")


# The forward model assumes 8k a year. The history says roughly 18k.

# In[3]:

from cashplan import load_demo
from cashplan.audit import FLEXIBILITY_NOTE, audit_model

for d in audit_model(load_demo(), profit.per_annum):
    print(f"{d.rule} {d.severity.value}: {d.message}")
print(FLEXIBILITY_NOTE)
