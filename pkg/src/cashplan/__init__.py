"""Long-horizon capital-asset cash-flow planning with built-in model review."""

from .analysis import (EdgeEffect, Proper, SensitivityPoint, ShortfallReport, SignFlipHack,
                       dcf_project, edge_scan, inflation_sensitivity, npv,
                       peak_nominal_shortfall, required_opening_real)
from .audit import AuditConfig, audit_model
from .diagnostics import Diagnostic, Severity
from .history import (BalanceSheetYear, ProfitReconstruction, cash_drag, check_identities,
                      parse_sheets, reconstruct_profit, roce)
from .modelfile import (ModelFileError, load_demo, load_model, parse_model_file,
                        serialize_model)
from .money import (Horizon, MoneyConvention, annualized_growth, discount_factor,
                    growth_factor, nominal_rate, real_rate, round_pounds)
from .projection import (IncomeLevel, IncomeScenario, ProjectionResult, project,
                         scenario_set)
from .report import ReportFormat, emit_report
from .schedule import (AssetSchedule, Model, OneOffEvent, OptionToggle, RecurringEvent,
                       expand_event, yearly_flow_table, yearly_flows)

__version__ = "0.1.0"
