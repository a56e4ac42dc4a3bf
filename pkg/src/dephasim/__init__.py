"""Two-qubit dephasing under correlated environments.

Scenario engines produce the decoherence-factor quadruple
(kappa1, kappa2, kappa12, lambda12) over time for frequency-continuum,
Ohmic boson-bath and spin-star environments; the analysis layer quantifies
local and nonlocal information backflow from those traces.
"""

from .analysis import (BackflowReport, Grid, OnsetComparison, TimeSeries,
                       blp_measure_dephasing, blp_measure_grid, compare_onsets,
                       detect_backflow, sigma_rate, trace_distance)
from .bosonbath import (Fig6Overrides, InteractionClock, OhmicBathConfig,
                        SwitchingClock, eval_boson_factors, fig6_setup,
                        scan_boson_factors)
from .core import (DephasingFactors, PositivityWarning, QubitState,
                   TwoQubitDensityMatrix, TwoQubitPureState,
                   apply_dephasing_map, dephase_density, dephase_qubit,
                   marginals, reduced_states)
from .freqkernel import (CouplingSchedule, DerivedScenario, FrequencyScenario,
                         KernelPhase, derive_kernels, eval_factors,
                         scan_factors, scenario_preset)
from .quad import (GaussCosIntegrand, QuadratureError, QuadratureSettings,
                   integrate_gauss_cos, normalization, riemann_oracle)
from .spinstar import (SpinStarConfig, ThetaPair, bath_energy,
                       eval_spinstar_factors, run_figure_scan, thermal_weights)

__version__ = "0.1.0"
