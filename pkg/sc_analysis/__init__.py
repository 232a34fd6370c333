from .errors import *
from .growth import (
    AsymRelation, GrowthFn, GrowthTerm, RelationKind, compare, evaluate,
    parse_growth
)
from .waveform import (
    BasebandProcessor, ChannelModel, ComplexityModel, WaveformModel,
    complexity_catalog, get_complexity_model
)
from .scmetrics import ScReport, full_report, sweep_sc_throughput
from .classifier import (
    CapacityQuery, DftConjecture, Verdict, classify_ofdm, comp_limited,
    scalability
)
from .scenario import Scenario, load_scenario, parse_scenario
from .version import VERSION

name = "sc-analysis"
__version__ = VERSION
