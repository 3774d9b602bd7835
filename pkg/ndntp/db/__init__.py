from .session import get_session, init_db
from .models import RunMetric, SimulationRun
