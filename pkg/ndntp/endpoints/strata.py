from __future__ import annotations

import logging
from typing import Iterable

from ..schemas import StratumSyncConfig
from .client import ClientRunReport, NdntpClient
from .context import AppContext
from .server import NdntpServer

logger = logging.getLogger(__name__)


class StratumSync:
    """Keeps a stratum-N server stepped to the servers of stratum N-1.

    An embedded client reads the serving clock and targets
    ``/NDNTP/time/stratum=<N-1>``; every successful run steps the serving
    clock by the combined offset. Failed runs leave it unchanged.
    """

    def __init__(
            self,
            server: NdntpServer,
            config: StratumSyncConfig,
            ctx: AppContext,
            *,
            trust_anchors: Iterable[str],
    ) -> None:
        if server.stratum < 2:
            raise ValueError(f"{server.node_id} is stratum {server.stratum}; only stratum >= 2 synchronizes")
        self.server = server
        self.config = config
        self.steps: list[int] = []
        client_config = config.client.model_copy(update={"target_stratum": server.stratum - 1})
        self.client = NdntpClient(
            server.node_id,
            client_config,
            ctx,
            clock=server.serving_time,
            trust_anchors=trust_anchors,
            on_report=self.stratum_sync_step,
        )

    def schedule(self) -> None:
        self.client.schedule_runs(self.config.start_at_us)

    def stratum_sync_step(self, report: ClientRunReport) -> None:
        if report.result is None:
            logger.warning(
                "%s stratum sync run %d failed, serving clock unchanged: %s",
                self.server.node_id, report.run_index, report.failure,
            )
            return
        offset = report.result.combined_offset
        self.server.step(offset)
        self.steps.append(offset)
