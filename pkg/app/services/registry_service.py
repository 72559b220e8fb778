"""
Claims registry - anchors for verification reports
"""
from pathlib import Path
from typing import Dict, List, Optional
import logging

import pandas as pd

from app.api.models import Anchor
from app.utils.config import settings
from app.utils.errors import UnitGroupLabError

logger = logging.getLogger(__name__)


class RegistryService:
    """Loads data/claims.csv once and resolves report ids to anchors"""

    def __init__(self, path: Optional[Path] = None):
        self.path = path or settings.DATA_PATH / "claims.csv"
        self._frame: Optional[pd.DataFrame] = None

    def _load(self) -> pd.DataFrame:
        if self._frame is None:
            frame = pd.read_csv(self.path, dtype=str, keep_default_na=False)
            missing = {"claim_id", "section", "quote"} - set(frame.columns)
            if missing:
                raise UnitGroupLabError(f"{self.path} lacks columns {sorted(missing)}")
            self._frame = frame.set_index("claim_id", drop=False)
            logger.info(f"Loaded {len(frame)} claims from {self.path}")
        return self._frame

    def list_claims(self) -> List[Dict[str, str]]:
        return self._load()[["claim_id", "section", "quote"]].to_dict(orient="records")

    def anchor(self, report_id: str) -> Anchor:
        """
        Anchor for a report id

        "an.8" resolves to its own row when one exists, otherwise to "an".
        """
        frame = self._load()
        for key in (report_id, report_id.split(".")[0]):
            if key in frame.index:
                row = frame.loc[key]
                return Anchor(section=row["section"], quote=row["quote"])
        raise UnitGroupLabError(f"No registered claim for {report_id!r}")


# Global instance
registry_service = RegistryService()
