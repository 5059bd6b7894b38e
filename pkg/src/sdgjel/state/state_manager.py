import json
import logging
import os
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

from sdgjel.errors import IoError
from sdgjel.matcher.keyword_reducer import Stoplist, parse_stoplist
from sdgjel.matcher.linkage import LinkageTable
from sdgjel.taxonomy.jel_taxonomy import JelTaxonomy, parse_jel_snapshot
from sdgjel.taxonomy.sdg_catalog import SdgGoal, parse_sdg_catalog

DATA_DIR_ENV = "SDGJEL_DATA_DIR"
BUNDLED_DATA_DIR = Path(__file__).resolve().parent.parent / "data"

TAXONOMY_FILE = "jel_snapshot.json"
CATALOG_FILE = "sdg_catalog.json"
STOPLIST_FILE = "stoplist.txt"

PathLike = Union[str, Path]


def resolve_data_dir(data_dir: Optional[PathLike] = None) -> Path:
    """Explicit directory, then SDGJEL_DATA_DIR, then the bundled data"""
    if data_dir:
        return Path(data_dir)
    env_dir = os.getenv(DATA_DIR_ENV)
    if env_dir:
        return Path(env_dir)
    return BUNDLED_DATA_DIR


class StateManager:
    """Loads the taxonomy, catalog and stoplist, and persists linkage tables"""

    def __init__(
        self,
        data_dir: Optional[PathLike] = None,
        taxonomy_path: Optional[PathLike] = None,
        catalog_path: Optional[PathLike] = None,
        stoplist_path: Optional[PathLike] = None,
    ):
        self.logger = logging.getLogger(__name__)
        self.data_dir = resolve_data_dir(data_dir)

        # Per-file flags win over the data directory
        self.taxonomy_file = Path(taxonomy_path) if taxonomy_path else self.data_dir / TAXONOMY_FILE
        self.catalog_file = Path(catalog_path) if catalog_path else self.data_dir / CATALOG_FILE
        self.stoplist_file = Path(stoplist_path) if stoplist_path else self.data_dir / STOPLIST_FILE

        self._taxonomy: Optional[JelTaxonomy] = None
        self._goals: Optional[Tuple[SdgGoal, ...]] = None
        self._stoplist: Optional[Stoplist] = None

    def _read_bytes(self, file_path: Path) -> bytes:
        try:
            return file_path.read_bytes()
        except OSError as e:
            raise IoError(file_path, e.strerror or str(e)) from e

    def _load_json(self, file_path: Path) -> Dict:
        """Load JSON file"""
        try:
            return json.loads(self._read_bytes(file_path).decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            raise IoError(file_path, f"not valid JSON: {e}") from e

    def _save_json(self, file_path: Path, data: Dict):
        """Save JSON file"""
        try:
            file_path.parent.mkdir(parents=True, exist_ok=True)
            with open(file_path, "w", encoding="utf-8") as f:
                json.dump(data, f, indent=2, ensure_ascii=False)
                f.write("\n")
        except OSError as e:
            raise IoError(file_path, e.strerror or str(e)) from e

    def load_taxonomy(self) -> JelTaxonomy:
        if self._taxonomy is None:
            self.logger.info(f"Loading JEL snapshot from {self.taxonomy_file}")
            self._taxonomy = parse_jel_snapshot(self._read_bytes(self.taxonomy_file))
        return self._taxonomy

    def load_goals(self) -> Tuple[SdgGoal, ...]:
        if self._goals is None:
            self.logger.info(f"Loading SDG catalog from {self.catalog_file}")
            self._goals = parse_sdg_catalog(self._read_bytes(self.catalog_file))
        return self._goals

    def load_stoplist(self) -> Stoplist:
        if self._stoplist is None:
            self.logger.info(f"Loading stoplist from {self.stoplist_file}")
            stoplist = parse_stoplist(self._read_bytes(self.stoplist_file))
            stoplist.check_against(self.load_goals())
            self._stoplist = stoplist
        return self._stoplist

    def get_goal(self, goal_id: int) -> Optional[SdgGoal]:
        return next((g for g in self.load_goals() if g.id == goal_id), None)

    def save_linkage(self, table: LinkageTable, file_path: PathLike):
        """Write a linkage table in its export form"""
        self._save_json(Path(file_path), table.to_dict())
        self.logger.info(f"Linkage table saved to {file_path}")

    def load_linkage(self, file_path: PathLike) -> LinkageTable:
        """Read an exported linkage table, checked against the catalog"""
        table = LinkageTable.from_dict(self._load_json(Path(file_path)), self.load_goals())
        self.logger.info(f"Loaded {table.method.value} linkage from {file_path}")
        return table
