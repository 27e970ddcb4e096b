import json
import logging
import os
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import CacheSchemaError
from .series_engine import format_rational
from .toda_recursions import HurwitzTable

try:
    import fcntl
except ImportError:  # non-POSIX: no advisory locking
    fcntl = None

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def table_to_document(table: HurwitzTable) -> Dict[str, Any]:
    return {
        'schema_version': SCHEMA_VERSION,
        'gmax': table.gmax,
        'dmax': table.dmax,
        'entries': [{'g': g, 'd': d, 'H': format_rational(value)} for g, d, value in table.rows()],
    }


def table_from_document(document: Dict[str, Any]) -> HurwitzTable:
    """
    Rebuild a HurwitzTable from its JSON document

    Args:
        document (Dict): parsed JSON with schema_version, gmax, dmax, entries

    Returns:
        HurwitzTable: the table

    Raises:
        CacheSchemaError: unknown schema_version or malformed entries
    """
    version = document.get('schema_version')
    if version != SCHEMA_VERSION:
        raise CacheSchemaError(f"unsupported Hurwitz table schema_version {version!r} (expected {SCHEMA_VERSION})")
    try:
        table = HurwitzTable(int(document['gmax']), int(document['dmax']))
        for entry in document['entries']:
            g, d = int(entry['g']), int(entry['d'])
            if g < 0 or d < 1:
                raise ValueError(f"cell (g={g}, d={d}) out of range")
            table.entries[(g, d)] = Fraction(str(entry['H']))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise CacheSchemaError(f"malformed Hurwitz table document: {e}")
    return table


@contextmanager
def _locked(handle, exclusive: bool):
    if fcntl is None:
        yield handle
        return
    fcntl.flock(handle.fileno(), fcntl.LOCK_EX if exclusive else fcntl.LOCK_SH)
    try:
        yield handle
    finally:
        fcntl.flock(handle.fileno(), fcntl.LOCK_UN)


class TableStore:
    """
    JSON cache for a HurwitzTable, shared by the CLI and the test fixtures
    """

    def __init__(self, persist_path: str = "data/hurwitz_table.json"):
        self.persist_path = Path(persist_path)

    def exists(self) -> bool:
        return self.persist_path.exists()

    def save(self, table: HurwitzTable) -> None:
        """Write the table under an exclusive advisory lock"""
        self.persist_path.parent.mkdir(parents=True, exist_ok=True)
        text = json.dumps(table_to_document(table), indent=2, sort_keys=True) + "\n"
        with open(self.persist_path, 'a+', encoding='utf-8') as handle:
            with _locked(handle, exclusive=True):
                handle.seek(0)
                handle.truncate()
                handle.write(text)
                handle.flush()
                os.fsync(handle.fileno())
        logger.info(f"💾 Saved Hurwitz table to {self.persist_path} ({len(table.entries)} entries)")

    def load(self) -> Optional[HurwitzTable]:
        """The cached table, or None when there is no cache file"""
        if not self.persist_path.exists():
            logger.info(f"📁 No Hurwitz table cache at {self.persist_path}")
            return None
        with open(self.persist_path, 'r', encoding='utf-8') as handle:
            with _locked(handle, exclusive=False):
                text = handle.read()
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise CacheSchemaError(f"cache {self.persist_path} is not valid JSON: {e}")
        if not isinstance(document, dict):
            raise CacheSchemaError(f"cache {self.persist_path} does not hold a JSON object")
        table = table_from_document(document)
        logger.info(f"📂 Loaded Hurwitz table from {self.persist_path} ({len(table.entries)} entries)")
        return table

    def load_covering(self, gmax: int, dmax: int) -> Optional[HurwitzTable]:
        """The cached table if it covers (gmax, dmax), else None"""
        table = self.load()
        if table is None:
            return None
        if not table.covers(gmax, dmax):
            logger.info(f"⚠️  Cached table (gmax={table.gmax}, dmax={table.dmax}) does not cover g<={gmax}, d<={dmax}")
            return None
        return table
