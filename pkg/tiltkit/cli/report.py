"""
Report
------
The versioned JSON document every run produces.

Results embed full matrices of their witnesses, so a report can be re-checked without
re-running the scenario. Two runs with the same seed produce the same report up to `timing`.
"""

from __future__ import annotations
from pathlib import Path
from typing import Any, Dict, List, Union

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = 1


class Report(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_: int = Field(SCHEMA_VERSION, alias="schema")
    kind: str
    seed: int
    precision: int
    verdict: bool
    result: Dict[str, Any]
    proxies: List[str] = []
    """
    Finite stand-ins used where a statement quantifies over infinite objects.
    """
    timing: float = 0.0
    """
    Wall time in seconds.
    """

    def dumps(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)

    def write(self, path: Union[str, Path]):
        Path(path).write_text(self.dumps() + "\n")

    @classmethod
    def loads(cls, text: str) -> Report:
        """
        :raises ValueError: If the document was written for another schema version.
        """
        report = cls.model_validate_json(text)
        if report.schema_ != SCHEMA_VERSION:
            raise ValueError(f"Report schema {report.schema_} is not supported, expected {SCHEMA_VERSION}")
        return report

    @classmethod
    def read(cls, path: Union[str, Path]) -> Report:
        return cls.loads(Path(path).read_text())
