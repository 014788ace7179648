"""
Abstract base class for file-format codecs.

Each codec reads and writes one on-disk format (graph JSON, edge-list TSV)
so commands stay independent of the formats they exchange.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Generic, TextIO, TypeVar

from app.errors import GraphFormatError

T = TypeVar('T')

__all__ = ['Codec', 'GraphFormatError']


class Codec(ABC, Generic[T]):
    """Abstract base class for text codecs."""

    @abstractmethod
    def dump(self, obj: T, stream: TextIO) -> None:
        """
        Serialize an object to a text stream.

        Args:
            obj: Object to write
            stream: Writable text stream (UTF-8)
        """
        pass

    @abstractmethod
    def load(self, stream: TextIO) -> T:
        """
        Parse an object from a text stream.

        Raises:
            GraphFormatError: If the content does not follow the format
        """
        pass

    def save(self, obj: T, path: str) -> None:
        # newline='\n' keeps LF endings on every platform
        with open(path, 'w', encoding='utf-8', newline='\n') as handle:
            self.dump(obj, handle)

    def read(self, path: str) -> T:
        """
        Load from a UTF-8 file (a leading BOM is ignored).

        Raises:
            GraphFormatError: Missing file, bytes that are not UTF-8, or bad content
        """
        if not Path(path).is_file():
            raise GraphFormatError(f"no such file: {path}")
        try:
            with open(path, 'r', encoding='utf-8-sig') as handle:
                return self.load(handle)
        except UnicodeDecodeError as e:
            raise GraphFormatError(f"{path}: not valid UTF-8 ({str(e)})")
