"""
Edge-list TSV codec for compounds.

One row per distinct compound, `upper<TAB>lower<TAB>multiplicity<LF>`,
sorted by (upper, lower), UTF-8 without BOM.
"""

from typing import List, TextIO

from app.adapters.base import Codec, GraphFormatError
from app.services.corpus import Compound


class TsvEdgeCodec(Codec[List[Compound]]):
    """Reads and writes compound lists as TSV edge lists."""

    def dump(self, compounds: List[Compound], stream: TextIO) -> None:
        for compound in sorted(compounds, key=lambda c: (c.upper, c.lower)):
            stream.write(f"{compound.upper}\t{compound.lower}\t{compound.multiplicity}\n")

    def load(self, stream: TextIO) -> List[Compound]:
        compounds = []
        for line_no, line in enumerate(stream, start=1):
            line = line.rstrip('\r\n')
            if not line:
                continue
            fields = line.split('\t')
            if len(fields) != 3:
                raise GraphFormatError(f"line {line_no}: expected 3 tab-separated fields")
            upper, lower, multiplicity = fields
            try:
                compounds.append(Compound(upper, lower, int(multiplicity)))
            except ValueError as e:
                raise GraphFormatError(f"line {line_no}: {str(e)}")
        return compounds
