"""
Compound word lists and character whitelists.

A corpus file holds one two-character compound per line. Every line is
trimmed and NFC-normalized before its length is checked, so a "character"
is one Unicode scalar after normalization. Repeated compounds accumulate
multiplicity (this is how several readings of one written form show up in
a flat word list). Self-pairs such as 人人 are kept here; simplification
drops them later.
"""

import unicodedata
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Tuple

from app.errors import CorpusParseError, CharsetError
from app.utils.logger import get_logger, log_with_context
from app.utils.validators import require_choice

logger = get_logger(__name__)

POLICIES = ('strict', 'skip')

BOM = '\ufeff'


@dataclass(frozen=True)
class Compound:
    """One directed upper -> lower character pair with its multiplicity."""

    upper: str
    lower: str
    multiplicity: int = 1

    def __post_init__(self):
        if len(self.upper) != 1 or len(self.lower) != 1:
            raise ValueError(f"compound ends must be single characters: {self.upper!r}, {self.lower!r}")
        if self.multiplicity < 1:
            raise ValueError(f"multiplicity must be >= 1, got {self.multiplicity}")

    @property
    def word(self) -> str:
        return self.upper + self.lower


@dataclass(frozen=True)
class CharSet:
    """Character whitelist, e.g. the common-use characters."""

    members: FrozenSet[str]
    label: str = ""

    def __post_init__(self):
        if not self.members:
            raise CharsetError("character set is empty")

    def __contains__(self, char: str) -> bool:
        return char in self.members

    def __len__(self) -> int:
        return len(self.members)


@dataclass
class ParseReport:
    """Line accounting for one corpus parse."""

    accepted: int = 0
    skipped: int = 0
    warnings: List[Tuple[int, str]] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            "accepted": self.accepted,
            "skipped": self.skipped,
            "warnings": [{"line": line, "reason": reason} for line, reason in self.warnings],
        }


def normalize(text: str) -> str:
    """Trim surrounding whitespace (CR included) and apply NFC."""
    return unicodedata.normalize('NFC', text.strip())


def _content_lines(stream: Iterable[str]):
    """Yield (line number, normalized text) for non-blank, non-comment lines."""
    for line_no, raw in enumerate(stream, start=1):
        if line_no == 1:
            raw = raw.lstrip(BOM)
        text = normalize(raw)
        if not text or text.startswith('#'):
            continue
        yield line_no, text


def parse_compounds(stream: Iterable[str], policy: str = 'strict') -> Tuple[List[Compound], ParseReport]:
    """
    Parse a compound word list.

    Lines of exactly two characters become compounds; duplicate
    (upper, lower) pairs accumulate multiplicity. Output order is the order
    in which each pair first appears.

    Args:
        stream: Text lines (an open file or any iterable of str)
        policy: 'strict' aborts on the first malformed line,
                'skip' records it in the report and continues

    Returns:
        (compounds, report)

    Raises:
        CorpusParseError: Malformed line under the strict policy
    """
    require_choice('policy', policy, POLICIES)

    counts: Dict[Tuple[str, str], int] = {}
    report = ParseReport()

    for line_no, text in _content_lines(stream):
        if len(text) != 2:
            reason = f"expected 2 characters, found {len(text)}"
            if policy == 'strict':
                raise CorpusParseError(line_no, reason)
            report.skipped += 1
            report.warnings.append((line_no, reason))
            continue

        key = (text[0], text[1])
        counts[key] = counts.get(key, 0) + 1
        report.accepted += 1

    compounds = [Compound(upper, lower, count) for (upper, lower), count in counts.items()]

    log_with_context(
        logger, "INFO",
        "Parsed compound corpus",
        policy=policy,
        accepted=report.accepted,
        skipped=report.skipped,
        distinct=len(compounds)
    )
    for line_no, reason in report.warnings:
        log_with_context(logger, "WARNING", "Skipped corpus line", line=line_no, reason=reason)

    return compounds, report


def load_charset(stream: Iterable[str], label: str = "") -> CharSet:
    """
    Load a one-character-per-line whitelist.

    Duplicate entries are logged as warnings and collapsed.

    Raises:
        CharsetError: Line holding other than one character, or empty result
    """
    members = set()
    duplicates = 0

    for line_no, text in _content_lines(stream):
        if len(text) != 1:
            raise CharsetError(f"not a single character: {text!r}", line_no)
        if text in members:
            duplicates += 1
            log_with_context(
                logger, "WARNING",
                "Duplicate charset entry",
                line=line_no,
                char=text,
                label=label
            )
            continue
        members.add(text)

    if not members:
        raise CharsetError("character set is empty")

    log_with_context(
        logger, "INFO",
        "Loaded character set",
        label=label,
        size=len(members),
        duplicates=duplicates
    )

    return CharSet(frozenset(members), label)


def format_corpus(compounds: Iterable[Compound]) -> List[str]:
    """
    Render compounds back into corpus lines.

    A compound of multiplicity m is written on m lines so re-parsing
    reproduces it.
    """
    lines = []
    for compound in compounds:
        lines.extend([compound.word] * compound.multiplicity)
    return lines
