"""Built-in attenuation table, clinical/SI unit conversion, and medium
construction from measured power laws.

Clinical attenuation prefactors are quoted in dB/cm/MHz^y; the SI form
used by the physics core is Np/m/(rad/s)^y.  The dB -> Np factor is the
amplitude convention ln(10)/20, since the decay law attenuates field
amplitude, not intensity.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass

from .core import Medium
from .errors import DomainError, IncompleteMediumError, MediaFileError

__all__ = [
    "ClinicalAttenuation",
    "DB_PER_NEPER",
    "builtin_media",
    "lookup_medium",
    "to_si",
    "from_si",
    "medium_from_power_law",
    "load_media",
    "MEDIA_FILE_ENV",
]

DB_PER_NEPER = 20.0 / math.log(10.0)
MEDIA_FILE_ENV = "FRACWAVE_MEDIA_FILE"
_CSV_HEADER = ["name", "alpha0_db_per_cm_per_MHz_y", "y"]


@dataclass(frozen=True)
class ClinicalAttenuation:
    """Power-law attenuation in clinical units: alpha0 in dB/cm/MHz^y.

    Entries known only by exponent (no measured prefactor) carry
    ``alpha0_db = None`` and are flagged via ``prefactor_known``.
    """

    alpha0_db: float | None
    y: float

    def __post_init__(self):
        if self.alpha0_db is not None and not self.alpha0_db > 0.0:
            raise DomainError(f"clinical prefactor must be positive, got {self.alpha0_db}")
        if not (0.0 <= self.y <= 2.0):
            raise DomainError(f"power-law exponent must be in [0, 2], got {self.y}")

    @property
    def prefactor_known(self) -> bool:
        return self.alpha0_db is not None


_BUILTIN = (
    ("Water", ClinicalAttenuation(0.0022, 2.0)),
    ("Fat", ClinicalAttenuation(0.158, 1.7)),
    ("DuctCancer", ClinicalAttenuation(0.57, 1.3)),
    ("BodyTissue", ClinicalAttenuation(0.87, 1.5)),
    ("RigidTubeBoundaryLayer", ClinicalAttenuation(None, 0.5)),
    ("SedimentsRock", ClinicalAttenuation(None, 1.0)),
)


def builtin_media():
    """The built-in (name, attenuation) table."""
    return list(_BUILTIN)


def lookup_medium(name: str, extra=None) -> ClinicalAttenuation:
    table = dict(_BUILTIN)
    if extra:
        table.update(extra)
    try:
        return table[name]
    except KeyError:
        raise DomainError(
            f"unknown medium {name!r}; available: {', '.join(sorted(table))}"
        ) from None


def to_si(clinical: ClinicalAttenuation) -> tuple[float, float]:
    """Convert dB/cm/MHz^y to Np/m/(rad/s)^y; the exponent is unchanged.

    Factors: dB->Np = ln(10)/20, cm^-1 -> m^-1 = x100, and MHz -> rad/s
    inside the power contributes (2*pi*1e6)^-y.
    """
    if not clinical.prefactor_known:
        raise IncompleteMediumError("entry carries an exponent only, no prefactor to convert")
    alpha0_si = clinical.alpha0_db / DB_PER_NEPER * 100.0 / (2.0 * math.pi * 1e6) ** clinical.y
    return alpha0_si, clinical.y


def from_si(alpha0_si: float, y: float) -> ClinicalAttenuation:
    """Exact algebraic inverse of :func:`to_si`."""
    if not alpha0_si > 0.0:
        raise DomainError(f"SI prefactor must be positive, got {alpha0_si}")
    alpha0_db = alpha0_si * DB_PER_NEPER / 100.0 * (2.0 * math.pi * 1e6) ** y
    return ClinicalAttenuation(alpha0_db=alpha0_db, y=y)


def medium_from_power_law(alpha0_si: float, y: float, c0: float, eta: float) -> Medium:
    """Construct a lossy medium whose small-loss attenuation law matches
    (alpha0_si, y) exactly, for a chosen temporal loss order.

    Inverts y = s + eta - 1 and alpha0 = gamma*c0**(1-s)*sin(pi*eta/2)/2.
    """
    if not alpha0_si > 0.0:
        raise DomainError(f"SI prefactor must be positive, got {alpha0_si}")
    if not (0.0 < eta < 2.0):
        raise DomainError(f"temporal loss order must be in (0, 2), got {eta}")
    s = y + 1.0 - eta
    if not (0.0 <= s <= 2.0):
        lo = max(y - 1.0, 0.0)
        hi = min(y + 1.0, 2.0)
        raise DomainError(
            f"no admissible medium: s = y+1-eta = {s} outside [0, 2]; "
            f"choose eta in [{lo}, {hi}] intersected with (0, 2)"
        )
    gamma = 2.0 * alpha0_si / (c0 ** (1.0 - s) * math.sin(math.pi * eta / 2.0))
    return Medium(name=f"powerlaw(alpha0={alpha0_si:g}, y={y:g})", c0=c0, gamma=gamma, eta=eta, s=s)


def load_media(path) -> list[tuple[str, ClinicalAttenuation]]:
    """Load a media table from a UTF-8 CSV file.

    Format: header ``name,alpha0_db_per_cm_per_MHz_y,y``; ``#`` starts a
    comment line; an empty prefactor cell marks an exponent-only entry.
    """
    entries: list[tuple[str, ClinicalAttenuation]] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8", newline="") as fh:
        rows = [(i + 1, line) for i, line in enumerate(fh) if line.strip() and not line.lstrip().startswith("#")]
    if not rows:
        return entries
    header_line_no, header = rows[0]
    parsed_header = next(csv.reader([header]))
    if [c.strip() for c in parsed_header] != _CSV_HEADER:
        raise MediaFileError(
            f"bad header {parsed_header!r}, expected {_CSV_HEADER!r}", line=header_line_no
        )
    for line_no, line in rows[1:]:
        cells = next(csv.reader([line]))
        if len(cells) != 3:
            raise MediaFileError(f"expected 3 columns, got {len(cells)}", line=line_no)
        name = cells[0].strip()
        if not name:
            raise MediaFileError("empty medium name", line=line_no)
        if name in seen:
            raise MediaFileError(f"duplicate medium name {name!r}", line=line_no)
        try:
            alpha0 = float(cells[1]) if cells[1].strip() else None
            y = float(cells[2])
        except ValueError as err:
            raise MediaFileError(f"non-numeric value in row {name!r}: {err}", line=line_no) from None
        try:
            entry = ClinicalAttenuation(alpha0_db=alpha0, y=y)
        except DomainError as err:
            raise MediaFileError(f"invalid row {name!r}: {err}", line=line_no) from None
        seen.add(name)
        entries.append((name, entry))
    return entries


def default_media_file() -> str | None:
    """Path from the FRACWAVE_MEDIA_FILE environment variable, if set."""
    return os.environ.get(MEDIA_FILE_ENV) or None
