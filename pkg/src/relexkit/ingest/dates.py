"""Calendar-date localization with bundled month-name tables."""

from dataclasses import dataclass

from ..errors import UserError

MONTH_NAMES: dict[str, tuple[str, ...]] = {
    "fr": (
        "janvier", "février", "mars", "avril", "mai", "juin",
        "juillet", "août", "septembre", "octobre", "novembre", "décembre",
    ),
    "en": (
        "January", "February", "March", "April", "May", "June",
        "July", "August", "September", "October", "November", "December",
    ),
}


@dataclass(frozen=True)
class KBDate:
    """A proleptic Gregorian date; month/day are None below their precision."""

    year: int
    month: int | None = None
    day: int | None = None

    def __post_init__(self):
        if self.month is not None and not 1 <= self.month <= 12:
            raise ValueError(f"month out of range: {self.month}")
        if self.day is not None and self.month is None:
            raise ValueError("day precision requires a month")


def localize_date(value: KBDate, language: str) -> str:
    """Render a date as day-month-year text, e.g. "22 février 1732" in French.

    Year-precision values render the year alone; month precision renders
    month and year.
    """
    try:
        months = MONTH_NAMES[language]
    except KeyError:
        supported = ", ".join(sorted(MONTH_NAMES))
        raise UserError(
            f"unsupported language {language!r} for dates; supported: {supported}"
        ) from None
    if value.month is None:
        return str(value.year)
    month_name = months[value.month - 1]
    if value.day is None:
        return f"{month_name} {value.year}"
    return f"{value.day} {month_name} {value.year}"
