"""Utilities."""
import hashlib
import os
import re
from datetime import datetime, timezone
from decimal import ROUND_HALF_UP, Decimal

DISPLAY_QUANTUM = Decimal("0.0001")


def slugify(name):
    """Lowercase the name and collapse every run of non-alphanumerics into '-'."""
    slug = re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")
    return slug or "protocol"


def digest_bytes(data):
    """Content hash used to identify sources and models."""
    return "sha256:" + hashlib.sha256(data).hexdigest()


def round_ms(value):
    """Round a millisecond value half-up to the display precision (4 decimals)."""
    return Decimal(repr(float(value))).quantize(DISPLAY_QUANTUM, rounding=ROUND_HALF_UP)


def format_ms(value):
    return str(round_ms(value))


def format_number(value):
    """Shortest text that round-trips a stored number (ints stay ints)."""
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def timestamp_for(path=None):
    """UTC timestamp (seconds) identifying an analyzed source.

    SOURCE_DATE_EPOCH wins when set; otherwise the source modification time is used
    so that repeated runs over an unchanged file agree.
    """
    epoch = os.getenv("SOURCE_DATE_EPOCH")
    if epoch is not None:
        seconds = int(epoch)
    elif path is not None and os.path.exists(path):
        seconds = int(os.path.getmtime(path))
    else:
        seconds = int(datetime.now(timezone.utc).timestamp())
    return format_timestamp(datetime.fromtimestamp(seconds, tz=timezone.utc))


def format_timestamp(moment):
    return moment.astimezone(timezone.utc).replace(microsecond=0).strftime("%Y-%m-%dT%H:%M:%SZ")
