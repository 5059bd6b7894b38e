"""Error hierarchy shared by every sdgjel module.

Library code raises these; only the command line turns them into exit codes.
"""
from typing import Optional


class SdgJelError(Exception):
    """Base class for all sdgjel errors"""


class TaxonomyError(SdgJelError):
    """Snapshot could not be turned into a valid taxonomy"""


class DuplicateCode(TaxonomyError):
    def __init__(self, code: str):
        self.code = code
        super().__init__(f"Duplicate JEL code: {code}")


class OrphanCode(TaxonomyError):
    def __init__(self, code: str, parent: Optional[str] = None):
        self.code = code
        self.parent = parent
        super().__init__(f"JEL code {code} has no parent {parent or ''}".rstrip())


class BadCode(TaxonomyError):
    """Malformed snapshot entry; line is the 1-based entry number in the snapshot array"""

    def __init__(self, line: int, token: str, reason: str = "malformed JEL code"):
        self.line = line
        self.token = token
        self.reason = reason
        super().__init__(f"Entry {line}: {reason}: {token!r}")


class BadCatalog(SdgJelError):
    def __init__(self, goal_id: Optional[int], reason: str):
        self.goal_id = goal_id
        self.reason = reason
        where = f"goal {goal_id}" if goal_id is not None else "catalog"
        super().__init__(f"Bad SDG catalog ({where}): {reason}")


class BadStoplist(SdgJelError):
    def __init__(self, word: str, reason: str):
        self.word = word
        self.reason = reason
        super().__init__(f"Bad stoplist word {word!r}: {reason}")


class BadRank(SdgJelError):
    def __init__(self, rank: int):
        self.rank = rank
        super().__init__(f"Keyword rank must be >= 1, got {rank}")


class BadLinkage(SdgJelError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Bad linkage table: {reason}")


class IoError(SdgJelError):
    def __init__(self, path, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"Cannot read {path}: {reason}")


class UsageError(SdgJelError):
    def __init__(self, message: str):
        self.message = message
        super().__init__(message)
