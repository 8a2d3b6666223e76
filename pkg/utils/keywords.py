import os
from typing import List, Optional, Union

from utils.core import debug_print

COMMENT_PREFIX = "#"


def encode_keyword(keyword: Union[str, bytes]) -> bytes:
    """Keywords are arbitrary byte-strings; text is taken as UTF-8."""
    if isinstance(keyword, str):
        return keyword.encode("utf-8")
    return bytes(keyword)


def normalize_keyword_text(text: str) -> Optional[bytes]:
    """The keyword a line of text stands for on the command line.

    Surrounding whitespace is dropped. Blank text and ``#`` comments give None.
    List files and ``trapdoor --keyword`` both go through here.
    """
    raw = text.strip()
    if not raw or raw.startswith(COMMENT_PREFIX):
        return None
    return encode_keyword(raw)


def load_keyword_list(path: str) -> List[bytes]:
    """Load keywords from a list file, one per line, ignoring comments.

    Duplicates are kept, since each line is one ciphertext to produce.
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"{path} not found.")

    keywords: List[bytes] = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            keyword = normalize_keyword_text(line)
            if keyword is not None:
                keywords.append(keyword)

    debug_print(f"Loaded {len(keywords)} keyword(s) from {path}")
    return keywords
