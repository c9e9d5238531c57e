# verification.py - Oracle and derivation replay endpoints

from typing import Optional

from urls.common import execute


def check_oracle(genus: int, boundary: int, family: Optional[str] = None):
    """Check every relator (or one family) on mod-2 homology"""
    return execute(command="oracle", genus=genus, boundary=boundary, family=family)


def replay_script(script: str, genus: int, boundary: int):
    return execute(command="replay", genus=genus, boundary=boundary, script=script)
