# presentations.py - Presentation and word endpoints

from pydantic import BaseModel

from urls.common import execute


class CheckWordRequest(BaseModel):
    genus: int
    boundary: int = 0
    word: str


def get_presentation(genus: int, boundary: int, enumeration: bool = False):
    """Generators and tagged relators of M(N_{g,n})"""
    return execute(command="present", genus=genus, boundary=boundary, enumeration=enumeration)


def check_word(request: CheckWordRequest):
    """Homology action of a word; result.trivial tells whether it could be a relator"""
    return execute(command="check-word", genus=request.genus, boundary=request.boundary, word=request.word)
