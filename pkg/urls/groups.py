# groups.py - Coset enumeration and abelianization endpoints

from typing import List

from pydantic import BaseModel, Field

from urls.common import MAX_COSETS, execute


class EnumerateRequest(BaseModel):
    genus: int
    boundary: int = 0
    subgroup: List[str] = []
    max_cosets: int = Field(default=10000, ge=1)


def enumerate_cosets(request: EnumerateRequest):
    """Todd-Coxeter over the presentation; overflow is reported, never read as infinite"""
    return execute(
        command="enumerate",
        genus=request.genus,
        boundary=request.boundary,
        subgroup=request.subgroup,
        max_cosets=min(request.max_cosets, MAX_COSETS),
    )


def abelianize(genus: int, boundary: int):
    return execute(command="abelianize", genus=genus, boundary=boundary)
