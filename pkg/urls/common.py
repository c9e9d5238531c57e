# common.py - Shared request handling for the verification endpoints

import os
from typing import Dict

from fastapi import HTTPException
from pydantic import ValidationError

from functions.commands import CommandRequest, run

MAX_GENUS = int(os.getenv("MCG_MAX_GENUS", "12"))
MAX_COSETS = int(os.getenv("MCG_MAX_COSETS", "100000"))


def execute(**fields) -> Dict:
    """Run one command and return its structured document; bad input becomes a 400"""
    genus = fields.get("genus", 0)
    if genus > MAX_GENUS:
        raise HTTPException(status_code=400, detail=f"genus {genus} is above the server limit {MAX_GENUS}")
    if fields.get("max_cosets", 0) > MAX_COSETS:
        raise HTTPException(status_code=400, detail=f"max_cosets is above the server limit {MAX_COSETS}")
    try:
        request = CommandRequest(format="structured", **fields)
        result = run(request)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "request"
        raise HTTPException(status_code=400, detail=f"{where}: {first['msg']}")
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    document = dict(result.document)
    document["exit_code"] = result.exit_code
    return document
