# live.py - Health check and status page endpoints

import time
from typing import Dict

from fastapi.responses import HTMLResponse

from functions.builtin_scripts import builtin_names, script_by_name
from functions.derivation_checker import replay
from functions.homology_oracle import check_presentation
from functions.presentation_factory import stukow_presentation
from functions.surface_model import SurfaceSpec


def health_check(started_at: int, max_genus: int, max_cosets: int) -> Dict:
    """Health check endpoint"""
    return {
        "status": "healthy",
        "timestamp": int(time.time()),
        "uptime_seconds": int(time.time()) - started_at,
        "max_genus": max_genus,
        "max_cosets": max_cosets,
    }


def _status_row(spec: SurfaceSpec) -> str:
    p = stukow_presentation(spec)
    checks = check_presentation(p)
    failed = sum(1 for c in checks if not c.ok)
    reports = [replay(script_by_name(spec, name)) for name in builtin_names(spec)]
    scripts = ", ".join(f"{r.script} {'✅' if r.passed else '❌'}" for r in reports) or "-"
    oracle = "✅" if not failed else f"❌ {failed} failing"
    return (
        f"<tr><td>{spec.label()}</td><td>{len(p.generators)}</td>"
        f"<td>{len(p.relators)}</td><td>{oracle}</td><td>{scripts}</td></tr>"
    )


def view_status(max_genus: int):
    """Oracle and replay summary for every small surface up to max_genus"""
    try:
        rows = []
        for g in range(2, max_genus + 1):
            for n in (0, 1):
                rows.append(_status_row(SurfaceSpec(genus=g, boundary=n)))
        html_content = f"""
        <!DOCTYPE html>
        <html>
        <head>
            <title>MCG Verifier - Status</title>
            <meta charset="UTF-8">
            <style>
                table {{ border-collapse: collapse; }}
                td, th {{ border: 1px solid #ccc; padding: 4px 8px; }}
            </style>
        </head>
        <body>
            <h1>🔍 MCG Verifier - Status</h1>
            <table>
                <tr><th>surface</th><th>generators</th><th>relators</th><th>oracle</th><th>scripts</th></tr>
                {''.join(rows)}
            </table>
            <p>Generated at {time.strftime('%Y-%m-%d %H:%M:%S')}</p>
        </body>
        </html>
        """
        return HTMLResponse(content=html_content)
    except Exception as e:
        return HTMLResponse(content=f"<html><body><h1>Error</h1><p>{e}</p></body></html>", status_code=500)
