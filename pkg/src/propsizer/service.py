"""JSON-over-HTTP service wrapping the optimizer and evaluator.

Endpoints: POST /api/optimize, POST /api/evaluate, GET /api/catalog,
GET /api/health. Infeasible designs come back as 422 with the binding
constraint; malformed input is 400. Responses for /api/optimize go through
the same serializer as the CLI so the two paths are byte-identical.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .catalog import Catalogs, bundled_catalog_dir, catalog_to_dict, load_catalogs
from .errors import DomainError, InfeasibleError, PropsizerError
from .evaluator import evaluate
from .optimizer import optimize
from .serialize import (
    design_result_to_dict,
    dump_json,
    performance_to_dict,
    requirements_from_dict,
    system_from_dict,
)
from .statmodels import StatModels, fit_stat_models


def create_app(catalog_dir: str | None = None, stat: StatModels | None = None) -> FastAPI:
    """Build the service around one immutable catalog/model snapshot."""
    directory = (
        catalog_dir or os.environ.get("PROPSIZER_CATALOG_DIR") or bundled_catalog_dir()
    )
    catalogs: Catalogs = load_catalogs(directory)
    models = stat if stat is not None else fit_stat_models(catalogs)

    app = FastAPI(title="propsizer", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "malformed request body"})

    @app.exception_handler(DomainError)
    async def _domain_handler(request: Request, exc: DomainError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(InfeasibleError)
    async def _infeasible_handler(request: Request, exc: InfeasibleError):
        body = {"error": str(exc)}
        if getattr(exc, "constraint", None):
            body["constraint"] = exc.constraint
        if getattr(exc, "step", None):
            body["step"] = exc.step
            body["step_name"] = exc.step_name
        return JSONResponse(status_code=422, content=body)

    @app.exception_handler(PropsizerError)
    async def _model_handler(request: Request, exc: PropsizerError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.get("/api/health")
    async def health():
        return {"status": "ok"}

    @app.get("/api/catalog")
    async def catalog():
        return {
            "propellers": catalog_to_dict(catalogs.propellers),
            "motors": catalog_to_dict(catalogs.motors),
            "escs": catalog_to_dict(catalogs.escs),
            "batteries": catalog_to_dict(catalogs.batteries),
        }

    @app.post("/api/optimize")
    async def api_optimize(body: dict):
        req = requirements_from_dict(body)
        result = optimize(req, catalogs, models)
        return Response(
            content=dump_json(design_result_to_dict(result)),
            media_type="application/json",
        )

    @app.post("/api/evaluate")
    async def api_evaluate(body: dict):
        if not isinstance(body, dict) or "system" not in body:
            raise DomainError("body must carry 'system' and 'hover_thrust_n'")
        system = system_from_dict(body["system"])
        try:
            hover = float(body["hover_thrust_n"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed hover_thrust_n: {exc}") from exc
        report = evaluate(system, hover)
        return Response(
            content=dump_json(performance_to_dict(report)),
            media_type="application/json",
        )

    return app


app = create_app()
