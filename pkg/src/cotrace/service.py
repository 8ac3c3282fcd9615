"""HTTP front end.

Every computation is exposed as a POST endpoint taking JSON manifests
(inline, not file paths) and returning the results object that the
command line wraps into its report envelope. Spaces resolve against the
built-in zoo plus any manifests supplied in the request's `spaces`
list; user manifests are parsed strictly and validated.

Error mapping: InputError -> 400 `bad-input`, ModelInvalid -> 422
`invalid-model` (violations listed), ComputationError -> 409
`computation-error`. Framework-level request validation keeps
FastAPI's own 422 shape, which clients treat as malformed input.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Union

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field, StrictInt

from . import __version__
from .coincidence import (
    coincidence_report,
    homology_self_map,
    lefschetz_number,
)
from .errors import ComputationError, InputError, ModelInvalid
from .exact_linalg import AbelianGroup, IntMatrix, cokernel, snf
from .graded_ring import (
    CohomologyClass,
    CohomologyModel,
    HomologyClass,
    RingMap,
    euler_characteristic,
    validate_map,
    validate_model,
)
from .manifests import parse_map_dict, parse_space_dict
from .spectral import gysin_cohomology, s1_bundle_reidemeister
from .sphere_example import SphereCoincidenceInput, sphere_reidemeister
from .zoo import builtin_spaces

__all__ = ["app", "create_app"]


# ======================================================================
# request bodies
# ======================================================================

class LefschetzRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    map: dict
    spaces: List[dict] = Field(default_factory=list)


class CoincideRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    f: dict
    g: dict
    spaces: List[dict] = Field(default_factory=list)


class SelfCoincideRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    f: dict
    spaces: List[dict] = Field(default_factory=list)


class BundleRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    n: StrictInt
    k: StrictInt


class SphereRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    m: StrictInt
    n: StrictInt
    hopf_f: StrictInt = 0
    hopf_g: StrictInt = 0


class GysinRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    base: Union[str, dict]
    euler: str
    spaces: List[dict] = Field(default_factory=list)


class SnfRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    matrix: List[List[StrictInt]]


class ValidateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    manifest: dict
    spaces: List[dict] = Field(default_factory=list)


# ======================================================================
# response bodies
# ======================================================================

class GroupOut(BaseModel):
    free_rank: int
    torsion: List[int]
    pretty: str


class ClassOut(BaseModel):
    degree: int
    coefficients: Dict[str, int]


class ChainOut(BaseModel):
    degree: int
    coordinates: List[int]


class LefschetzOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)
    name: str
    source: str
    target: str
    value: int = Field(alias="lambda")


class CoincideOut(BaseModel):
    f: str
    g: str
    primary_class: ClassOut
    rho_image_M: ChainOut
    lambda_N: ChainOut
    nonzero: bool


class SelfCoincideOut(BaseModel):
    f: str
    chi_target: int
    primary_class: ClassOut
    rho_image_M: ChainOut
    lambda_N: ChainOut
    nonzero: bool


class BundleOut(BaseModel):
    n: int
    k: int
    H1_hoeq: GroupOut
    trace: str
    residue: int
    nonzero: bool
    nielsen_tilde: int
    nielsen: int
    trivial_bundle: bool


class SphereOut(BaseModel):
    m: int
    n: int
    hopf_f: int
    hopf_g: int
    trace_value: int
    regime: str
    nielsen_tilde: int
    nielsen: int


class GysinDegreeOut(BaseModel):
    degree: int
    coker_piece: GroupOut
    ker_piece: GroupOut
    resolved: Optional[GroupOut]


class GysinOut(BaseModel):
    base: str
    euler: Dict[str, int]
    degrees: List[GysinDegreeOut]


class SnfOut(BaseModel):
    diagonal: List[int]
    rank: int
    left: List[List[int]]
    right: List[List[int]]
    cokernel: GroupOut


class ValidateOut(BaseModel):
    kind: str
    name: str
    valid: bool
    violations: List[str]


class SpacesOut(BaseModel):
    spaces: List[str]


class HealthOut(BaseModel):
    status: str
    version: str


# ======================================================================
# serialization helpers
# ======================================================================

def _group_out(group: AbelianGroup) -> GroupOut:
    return GroupOut(free_rank=group.free_rank, torsion=list(group.torsion),
                    pretty=group.describe())


def _class_out(cls: CohomologyClass) -> ClassOut:
    basis = cls.model.basis(cls.degree)
    coefficients = {gen.label: coeff
                    for gen, coeff in zip(basis, cls.coeffs) if coeff != 0}
    return ClassOut(degree=cls.degree, coefficients=coefficients)


def _chain_out(chain: HomologyClass) -> ChainOut:
    return ChainOut(degree=chain.degree, coordinates=list(chain.coords))


def _registry(extra: List[dict]) -> Dict[str, CohomologyModel]:
    spaces = builtin_spaces()
    for payload in extra:
        model = parse_space_dict(payload)
        spaces[model.name] = model
    return spaces


def _resolve_space(ref: Union[str, dict],
                   spaces: Dict[str, CohomologyModel]) -> CohomologyModel:
    if isinstance(ref, str):
        if ref not in spaces:
            raise InputError("unknown space %r" % ref)
        return spaces[ref]
    return parse_space_dict(ref)


def _parse_euler(expression: str, base: CohomologyModel) -> CohomologyClass:
    """`label` or `<int>*label`, e.g. `x` or `2*x`."""
    text = expression.strip()
    coefficient = 1
    if "*" in text:
        head, _, tail = text.partition("*")
        try:
            coefficient = int(head.strip())
        except ValueError:
            raise InputError("bad coefficient %r in Euler class expression"
                             % head.strip()) from None
        text = tail.strip()
    try:
        degree, _ = base.position(text)
    except KeyError:
        raise InputError("unknown label %r on space %r"
                         % (text, base.name)) from None
    return coefficient * base.basis_class(text)


def _bundle_trace_display(residue: int, k: int) -> str:
    if k == 0:
        return "%d" % residue
    return "%d mod %d" % (residue, k)


# ======================================================================
# application
# ======================================================================

def create_app() -> FastAPI:
    app = FastAPI(title="cotrace", version=__version__)

    @app.exception_handler(InputError)
    async def _bad_input(request: Request, exc: InputError):
        return JSONResponse(status_code=400, content={
            "code": "bad-input", "message": str(exc)})

    @app.exception_handler(ModelInvalid)
    async def _invalid_model(request: Request, exc: ModelInvalid):
        return JSONResponse(status_code=422, content={
            "code": "invalid-model", "message": "validation failed",
            "violations": list(exc.violations)})

    @app.exception_handler(ComputationError)
    async def _computation_error(request: Request, exc: ComputationError):
        return JSONResponse(status_code=409, content={
            "code": "computation-error", "message": str(exc)})

    @app.get("/health", response_model=HealthOut)
    async def health():
        return HealthOut(status="ok", version=__version__)

    @app.get("/spaces", response_model=SpacesOut)
    async def spaces():
        return SpacesOut(spaces=sorted(builtin_spaces()))

    @app.post("/lefschetz", response_model=LefschetzOut,
              response_model_by_alias=True)
    async def lefschetz(request: LefschetzRequest):
        registry = _registry(request.spaces)
        ring_map = parse_map_dict(request.map, registry)
        if ring_map.source != ring_map.target:
            raise InputError(
                "Lefschetz numbers need a self-map; %r goes %s -> %s"
                % (ring_map.name, ring_map.source.name, ring_map.target.name))
        value = lefschetz_number(homology_self_map(ring_map))
        return LefschetzOut(name=ring_map.name, source=ring_map.source.name,
                            target=ring_map.target.name, value=value)

    @app.post("/coincide", response_model=CoincideOut)
    async def coincide(request: CoincideRequest):
        registry = _registry(request.spaces)
        f = parse_map_dict(request.f, registry)
        g = parse_map_dict(request.g, registry)
        report = coincidence_report(f, g)
        return CoincideOut(
            f=f.name, g=g.name,
            primary_class=_class_out(report.primary_class),
            rho_image_M=_chain_out(report.rho_image_M),
            lambda_N=_chain_out(report.lambda_N),
            nonzero=report.nonzero)

    @app.post("/selfcoincide", response_model=SelfCoincideOut)
    async def selfcoincide(request: SelfCoincideRequest):
        registry = _registry(request.spaces)
        f = parse_map_dict(request.f, registry)
        report = coincidence_report(f, f)
        return SelfCoincideOut(
            f=f.name, chi_target=euler_characteristic(f.source),
            primary_class=_class_out(report.primary_class),
            rho_image_M=_chain_out(report.rho_image_M),
            lambda_N=_chain_out(report.lambda_N),
            nonzero=report.nonzero)

    @app.post("/s1bundle", response_model=BundleOut)
    async def s1bundle(request: BundleRequest):
        report = s1_bundle_reidemeister(request.n, request.k)
        return BundleOut(
            n=report.n, k=report.k, H1_hoeq=_group_out(report.h1_hoeq),
            trace=_bundle_trace_display(report.trace, report.k),
            residue=report.trace, nonzero=report.nonzero,
            nielsen_tilde=report.nielsen_tilde, nielsen=report.nielsen,
            trivial_bundle=report.trivial_bundle)

    @app.post("/sphere", response_model=SphereOut)
    async def sphere(request: SphereRequest):
        data = SphereCoincidenceInput(m=request.m, n=request.n,
                                      hopf_f=request.hopf_f,
                                      hopf_g=request.hopf_g)
        report = sphere_reidemeister(data)
        return SphereOut(
            m=data.m, n=data.n, hopf_f=data.hopf_f, hopf_g=data.hopf_g,
            trace_value=report.trace_value, regime=report.regime,
            nielsen_tilde=report.nielsen_tilde, nielsen=report.nielsen)

    @app.post("/gysin", response_model=GysinOut)
    async def gysin(request: GysinRequest):
        registry = _registry(request.spaces)
        base = _resolve_space(request.base, registry)
        euler_class = _parse_euler(request.euler, base)
        result = gysin_cohomology(base, euler_class)
        euler_out = {gen.label: coeff
                     for gen, coeff in zip(base.basis(2), euler_class.coeffs)
                     if coeff != 0}
        return GysinOut(
            base=base.name, euler=euler_out,
            degrees=[GysinDegreeOut(
                degree=piece.degree,
                coker_piece=_group_out(piece.coker_piece),
                ker_piece=_group_out(piece.ker_piece),
                resolved=None if piece.resolved is None
                else _group_out(piece.resolved))
                for piece in result.degrees])

    @app.post("/snf", response_model=SnfOut)
    async def smith_normal_form(request: SnfRequest):
        try:
            matrix = IntMatrix.from_rows(request.matrix)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        decomposition = snf(matrix)
        return SnfOut(
            diagonal=list(decomposition.divisors),
            rank=decomposition.rank,
            left=[list(row) for row in decomposition.U.data],
            right=[list(row) for row in decomposition.V.data],
            cokernel=_group_out(cokernel(matrix)))

    @app.post("/validate", response_model=ValidateOut)
    async def validate(request: ValidateRequest):
        payload = request.manifest
        if not isinstance(payload, dict):
            raise InputError("manifest must be a JSON object")
        if "matrices" in payload:
            registry = _registry(request.spaces)
            ring_map = parse_map_dict(payload, registry, validate=False)
            violations = validate_map(ring_map)
            if violations:
                raise ModelInvalid(violations)
            return ValidateOut(kind="map", name=ring_map.name, valid=True,
                               violations=[])
        model = parse_space_dict(payload, validate=False)
        violations = validate_model(model)
        if violations:
            raise ModelInvalid(violations)
        return ValidateOut(kind="space", name=model.name, valid=True,
                           violations=[])

    return app


app = create_app()
