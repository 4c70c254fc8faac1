"""
Fixtures compartidas de la suite
"""

import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from cognitive_semantics.core.observation import (  # noqa: E402
    AcIm,
    ObserverSpec,
    ParamDecl,
    ParamTag,
    PrimitiveObservation,
    ResolutionPower,
    WorldPath,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

EYE = ResolutionPower(
    state=(ParamDecl("t", ParamTag.INT), ParamDecl("s1", ParamTag.TUPLE), ParamDecl("s0", ParamTag.TUPLE)),
    resolution=(ParamDecl("aspect", ParamTag.SYMBOL),),
    result=ParamDecl("value", ParamTag.SYMBOL),
)


def make_obs(
    obs_id: str = "",
    t: int = 0,
    s0: int = 0,
    aspect: str = "shape",
    result: str = "boy",
    observer: str = "narrator",
    actual: bool = True,
    world=("real",),
    s1: int = 0,
) -> PrimitiveObservation:
    """Observación primitiva con el poder 'eye' de una dimensión"""
    return PrimitiveObservation(
        world=WorldPath(tuple(world)),
        observer=ObserverSpec((observer,), EYE, (t, (s1,), (s0,)), AcIm.ACTUAL if actual else AcIm.IMAGINARY),
        resolution_point=(aspect,),
        result=result,
        obs_id=obs_id,
    )


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def isolated_env(tmp_path, monkeypatch):
    """Directorio de trabajo y HOME vacíos: sin settings ni .env heredados"""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("HOME", str(tmp_path))
    for key in list(os.environ):
        if key.startswith("COGSEM_"):
            monkeypatch.delenv(key)
    return tmp_path
