from typing import Annotated, Any

from pydantic import AfterValidator

from scenario_bounds.datatypes.errors import UnknownBuiltinError
from scenario_bounds.services.problems.loader import list_problems


def _builtin(name: str) -> str:
    # requests never address files on the server, only the built-in configurations
    if name not in list_problems():
        raise UnknownBuiltinError("problem", name)
    return name


def _builtin_members(config: dict[str, Any]) -> dict[str, Any]:
    for member in config.get("members", []):
        if isinstance(member, str):
            _builtin(member)
    return config


BuiltinName = Annotated[str, AfterValidator(_builtin)]
ConfigField = BuiltinName | dict[str, Any]
FamilyField = BuiltinName | Annotated[dict[str, Any], AfterValidator(_builtin_members)]
