import json
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from marshmallow import Schema, fields, post_load

from macrodiversity_mrc.models.system_config import SystemConfig, SystemConfigSchema
from macrodiversity_mrc.version import __version__


class RunManifest:
    """
    Everything needed to re-run a command: the resolved configurations (after normalization and
    perturbation), parameters, seed and the files it wrote
    """
    def __init__(self, *,
                 command: str,
                 configs: Optional[List[SystemConfig]] = None,
                 parameters: Optional[Dict[str, Any]] = None,
                 seed: Optional[int] = None,
                 outputs: Optional[List[str]] = None,
                 version: str = __version__,
                 timestamp: Optional[datetime] = None) -> None:
        self.command = command
        self.configs = configs or []
        self.parameters = parameters or {}
        self.seed = seed
        self.outputs = outputs or []
        self.version = version
        self.timestamp = timestamp or datetime.now(timezone.utc)

    def __repr__(self) -> str:
        return 'RunManifest(command={!r}, outputs={!r}, seed={!r}, version={!r})'.format(
            self.command, self.outputs, self.seed, self.version)


class RunManifestSchema(Schema):
    command = fields.Str(required=True)
    configs = fields.List(fields.Nested(SystemConfigSchema))
    parameters = fields.Dict(keys=fields.Str())
    seed = fields.Int(allow_none=True)
    outputs = fields.List(fields.Str())
    version = fields.Str()
    timestamp = fields.AwareDateTime(default_timezone=timezone.utc)

    @post_load
    def make_run_manifest(self, data: Dict, **kwargs: Any) -> RunManifest:
        return RunManifest(**data)


def dump_run_manifest(manifest: RunManifest) -> Dict[str, Any]:
    return RunManifestSchema().dump(manifest)


def load_run_manifest(data: Dict[str, Any]) -> RunManifest:
    return RunManifestSchema().load(data)


def write_run_manifest(path: str, manifest: RunManifest) -> None:
    with open(path, 'w') as manifest_file:
        json.dump(dump_run_manifest(manifest), manifest_file, indent=2, sort_keys=True)
        manifest_file.write('\n')
