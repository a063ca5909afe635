# Copyright 2026 The CODS Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Constraint-driven design generation over discrete design spaces."""

import json

from . import _core
from ._core import (
    CodsError,
    IoError,
    ParseError,
    ResolveError,
    ResourceLimitError,
    ShapeError,
    ValidationError,
)

__all__ = [
    "CodsError", "IoError", "ParseError", "ResolveError", "ResourceLimitError", "ShapeError",
    "ValidationError", "apply_transform", "chart_spec_schema", "compile", "generate_chart",
    "knit_prompt", "normalize_space", "run_cli", "run_pipeline", "solve", "validate_chart",
]


def _dump(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def normalize_space(space):
    return json.loads(_core.normalize_space(_dump(space)))


def solve(space, constraints):
    return json.loads(_core.solve(_dump(space), _dump(constraints)))


def compile(space, constraints):  # noqa: A001
    return json.loads(_core.compile(_dump(space), _dump(constraints)))


def run_pipeline(space, requirement, rules):
    return json.loads(_core.run_pipeline(_dump(space), requirement, _dump(rules)))


def generate_chart(csv_text, query, rules):
    """Chart spec dict, or None when no chart satisfies the constraints."""
    spec = _core.generate_chart(csv_text, query, _dump(rules))
    return None if spec is None else json.loads(spec)


def apply_transform(csv_text, spec):
    return json.loads(_core.apply_transform(csv_text, _dump(spec)))


def validate_chart(csv_text, spec):
    return json.loads(_core.validate_chart(csv_text, _dump(spec)))


def chart_spec_schema():
    return json.loads(_core.chart_spec_schema())


def knit_prompt(requirement, rules, template=None):
    return _core.knit_prompt(requirement, _dump(rules), template)


def run_cli(args):
    """(exit_code, stdout, stderr) of the command line run in-process."""
    return _core.run_cli(list(args))
