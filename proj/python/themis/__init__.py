# Copyright 2026 The themis-sim Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the themis simulator core."""

import json

from ._core import (
    ANALYTICS_BOUND,
    REWARD_BOUND,
    ThemisError,
    add,
    decrypt,
    dot_product,
    encrypt,
    keygen,
    prove_decryption,
    scalar_mul,
    verify_decryption,
    vrf_eval,
    vrf_verify,
)
from ._core import run_scenario as _run_scenario
from ._core import verify_run as _verify_run

__all__ = [
    "ANALYTICS_BOUND", "REWARD_BOUND", "ThemisError", "RunOutput", "add", "decrypt",
    "dot_product", "encrypt", "keygen", "prove_decryption", "run", "scalar_mul",
    "verify_decryption", "verify_run", "vrf_eval", "vrf_verify",
]


class RunOutput:
    """Result of a scenario run: exit code, parsed report, raw texts."""

    def __init__(self, code, report_text, blocks):
        self.exit_code = code
        self.report_text = report_text
        self.blocks = blocks
        self.report = json.loads(report_text)

    @property
    def clean(self):
        return self.exit_code == 0


def run(path, seed=None):
    return RunOutput(*_run_scenario(str(path), seed))


def verify_run(report_text, blocks):
    return _verify_run(report_text, blocks)
