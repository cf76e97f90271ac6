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

import os
import pathlib

import pytest

import themis

SCENARIOS = pathlib.Path(
    os.environ.get("THEMIS_SCENARIO_DIR", pathlib.Path(__file__).parents[2] / "scenarios"))


def test_homomorphic_sum_and_scalar():
    sk, pk = themis.keygen(b"smoke")
    a = themis.encrypt(pk, 4, b"r1")
    b = themis.encrypt(pk, 20, b"r2")
    assert themis.decrypt(sk, themis.add(a, b)) == 24
    assert themis.decrypt(sk, themis.scalar_mul(3, a)) == 12


def test_decryption_proof():
    sk, pk = themis.keygen(b"proof")
    ct = themis.encrypt(pk, 36, b"r")
    proof = themis.prove_decryption(sk, ct, 36, b"w")
    assert themis.verify_decryption(pk, ct, 36, proof)
    assert not themis.verify_decryption(pk, ct, 35, proof)
    with pytest.raises(themis.ThemisError) as info:
        themis.prove_decryption(sk, ct, 35, b"w")
    assert info.value.args[0] == "MismatchedPlain"


def test_vrf():
    sk, pk = themis.keygen(b"vrf")
    rand, out = themis.vrf_eval(sk, b"epsilon", 1 << 32)
    assert 0 <= rand < 1 << 32
    assert themis.vrf_verify(pk, b"epsilon", out, 1 << 32)
    assert not themis.vrf_verify(pk, b"other", out, 1 << 32)


def test_bad_encoding_raises():
    with pytest.raises(themis.ThemisError) as info:
        themis.add(b"\x00" * 3, b"\x00" * 64)
    assert info.value.args[0] == "InvalidEncoding"


def test_strawman_run_and_audit():
    out = themis.run(SCENARIOS / "strawman.toml")
    assert out.clean
    user = out.report["chains"][0]["users"][0]
    assert user["paid"] == 36 == themis.dot_product([4, 20, 12], [3, 0, 2])
    assert themis.verify_run(out.report_text, out.blocks) == []
    again = themis.run(SCENARIOS / "strawman.toml")
    assert again.report_text == out.report_text


def test_config_error():
    with pytest.raises(themis.ThemisError) as info:
        themis.run(SCENARIOS / "missing.toml")
    assert info.value.args[0] == "ConfigError"
