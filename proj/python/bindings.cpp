/*
 * Copyright 2026 The themis-sim Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "themis/error.hpp"
#include "themis/harness.hpp"
#include "themis/proofs.hpp"

namespace py = pybind11;
using namespace themis;

namespace {

Bytes to_vec(const py::bytes& b) {
  const std::string s = b;
  return Bytes(s.begin(), s.end());
}

template <class T>
py::bytes encoded(const T& v) {
  ByteWriter w;
  w << v;
  const auto& d = w.data();
  return py::bytes(reinterpret_cast<const char*>(d.data()), d.size());
}

py::bytes raw(ByteView v) { return py::bytes(reinterpret_cast<const char*>(v.data()), v.size()); }

Point point_of(const py::bytes& b) { return Point::from_bytes(to_vec(b)); }
Scalar scalar_of(const py::bytes& b) { return Scalar::from_bytes(to_vec(b)); }

Ciphertext ct_of(const py::bytes& b) {
  const auto v = to_vec(b);
  ByteReader r(v);
  auto ct = read_ciphertext(r);
  r.expect_done();
  return ct;
}

Rng rng_of(const py::bytes& seed) {
  const auto v = to_vec(seed);
  require(!v.empty(), ErrorCode::kInvalidArgument, "seed must not be empty");
  return Rng(ByteView(v));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core: group crypto, proofs, scenario runs and audit replay.";

  // created once, owned by the module for the life of the process
  static PyObject* error =
      PyErr_NewException("themis._core.ThemisError", PyExc_RuntimeError, nullptr);
  m.attr("ThemisError") = py::reinterpret_borrow<py::object>(error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // args = (code name, message)
      PyErr_SetObject(error,
                      py::make_tuple(std::string(error_name(e.code())), e.what()).ptr());
    }
  });

  m.attr("REWARD_BOUND") = kRewardBound;
  m.attr("ANALYTICS_BOUND") = kAnalyticsBound;

  m.def(
      "keygen",
      [](const py::bytes& seed) {
        const auto kp = keygen(ByteView(to_vec(seed)));
        return py::make_tuple(raw(kp.sk.bytes()), raw(kp.pk.bytes()));
      },
      py::arg("seed"), "Deterministic (sk, pk) from a non-empty seed.");
  m.def(
      "encrypt",
      [](const py::bytes& pk, std::uint64_t msg, const py::bytes& seed, std::uint64_t bound) {
        auto rng = rng_of(seed);
        return encoded(encrypt(point_of(pk), msg, rng, bound));
      },
      py::arg("pk"), py::arg("m"), py::arg("seed"), py::arg("bound") = kAnalyticsBound);
  m.def(
      "add", [](const py::bytes& a, const py::bytes& b) { return encoded(ct_of(a) + ct_of(b)); },
      py::arg("a"), py::arg("b"));
  m.def(
      "scalar_mul",
      [](std::uint64_t k, const py::bytes& ct) { return encoded(scalar_mul_ciphertext(k, ct_of(ct))); },
      py::arg("k"), py::arg("ct"));
  m.def(
      "decrypt",
      [](const py::bytes& sk, const py::bytes& ct, std::uint64_t bound) {
        return recover_plaintext(decrypt(scalar_of(sk), ct_of(ct)), bound);
      },
      py::arg("sk"), py::arg("ct"), py::arg("bound") = kRewardBound,
      "Decrypts and recovers the plaintext in [0, bound).");
  m.def(
      "prove_decryption",
      [](const py::bytes& sk, const py::bytes& ct, std::uint64_t msg, const py::bytes& seed) {
        const auto s = scalar_of(sk);
        const KeyPair kp{s, Point::base_mul(s)};
        auto rng = rng_of(seed);
        return encoded(prove_decryption(kp, ct_of(ct), Point::base_mul(msg), rng));
      },
      py::arg("sk"), py::arg("ct"), py::arg("m"), py::arg("seed"));
  m.def(
      "verify_decryption",
      [](const py::bytes& pk, const py::bytes& ct, std::uint64_t msg, const py::bytes& proof) {
        const auto v = to_vec(proof);
        ByteReader r(v);
        const auto p = read_dleq_proof(r);
        r.expect_done();
        return verify_decryption(point_of(pk), ct_of(ct), Point::base_mul(msg), p);
      },
      py::arg("pk"), py::arg("ct"), py::arg("m"), py::arg("proof"));
  m.def(
      "vrf_eval",
      [](const py::bytes& sk, const py::bytes& seed, std::uint64_t p) {
        const auto out = vrf_eval(scalar_of(sk), to_vec(seed), p);
        return py::make_tuple(out.rand, encoded(out));
      },
      py::arg("sk"), py::arg("seed"), py::arg("p"), "Returns (rand, encoded output).");
  m.def(
      "vrf_verify",
      [](const py::bytes& pk, const py::bytes& seed, const py::bytes& output, std::uint64_t p) {
        const auto v = to_vec(output);
        ByteReader r(v);
        const auto out = read_vrf_output(r);
        r.expect_done();
        return vrf_verify(point_of(pk), to_vec(seed), out, p);
      },
      py::arg("pk"), py::arg("seed"), py::arg("output"), py::arg("p"));
  m.def(
      "dot_product",
      [](const std::vector<std::uint64_t>& p, const std::vector<std::uint64_t>& x) {
        return dot_product(p, x);
      },
      py::arg("policy"), py::arg("interactions"));

  m.def(
      "run_scenario",
      [](const std::string& path, std::optional<std::uint64_t> seed) {
        auto s = load_scenario(path);
        if (seed) s.seed = *seed;
        RunResult run;
        {
          py::gil_scoped_release nogil;
          run = run_scenario(s);
        }
        std::ostringstream blocks;
        write_block_logs(blocks, run);
        return py::make_tuple(run.exit_code(), report_json(run), blocks.str());
      },
      py::arg("path"), py::arg("seed") = py::none(),
      "Runs a scenario file; returns (exit code, report JSON, block log JSONL).");
  m.def(
      "verify_run",
      [](const std::string& report, const std::string& blocks) {
        std::istringstream in(blocks);
        return verify_run(report, in).violations;
      },
      py::arg("report"), py::arg("blocks"), "Violations found by audit replay.");
}
