// Copyright 2026 The depp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "depp/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <variant>

#include "depp/protocols.hpp"
#include "depp/results.hpp"
#include "depp/scenario.hpp"

namespace depp {

double StateSampler::uniform() {
  auto [next, word] = rng_next(state_);
  state_ = next;
  return to_unit_interval(word);
}

double StateSampler::normal() {
  // Box-Muller; 1 - u keeps the logarithm finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

DensityMatrix StateSampler::general(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(normal(), normal());
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

BellDiagonalParams StateSampler::bell_params() {
  // Uniform on the simplex via sorted spacings.
  std::array<double, 3> cuts{uniform(), uniform(), uniform()};
  std::sort(cuts.begin(), cuts.end());
  const double f = cuts[0];
  const double f1 = cuts[1] - cuts[0];
  const double f2 = cuts[2] - cuts[1];
  return BellDiagonalParams(f, f1, f2, 1.0 - f - f1 - f2);
}

DensityMatrix StateSampler::bell_diagonal() { return make_bell_diagonal(bell_params()); }

DensityMatrix StateSampler::product_diagonal() {
  const BellDiagonalParams w = bell_params();
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = w.phi_plus();
  m(1, 1) = w.phi_minus();
  m(2, 2) = w.psi_plus();
  m(3, 3) = w.psi_minus();
  return DensityMatrix(std::move(m));
}

OpticalNetwork perturbed_fig1_network() {
  // Side-map basis [(H,a1),(V,a1),(H,a2),(V,a2)] -> [(H,c),(V,c),(H,e),(V,e)].
  Matrix alice = Matrix::Zero(4, 4);
  alice(0, 0) = 1.0;  // (H,a1) -> (H,c)
  alice(3, 1) = 1.0;  // (V,a1) -> (V,e)
  alice(2, 2) = 1.0;  // (H,a2) -> (H,e), no wave plate
  alice(1, 3) = 1.0;  // (V,a2) -> (V,c)
  return OpticalNetwork(std::move(alice), fig1_side_map(Side::Bob));
}

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string fmt(double x) { return format_real(x); }

DensityMatrix phi_s() { return DensityMatrix::from_pure(make_spatial_state(SourceConfig(1.0, 0.0))); }

DensityMatrix product_state(int index) {
  return DensityMatrix::from_pure(StateVector::basis(4, static_cast<std::size_t>(index)));
}

using CheckFn = std::function<Check()>;

}  // namespace

std::vector<InvariantResult> run_invariant_suite(const OpticalNetwork& net) {
  std::vector<std::pair<std::string, CheckFn>> checks;

  checks.emplace_back("qcore.bell_basis_orthonormal", [] {
    Check c;
    const BellState kinds[4] = {BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus,
                                BellState::PsiMinus};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const Complex g = bell_state(kinds[i]).amplitudes().dot(bell_state(kinds[j]).amplitudes());
        c.require(std::abs(g - (i == j ? 1.0 : 0.0)) <= kIdentityTol, "Gram matrix is not identity");
      }
    }
    return c;
  });

  checks.emplace_back("qcore.tensor_trace_multiplicative", [] {
    Check c;
    StateSampler s(11);
    for (int k = 0; k < 10; ++k) {
      const DensityMatrix a = s.general(2);
      const DensityMatrix b = s.general(4);
      const DensityMatrix ab = tensor_product(a, b);
      c.require(std::abs(ab.matrix().trace() - 1.0) <= kIdentityTol, "trace(A x B) != 1");
      const DensityMatrix abc = tensor_product(ab, a);
      const DensityMatrix a_bc = tensor_product(a, tensor_product(b, a));
      c.require(max_abs_diff(abc.matrix(), a_bc.matrix()) <= kIdentityTol,
                "tensor product is not associative");
    }
    return c;
  });

  checks.emplace_back("qcore.partial_trace_of_product", [] {
    Check c;
    StateSampler s(12);
    const std::array<std::size_t, 2> dims{4, 4};
    for (int k = 0; k < 10; ++k) {
      const DensityMatrix a = s.general(4);
      const DensityMatrix b = s.general(4);
      const std::array<std::size_t, 1> keep_a{0};
      const std::array<std::size_t, 1> keep_b{1};
      const DensityMatrix ab = tensor_product(a, b);
      c.require(max_abs_diff(partial_trace(ab, dims, keep_a).matrix(), a.matrix()) <= kIdentityTol,
                "Tr_B(A x B) != A");
      c.require(max_abs_diff(partial_trace(ab, dims, keep_b).matrix(), b.matrix()) <= kIdentityTol,
                "Tr_A(A x B) != B");
    }
    return c;
  });

  checks.emplace_back("qcore.channels_trace_preserving", [] {
    Check c;
    StateSampler s(13);
    for (int k = 0; k < 20; ++k) {
      const double px = 0.3 * s.uniform();
      const double py = 0.3 * s.uniform();
      const double pz = 0.3 * s.uniform();
      const KrausChannel pol = pauli_channel(px, py, pz, k % 2 ? Photon::A : Photon::B);
      const KrausChannel spa = spatial_dephasing(s.uniform());
      const DensityMatrix rho = s.general(4);
      c.require(std::abs(apply_channel(rho, pol).matrix().trace() - 1.0) <= kValidityTol,
                "pauli channel changed the trace");
      c.require(std::abs(apply_channel(rho, spa).matrix().trace() - 1.0) <= kValidityTol,
                "spatial dephasing changed the trace");
      const DensityMatrix joint = s.general(16);
      c.require(std::abs(apply_channel(joint, lift_polarization_channel(pol)).matrix().trace() -
                         1.0) <= kValidityTol,
                "lifted channel changed the trace");
    }
    return c;
  });

  checks.emplace_back("optics.side_maps_unitary", [&net] {
    Check c;
    c.require(is_unitary(net.alice_map()), "Alice map is not unitary");
    c.require(is_unitary(net.bob_map()), "Bob map is not unitary");
    c.require(is_unitary(two_photon_unitary(net)), "joint map is not unitary");
    return c;
  });

  checks.emplace_back("optics.joint_map_permutation_closure", [&net] {
    Check c;
    const Matrix u = two_photon_unitary(net);
    c.require(is_permutation(net.alice_map()) && is_permutation(net.bob_map()),
              "side maps are not permutations");
    c.require(is_permutation(u), "joint map is not a permutation");
    c.require(is_permutation(u * u), "joint map squared is not a permutation");
    return c;
  });

  checks.emplace_back("optics.pattern_completeness", [&net] {
    Check c;
    StateSampler s(14);
    const Matrix u = two_photon_unitary(net);
    for (int k = 0; k < 20; ++k) {
      const DensityMatrix out = apply_unitary(embed(s.general(4), phi_s()), u);
      double total = 0.0;
      for (const auto& pat : all_patterns()) total += project_pattern(out, pat).probability;
      c.require(std::abs(total - 1.0) <= kIdentityTol,
                "pattern probabilities sum to " + fmt(total));
    }
    return c;
  });

  checks.emplace_back("optics.branch_orthogonality", [&net] {
    Check c;
    const Matrix u = two_photon_unitary(net);
    // HH, HV, VH, VV -> (c,d), (c,f), (e,d), (e,f).
    const char* names[4] = {"HH", "HV", "VH", "VV"};
    for (int in = 0; in < 4; ++in) {
      const DensityMatrix out = apply_unitary(embed(product_state(in), phi_s()), u);
      for (std::size_t k = 0; k < 4; ++k) {
        const double p = project_pattern(out, all_patterns()[k]).probability;
        const double expected = static_cast<int>(k) == in ? 1.0 : 0.0;
        c.require(std::abs(p - expected) <= kIdentityTol,
                  std::string("input ") + names[in] + " gives probability " + fmt(p) +
                      " on pattern " + std::to_string(k));
      }
    }
    return c;
  });

  checks.emplace_back("optics.phase_flip_invisibility", [&net] {
    Check c;
    const auto run = [&](BellState b) {
      return one_step_depp(DensityMatrix::from_pure(bell_state(b)), phi_s(), net);
    };
    c.require(run_result_distance(run(BellState::PhiPlus), run(BellState::PhiMinus)) <= kIdentityTol,
              "phi+ and phi- runs differ");
    c.require(run_result_distance(run(BellState::PsiPlus), run(BellState::PsiMinus)) <= kIdentityTol,
              "psi+ and psi- runs differ");
    return c;
  });

  checks.emplace_back("noise.pauli_bell_weight_mapping", [] {
    Check c;
    const DensityMatrix phi = DensityMatrix::from_pure(bell_state(BellState::PhiPlus));
    for (int i = 0; i <= 4; ++i) {
      for (int j = 0; j <= 4 - i; ++j) {
        for (int k = 0; k <= 4 - i - j; ++k) {
          const double px = 0.25 * i * 0.8;
          const double py = 0.25 * j * 0.8;
          const double pz = 0.25 * k * 0.8;
          for (Photon t : {Photon::A, Photon::B}) {
            const DensityMatrix got = apply_channel(phi, pauli_channel(px, py, pz, t));
            const DensityMatrix want =
                make_bell_diagonal(BellDiagonalParams(1.0 - px - py - pz, pz, px, py));
            c.require(max_abs_diff(got.matrix(), want.matrix()) <= kIdentityTol,
                      "pauli(" + fmt(px) + "," + fmt(py) + "," + fmt(pz) + ") mismatch");
          }
        }
      }
    }
    return c;
  });

  checks.emplace_back("noise.product_dephase_idempotent", [] {
    Check c;
    StateSampler s(15);
    for (int k = 0; k < 20; ++k) {
      const DensityMatrix rho = s.general(4);
      const ProductDephasing once = product_dephase(rho);
      const ProductDephasing twice = product_dephase(once.dephased);
      c.require(max_abs_diff(once.dephased.matrix(), twice.dephased.matrix()) <= kIdentityTol,
                "dephasing is not idempotent");
      const ProductDiagonalParams& p = once.params;
      c.require(std::abs(p.hh + p.vv + p.hv + p.vh - 1.0) <= kIdentityTol,
                "product weights do not sum to 1");
      c.require(max_abs_diff(once.dephased.matrix().diagonal(), rho.matrix().diagonal()) <=
                    kIdentityTol,
                "diagonal not preserved");
    }
    return c;
  });

  checks.emplace_back("noise.bell_diagonal_affine", [] {
    Check c;
    StateSampler s(16);
    for (int k = 0; k < 20; ++k) {
      const BellDiagonalParams a = s.bell_params();
      const BellDiagonalParams b = s.bell_params();
      const double t = s.uniform();
      const BellDiagonalParams mix(t * a.phi_plus() + (1 - t) * b.phi_plus(),
                                   t * a.phi_minus() + (1 - t) * b.phi_minus(),
                                   t * a.psi_plus() + (1 - t) * b.psi_plus(),
                                   t * a.psi_minus() + (1 - t) * b.psi_minus());
      const Matrix lhs = make_bell_diagonal(mix).matrix();
      const Matrix rhs =
          t * make_bell_diagonal(a).matrix() + (1 - t) * make_bell_diagonal(b).matrix();
      c.require(max_abs_diff(lhs, rhs) <= kIdentityTol, "construction is not affine");
      c.require(std::abs(lhs.trace() - 1.0) <= kIdentityTol, "trace is not 1");
    }
    return c;
  });

  checks.emplace_back("protocols.deterministic_success", [&net] {
    Check c;
    StateSampler s(17);
    for (int k = 0; k < 60; ++k) {
      const DensityMatrix rho = k < 20 ? s.bell_diagonal() : k < 40 ? s.product_diagonal() : s.general(4);
      const RunResult r = one_step_depp(rho, phi_s(), net);
      c.require(std::abs(r.acceptance_probability - 1.0) <= kIdentityTol,
                "acceptance " + fmt(r.acceptance_probability));
      for (const auto& rec : r.patterns) {
        if (rec.corrected_fidelity) {
          c.require(std::abs(*rec.corrected_fidelity - 1.0) <= kIdentityTol,
                    "corrected fidelity " + fmt(*rec.corrected_fidelity));
        }
      }
    }
    return c;
  });

  checks.emplace_back("protocols.pattern_statistics", [&net] {
    Check c;
    StateSampler s(18);
    for (int k = 0; k < 20; ++k) {
      const BellDiagonalParams p = s.bell_params();
      const RunResult r = one_step_depp(make_bell_diagonal(p), phi_s(), net);
      const double phi = 0.5 * (p.phi_plus() + p.phi_minus());
      const double psi = 0.5 * (p.psi_plus() + p.psi_minus());
      const double want[4] = {phi, psi, psi, phi};
      for (int i = 0; i < 4; ++i) {
        c.require(std::abs(r.patterns[static_cast<std::size_t>(i)].probability - want[i]) <=
                      kIdentityTol,
                  "pattern " + std::to_string(i) + " probability mismatch");
      }
    }
    return c;
  });

  checks.emplace_back("protocols.decomposition_equivalence", [&net] {
    Check c;
    StateSampler s(19);
    for (int k = 0; k < 20; ++k) {
      const DensityMatrix rho = s.general(4);
      const RunResult direct = one_step_depp(rho, phi_s(), net);
      const ProductDiagonalParams w = product_dephase(rho).params;
      const double weights[4] = {w.hh, w.hv, w.vh, w.vv};
      for (std::size_t pat = 0; pat < 4; ++pat) {
        double prob = 0.0;
        Matrix state = Matrix::Zero(4, 4);
        for (int b = 0; b < 4; ++b) {
          const RunResult branch = one_step_depp(product_state(b), phi_s(), net);
          const PatternRecord& rec = branch.patterns[pat];
          prob += weights[b] * rec.probability;
          if (rec.corrected_state) state += weights[b] * rec.probability * rec.corrected_state->matrix();
        }
        c.require(std::abs(prob - direct.patterns[pat].probability) <= kIdentityTol,
                  "pattern probability differs from the product-basis mixture");
        if (direct.patterns[pat].corrected_state && prob > kAbsentProbability) {
          c.require(max_abs_diff(state / prob, direct.patterns[pat].corrected_state->matrix()) <=
                        kIdentityTol,
                    "corrected state differs from the product-basis mixture");
        }
      }
    }
    return c;
  });

  checks.emplace_back("protocols.recurrence_matches_oracle", [] {
    Check c;
    for (int i = 0; i <= 10; ++i) {
      const double f = 0.1 * i;
      const BennettStep exact = bennett_step_exact(f);
      c.require(std::abs(exact.fidelity - bennett_recurrence(f)) <= kIdentityTol,
                "fidelity mismatch at F=" + fmt(f));
      c.require(std::abs(exact.success_probability - bennett_success_probability(f)) <= kIdentityTol,
                "success probability mismatch at F=" + fmt(f));
    }
    return c;
  });

  checks.emplace_back("protocols.recurrence_fixed_points_and_growth", [] {
    Check c;
    for (double f : {0.25, 0.5, 1.0}) {
      c.require(std::abs(bennett_recurrence(f) - f) <= kIdentityTol, "F=" + fmt(f) + " is not fixed");
    }
    for (int i = 1; i <= 50; ++i) {
      const double f = 0.5 + 0.5 * i / 51.0;
      c.require(bennett_recurrence(f) > f, "no growth at F=" + fmt(f));
    }
    return c;
  });

  checks.emplace_back("protocols.source_imperfection_closed_form", [&net] {
    Check c;
    const DensityMatrix hh = product_state(0);
    for (double r : {0.0, 0.5, 1.0, 2.0}) {
      for (double theta : {0.0, std::numbers::pi / 2, std::numbers::pi}) {
        const DensityMatrix spatial =
            DensityMatrix::from_pure(make_spatial_state(SourceConfig(r, theta)));
        const RunResult run = one_step_depp(hh, spatial, net);
        const double want = std::norm(1.0 + std::polar(r, theta)) / (2.0 * (1.0 + r * r));
        const auto& fid = run.patterns[0].corrected_fidelity;
        c.require(fid.has_value() && std::abs(*fid - want) <= kIdentityTol,
                  "r=" + fmt(r) + " theta=" + fmt(theta) + " off the closed form");
      }
    }
    return c;
  });

  checks.emplace_back("montecarlo.bit_exact_reproducibility", [] {
    Check c;
    const std::array<double, 4> p{0.4, 0.3, 0.2, 0.1};
    c.require(sample_distribution(p, 5000, 42) == sample_distribution(p, 5000, 42),
              "same seed produced different reports");
    auto [s1, w1] = rng_next(RngState(1));
    c.require(w1 == 5180492295206395165ULL && s1.value() == 33554433ULL,
              "xorshift64* first output for seed 1 differs from the reference value");
    return c;
  });

  checks.emplace_back("montecarlo.wilson_coverage", [] {
    Check c;
    const std::array<double, 4> p{0.4, 0.3, 0.2, 0.1};
    std::array<int, 4> covered{};
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const SampleReport rep = sample_distribution(p, 10000, seed);
      for (std::size_t k = 0; k < 4; ++k) {
        const WilsonInterval w = wilson_interval(rep.counts[k], rep.shots);
        if (w.lower <= p[k] && p[k] <= w.upper) ++covered[k];
      }
    }
    for (std::size_t k = 0; k < 4; ++k) {
      c.require(covered[k] >= 44, "pattern " + std::to_string(k) + " covered in only " +
                                      std::to_string(covered[k]) + "/50 seeds");
    }
    return c;
  });

  checks.emplace_back("montecarlo.shard_merge_deterministic", [] {
    Check c;
    const RunResult rr = one_step_depp(make_bell_diagonal(BellDiagonalParams(0.25, 0.25, 0.25, 0.25)),
                                       phi_s());
    const SampleReport a = sample_patterns_sharded(rr, 20001, 9, 4);
    const SampleReport b = sample_patterns_sharded(rr, 20001, 9, 4);
    c.require(a == b, "sharded sampling is not deterministic");
    std::uint64_t total = 0;
    for (auto n : a.counts) total += n;
    c.require(total == 20001, "sharded counts do not add up to the shot count");
    return c;
  });

  checks.emplace_back("scenario.canonical_round_trip", [] {
    Check c;
    const char* text =
        "[source]\nr = 0.5\ntheta = 7\n[noise.polarization]\nmodel = bell_diagonal\n"
        "F = 0.7\nF1 = 0.1\nF2 = 0.15\nF3 = 0.05\n[protocol]\nname = compare\n"
        "target_fidelity = 0.99\n[run]\nshots = 10\nseed = 3\noutput = \"out.json\"\n";
    const auto first = parse_scenario(text);
    if (const auto* e = std::get_if<ParseError>(&first)) {
      c.require(false, e->to_string());
      return c;
    }
    const std::string once = format_scenario(std::get<ScenarioConfig>(first));
    const auto second = parse_scenario(once);
    c.require(std::holds_alternative<ScenarioConfig>(second), "canonical text does not re-parse");
    if (c.ok) {
      c.require(std::get<ScenarioConfig>(second) == std::get<ScenarioConfig>(first),
                "re-parsed config differs");
      c.require(format_scenario(std::get<ScenarioConfig>(second)) == once,
                "canonical text is not a fixed point");
    }
    return c;
  });

  std::vector<InvariantResult> results;
  results.reserve(checks.size());
  for (auto& [name, fn] : checks) {
    InvariantResult r{name, false, {}};
    try {
      const Check c = fn();
      r.passed = c.ok;
      r.detail = c.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace depp
