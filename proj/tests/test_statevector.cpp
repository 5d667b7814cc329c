#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "qbopt/errors.hpp"
#include "qbopt/rng.hpp"
#include "qbopt/statevector.hpp"
#include "test_oracles.hpp"

using qbopt::Spin;
using qbopt::SplitMix64;
using qbopt::Statevector;

namespace {

Statevector random_state(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::complex<double>> amps(std::size_t{1} << n);
  double norm_sq = 0.0;
  for (auto& a : amps) {
    a = {oracles::standard_normal(rng), oracles::standard_normal(rng)};
    norm_sq += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm_sq);
  return Statevector::from_amplitudes(n, std::move(amps));
}

double max_amp_diff(const Statevector& a, const Statevector& b) {
  double diff = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    diff = std::max(diff, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
  }
  return diff;
}

}  // namespace

TEST_CASE("basis states") {
  const Statevector all_up = Statevector::all_up(2);
  CHECK(all_up.dim() == 4);
  CHECK(all_up.amplitudes()[3] == std::complex<double>{1.0, 0.0});
  CHECK(all_up.norm() == doctest::Approx(1.0).epsilon(1e-15));

  // All-up means every sigma_z expectation is -1 under this sign convention.
  const Statevector three = Statevector::all_up(3);
  for (int q = 1; q <= 3; ++q) {
    CHECK(three.sigma_z_expectation(q) == doctest::Approx(-1.0).epsilon(1e-15));
  }

  const Statevector down_up = Statevector::basis_state(2, {Spin::Down, Spin::Up});
  CHECK(down_up.amplitudes()[2] == std::complex<double>{1.0, 0.0});

  CHECK_THROWS_AS(Statevector::basis_state(0, {}), qbopt::ConfigError);
  CHECK_THROWS_AS(Statevector::all_up(13), qbopt::ConfigError);
  CHECK_THROWS_AS(Statevector::basis_state(2, {Spin::Up}), qbopt::ArgumentError);
}

TEST_CASE("ry gate") {
  SUBCASE("zero angle is the identity") {
    Statevector state = random_state(3, 11);
    const Statevector before = state;
    state.apply_ry(2, 0.0);
    CHECK(max_amp_diff(state, before) < 1e-15);
  }

  SUBCASE("pi rotation is minus the identity") {
    Statevector state = random_state(3, 12);
    const Statevector before = state;
    state.apply_ry(1, std::numbers::pi);
    double diff = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
      diff = std::max(diff, std::abs(state.amplitudes()[i] + before.amplitudes()[i]));
    }
    CHECK(diff < 1e-12);
  }

  SUBCASE("quarter-pi tilts an up spin onto the equator") {
    Statevector state = Statevector::all_up(1);
    state.apply_ry(1, std::numbers::pi / 4.0);
    CHECK(state.sigma_z_expectation(1) == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("down spin rotates to cos|down> + sin|up>") {
    Statevector state = Statevector::basis_state(1, {Spin::Down});
    state.apply_ry(1, 0.3);
    CHECK(state.amplitudes()[0].real() == doctest::Approx(std::cos(0.3)).epsilon(1e-15));
    CHECK(state.amplitudes()[1].real() == doctest::Approx(std::sin(0.3)).epsilon(1e-15));
  }

  SUBCASE("rotations on different qubits commute") {
    Statevector ab = random_state(4, 13);
    Statevector ba = ab;
    ab.apply_ry(1, 0.7);
    ab.apply_ry(3, -1.2);
    ba.apply_ry(3, -1.2);
    ba.apply_ry(1, 0.7);
    CHECK(max_amp_diff(ab, ba) < 1e-12);
  }

  CHECK_THROWS_AS(Statevector::all_up(2).apply_ry(0, 0.1), qbopt::ArgumentError);
  CHECK_THROWS_AS(Statevector::all_up(2).apply_ry(3, 0.1), qbopt::ArgumentError);
}

TEST_CASE("cnot gate") {
  // Control is active on |down>: |up,up> untouched, |down,up> -> |down,down>.
  Statevector up_up = Statevector::all_up(2);
  up_up.apply_cnot(1, 2);
  CHECK(up_up.amplitudes()[3] == std::complex<double>{1.0, 0.0});

  Statevector down_up = Statevector::basis_state(2, {Spin::Down, Spin::Up});
  down_up.apply_cnot(1, 2);
  CHECK(down_up.amplitudes()[0] == std::complex<double>{1.0, 0.0});

  SUBCASE("involution is exact") {
    Statevector state = random_state(4, 21);
    const Statevector before = state;
    state.apply_cnot(2, 4);
    state.apply_cnot(2, 4);
    CHECK(max_amp_diff(state, before) == 0.0);
  }

  CHECK_THROWS_AS(Statevector::all_up(2).apply_cnot(1, 1), qbopt::ArgumentError);
  CHECK_THROWS_AS(Statevector::all_up(2).apply_cnot(1, 3), qbopt::ArgumentError);
}

TEST_CASE("norm is preserved by random gate sequences") {
  for (const int n : {3, 6}) {
    Statevector state = Statevector::all_up(n);
    SplitMix64 rng(100 + static_cast<std::uint64_t>(n));
    for (int g = 0; g < 100; ++g) {
      if (rng.next() % 2 == 0) {
        state.apply_ry(1 + static_cast<int>(rng.next() % n), rng.uniform(0.0, 2 * std::numbers::pi));
      } else {
        const int control = 1 + static_cast<int>(rng.next() % n);
        int target = 1 + static_cast<int>(rng.next() % n);
        if (target == control) target = (target % n) + 1;
        state.apply_cnot(control, target);
      }
    }
    CHECK(std::abs(1.0 - state.norm() * state.norm()) < 1e-10);
  }
}

TEST_CASE("expectation values") {
  qbopt::SpinModel xx;
  xx.n = 2;
  const Eigen::MatrixXd hamiltonian = qbopt::build_hamiltonian(xx);

  SUBCASE("all-up state of the two-qubit model has energy 1") {
    CHECK(qbopt::expectation(Statevector::all_up(2), hamiltonian) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("eigenvectors return their eigenvalues") {
    const qbopt::Spectrum spectrum = qbopt::compute_spectrum(hamiltonian);
    for (int i = 0; i < 4; ++i) {
      std::vector<std::complex<double>> amps(4);
      for (int r = 0; r < 4; ++r) amps[static_cast<std::size_t>(r)] = spectrum.eigenvectors(r, i);
      const Statevector eigvec = Statevector::from_amplitudes(2, std::move(amps));
      CHECK(qbopt::expectation(eigvec, hamiltonian) ==
            doctest::Approx(spectrum.eigenvalues[i]).epsilon(1e-12));
    }
  }

  SUBCASE("equal superposition of two eigenvectors averages their energies") {
    const qbopt::Spectrum spectrum = qbopt::compute_spectrum(hamiltonian);
    std::vector<std::complex<double>> amps(4);
    for (int r = 0; r < 4; ++r) {
      amps[static_cast<std::size_t>(r)] =
          (spectrum.eigenvectors(r, 0) + spectrum.eigenvectors(r, 3)) / std::numbers::sqrt2;
    }
    const Statevector mix = Statevector::from_amplitudes(2, std::move(amps));
    const double expected = 0.5 * (spectrum.eigenvalues[0] + spectrum.eigenvalues[3]);
    CHECK(qbopt::expectation(mix, hamiltonian) == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(qbopt::expectation(Statevector::all_up(3), hamiltonian),
                    qbopt::ArgumentError);
  }
}
