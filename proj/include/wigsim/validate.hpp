#pragma once

// Built-in validation battery: every closed form is checked against an
// independent route (oracle densities, Monte Carlo, frozen reference
// numbers).  Reported as CSV rows `check_name,expected,actual,tolerance,pass`
// with deterministic content for fixed build + seeds.

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "wigsim/csv.hpp"
#include "wigsim/detection.hpp"
#include "wigsim/fock.hpp"
#include "wigsim/gaussian.hpp"
#include "wigsim/rng.hpp"
#include "wigsim/sampling.hpp"

namespace wigsim {

struct CheckRow {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

namespace detail {

inline void add_check(std::vector<CheckRow>& rows, std::string name,
                      double expected, double actual, double tolerance) {
  const bool ok = std::abs(expected - actual) <= tolerance;
  rows.push_back({std::move(name), expected, actual, tolerance, ok});
}

inline double oracle_grid_deviation(const fock::DensityMatrix& rho,
                                    const SingleModeGaussian& gauss) {
  const fock::WignerTransform wt(rho);
  double worst = 0.0;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      const ComplexAmp al{-2.0 + 0.5 * i, -2.0 + 0.5 * j};
      worst = std::max(worst, std::abs(wt.evaluate(al) - gauss.evaluate(al)));
    }
  return worst;
}

}  // namespace detail

inline std::vector<CheckRow> run_validation() {
  using detail::add_check;
  std::vector<CheckRow> rows;

  // frozen generator vectors keep the sampling layer honest
  {
    const auto kat = rng::Philox4x32::block(
        {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
        {0xa4093822u, 0x299f31d0u});
    add_check(rows, "philox_kat_word0", double(0xd16cfe09u), double(kat[0]), 0.0);
    add_check(rows, "philox_kat_word3", double(0x24126ea1u), double(kat[3]), 0.0);
  }

  add_check(rows, "vacuum_wigner_peak", 2.0 / std::numbers::pi,
            vacuum_state().evaluate({0, 0}), 1e-14);
  add_check(rows, "chaotic_variance_exact", 0.75, chaotic_state(1.0).var_re, 0.0);
  add_check(rows, "mean_rate_chaotic_exact", 1.0, mean_rate(chaotic_state(1.0)), 0.0);
  add_check(rows, "signal_moments_n", 2.0 / 3.0, two_mode_signal(2.0, 1.0).mean_photons,
            1e-12);
  add_check(rows, "signal_moments_x", 2.0 / 7.0, two_mode_signal(2.0, 1.0).correlation,
            1e-12);

  add_check(rows, "coincidence_rate_example", 2.44,
            coincidence_closed(1.0, 0.8, 0.0).r12, 1e-12);
  add_check(rows, "visibility_example", 0.4186046511627907,
            coincidence_closed(1.0, 0.8, 0.0).visibility.value(), 1e-12);
  add_check(rows, "boundary_visibility_third", 1.0 / 3.0,
            coincidence_closed(1.0, classical_bound(1.0), 0.2).visibility.value(),
            1e-12);
  add_check(rows, "critical_n_bell_limit", 0.41758248528076567,
            critical_n(1.0 / std::numbers::sqrt2), 5e-3);

  // gaussian side of the purity adjudication
  add_check(rows, "chaotic1_coeff_product", 4.0 / 9.0,
            chaotic_state(1.0).re_coeff() * chaotic_state(1.0).im_coeff(), 1e-12);

  // oracle chain: Fock-space Wigner transforms against the closed forms
  {
    const auto vac = fock::density_from_pure(fock::build_state(fock::FockSpec{0}, 8));
    add_check(rows, "oracle_vacuum_wigner", 0.5317495318540655,
              fock::wigner_from_density(vac, {0.3, 0.0}), 1e-6);

    const auto one = fock::density_from_pure(fock::build_state(fock::FockSpec{1}, 16));
    add_check(rows, "oracle_one_origin", -2.0 / std::numbers::pi,
              fock::wigner_from_density(one, {0.0, 0.0}), 1e-6);

    const auto half = fock::density_from_mixture(
        {{fock::build_state(fock::FockSpec{1}, 16), 0.5},
         {fock::build_state(fock::FockSpec{0}, 16), 0.5}});
    const ComplexAmp al{0.5, 0.0};
    add_check(rows, "oracle_mixture_wigner",
              2.0 * std::norm(al) * vacuum_state().evaluate(al),
              fock::wigner_from_density(half, al), 1e-6);

    add_check(rows, "oracle_coherent_grid_dev", 0.0,
              detail::oracle_grid_deviation(
                  fock::density_from_pure(
                      fock::build_state(fock::CoherentSpec{{0.5, 0.0}}, 20)),
                  coherent_state({0.5, 0.0})),
              1e-5);
    add_check(rows, "oracle_squeezed_grid_dev", 0.0,
              detail::oracle_grid_deviation(
                  fock::density_from_pure(
                      fock::build_state(fock::SqueezedSpec{{0.0, 0.0}, 0.3}, 40)),
                  squeezed_state({0.0, 0.0}, 0.3)),
              1e-5);

    const auto th = fock::density_from_p(PGaussianSingle{ChaoticP{1.0}}, 30);
    add_check(rows, "oracle_chaotic_purity", 1.0 / 3.0,
              fock::operator_moments(th).purity, 1e-3);
    add_check(rows, "oracle_chaotic_grid_dev", 0.0,
              detail::oracle_grid_deviation(
                  fock::density_from_p(PGaussianSingle{ChaoticP{0.5}}, 30),
                  chaotic_state(0.5)),
              1e-5);
  }

  // seeded Monte Carlo against the closed forms
  {
    const TwoModeWigner pair(0.7, 0.4);
    const auto batch = sample_two_mode(pair, 100000, 424242);
    const auto est = mc_rate(batch, 0);
    add_check(rows, "mc_rate_chaotic", 0.7, est.mean, 3.0 * est.std_error);

    const TwoModeWigner bell(0.3, 0.8, true);
    const double dphi = std::numbers::pi / 8.0;
    const auto cc = coincidence_mc(bell, {dphi}, {0.0}, 100000, 7);
    add_check(rows, "mc_coincidence", coincidence_closed(0.3, 0.8, dphi).r12,
              cc.mean, 3.0 * cc.std_error);

    const auto again = sample_two_mode(pair, 100000, 424242);
    double dev = 0.0;
    for (std::size_t i = 0; i < batch.data.size(); ++i)
      dev = std::max(dev, std::abs(batch.data[i] - again.data[i]));
    add_check(rows, "sampling_determinism", 0.0, dev, 0.0);
  }

  return rows;
}

inline bool all_passed(const std::vector<CheckRow>& rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

inline void write_csv(const std::vector<CheckRow>& rows, std::ostream& os) {
  os << "check_name,expected,actual,tolerance,pass\n";
  for (const auto& r : rows)
    os << r.name << ',' << csv::format_double(r.expected) << ','
       << csv::format_double(r.actual) << ',' << csv::format_double(r.tolerance)
       << ',' << (r.pass ? 1 : 0) << '\n';
}

}  // namespace wigsim
