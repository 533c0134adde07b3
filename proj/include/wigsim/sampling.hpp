#pragma once

// Monte Carlo draws from two-mode Gaussian Wigner densities.  Every draw is
// derived from its own counter block, so batches are bit-identical for a
// given seed no matter how many threads fill them.

#include <atomic>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "wigsim/csv.hpp"
#include "wigsim/gaussian.hpp"
#include "wigsim/rng.hpp"

namespace wigsim {

namespace substream {
inline constexpr std::uint32_t kPairSampling = 0;
inline constexpr std::uint32_t kFieldModes = 1;
}  // namespace substream

// Work is split into fixed-size chunks; reductions combine per-chunk partial
// sums in chunk order, which keeps estimator output independent of the
// thread count.
inline constexpr std::size_t kChunkDraws = 65536;

namespace detail {

template <typename Fn>
void for_each_chunk(std::size_t count, unsigned threads, Fn&& fn) {
  const std::size_t nchunks = (count + kChunkDraws - 1) / kChunkDraws;
  auto run_chunk = [&](std::size_t c) {
    const std::size_t lo = c * kChunkDraws;
    const std::size_t hi = std::min(lo + kChunkDraws, count);
    fn(c, lo, hi);
  };
  if (threads <= 1 || nchunks <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned nworkers = std::min<std::size_t>(threads, nchunks);
  pool.reserve(nworkers);
  for (unsigned t = 0; t < nworkers; ++t)
    pool.emplace_back([&] {
      for (std::size_t c = next.fetch_add(1); c < nchunks;
           c = next.fetch_add(1))
        run_chunk(c);
    });
  for (auto& th : pool) th.join();
}

// One draw of the pair state into `out` (4 doubles scalar, 8 polarized), in
// CSV column order: re_a, im_a, re_b, im_b per polarization component.
// Correlated pairs come from the Cholesky factor of [[1, x], [x, 1]].
inline void draw_two_mode(const TwoModeWigner& state, std::uint64_t seed,
                          std::uint64_t index, double* out) {
  const double sigma = std::sqrt(state.quad_variance());
  const double x = state.correlation;
  const double s = std::sqrt(1.0 - x * x);
  double z[8];
  const std::size_t nz = state.polarized ? 8 : 4;
  rng::fill_normals(seed, substream::kPairSampling, index, {z, nz});
  const int comps = state.polarized ? 2 : 1;
  for (int comp = 0; comp < comps; ++comp) {
    const double* zc = z + 4 * comp;
    const double re_a = sigma * zc[0];
    const double re_b = sigma * (x * zc[0] + s * zc[1]);
    const double im_a = sigma * zc[2];
    const double im_b = sigma * (x * zc[2] + s * zc[3]);
    if (state.polarized) {
      // layout: re_ax, im_ax, re_ay, im_ay, re_bx, im_bx, re_by, im_by
      out[0 + 2 * comp] = re_a;
      out[1 + 2 * comp] = im_a;
      out[4 + 2 * comp] = re_b;
      out[5 + 2 * comp] = im_b;
    } else {
      out[0] = re_a;
      out[1] = im_a;
      out[2] = re_b;
      out[3] = im_b;
    }
  }
}

}  // namespace detail

struct SampleBatch {
  std::uint64_t seed = 0;
  bool polarized = false;
  std::size_t count = 0;
  std::vector<double> data;  // count * stride() doubles, row-major

  std::size_t stride() const { return polarized ? 8 : 4; }
  int mode_count() const { return polarized ? 4 : 2; }

  // mode index: scalar {0: a, 1: b}; polarized {0: ax, 1: ay, 2: bx, 3: by}
  ComplexAmp amplitude(std::size_t draw, int mode) const {
    if (mode < 0 || mode >= mode_count())
      throw std::out_of_range("SampleBatch: mode index out of range");
    const double* row = data.data() + draw * stride() + 2 * mode;
    return ComplexAmp{row[0], row[1]};
  }
};

inline SampleBatch sample_two_mode(const TwoModeWigner& state,
                                   std::size_t count, std::uint64_t seed,
                                   unsigned threads = 1) {
  SampleBatch batch;
  batch.seed = seed;
  batch.polarized = state.polarized;
  batch.count = count;
  batch.data.resize(count * batch.stride());
  const std::size_t stride = batch.stride();
  detail::for_each_chunk(count, threads,
                         [&](std::size_t, std::size_t lo, std::size_t hi) {
                           for (std::size_t i = lo; i < hi; ++i)
                             detail::draw_two_mode(state, seed, i,
                                                   batch.data.data() + i * stride);
                         });
  return batch;
}

// Rows carry the draw index followed by the amplitudes; the scalar layout
// keeps the x-component column names and drops the y columns.
inline void write_csv(const SampleBatch& batch, std::ostream& os) {
  os << (batch.polarized
             ? "draw,re_ax,im_ax,re_ay,im_ay,re_bx,im_bx,re_by,im_by"
             : "draw,re_ax,im_ax,re_bx,im_bx")
     << '\n';
  const std::size_t stride = batch.stride();
  std::string line;
  for (std::size_t i = 0; i < batch.count; ++i) {
    line.clear();
    line += std::to_string(i);
    for (std::size_t j = 0; j < stride; ++j) {
      line += ',';
      line += csv::format_double(batch.data[i * stride + j]);
    }
    line += '\n';
    os << line;
  }
}

}  // namespace wigsim
