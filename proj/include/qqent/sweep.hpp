#pragma once

// Parameter sweeps behind the qqent CLI. Every command writes a CSV table
// (header first, '\n' line endings, numbers in C-locale shortest-general
// form at the configured significant digits).

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qqent/error.hpp"
#include "qqent/haar.hpp"
#include "qqent/measures.hpp"
#include "qqent/model.hpp"
#include "qqent/random.hpp"

namespace qqent::sweep {

enum class Command { spectrum, ground, avg_concurrence, energy_vs_b, concurrence_surface, negativity_vs_delta, point };

inline std::optional<Command> parse_command(std::string_view name) {
  if (name == "spectrum") return Command::spectrum;
  if (name == "ground") return Command::ground;
  if (name == "avg-concurrence") return Command::avg_concurrence;
  if (name == "energy-vs-b") return Command::energy_vs_b;
  if (name == "concurrence-surface") return Command::concurrence_surface;
  if (name == "negativity-vs-delta") return Command::negativity_vs_delta;
  if (name == "point") return Command::point;
  return std::nullopt;
}

struct Grid {
  double min = 0.0;
  double max = 0.0;
  std::size_t steps = 1;

  void validate(const char* what) const {
    if (steps < 1) throw ValidationError(std::string(what) + ": steps must be >= 1");
    if (!std::isfinite(min) || !std::isfinite(max) || min > max)
      throw ValidationError(std::string(what) + ": need finite min <= max");
  }

  double step() const { return steps > 1 ? (max - min) / static_cast<double>(steps - 1) : 0.0; }

  std::vector<double> points() const {
    std::vector<double> p(steps);
    for (std::size_t i = 0; i < steps; ++i)
      p[i] = steps == 1 ? min : min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    return p;
  }
};

struct SweepConfig {
  Command command = Command::point;
  Grid delta{-3.0, 3.0, 61};
  Grid b{-3.0, 3.0, 61};
  std::optional<double> delta_point;  // collapses the delta grid when set
  std::optional<double> b_point;      // collapses the b grid when set
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  int precision = 9;
  std::size_t workers = 0;
};

inline constexpr double kSnapTol = 1e-12;

// Delta within 1e-12 of the critical point is taken as exactly -1.
inline double snap_delta(double d) { return std::abs(d + 1.0) <= kSnapTol ? -1.0 : d; }
inline double snap_field(double b) { return std::abs(b) <= kSnapTol ? 0.0 : b; }

inline std::string format_number(double x, int precision) {
  if (x == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, precision);
  if (ec != std::errc{}) throw NumericError("format_number: conversion failed");
  return std::string(buf.data(), ptr);
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, int precision) : out_(out), precision_(precision) {}

  void header(std::initializer_list<std::string_view> cols) {
    bool first = true;
    for (auto c : cols) {
      if (!first) out_ << ',';
      out_ << c;
      first = false;
    }
    out_ << '\n';
  }

  CsvWriter& num(double x) { return cell(format_number(x, precision_)); }
  CsvWriter& integer(std::uint64_t x) { return cell(std::to_string(x)); }
  CsvWriter& text(std::string_view s) { return cell(std::string(s)); }
  void end_row() {
    out_ << '\n';
    fresh_ = true;
  }

 private:
  CsvWriter& cell(const std::string& s) {
    if (!fresh_) out_ << ',';
    out_ << s;
    fresh_ = false;
    return *this;
  }

  std::ostream& out_;
  int precision_;
  bool fresh_ = true;
};

namespace detail {

inline std::vector<double> delta_points(const SweepConfig& c) {
  if (c.delta_point) return {snap_delta(*c.delta_point)};
  auto p = c.delta.points();
  for (auto& d : p) d = snap_delta(d);
  return p;
}

inline std::vector<double> b_points(const SweepConfig& c) {
  if (c.b_point) return {snap_field(*c.b_point)};
  auto p = c.b.points();
  for (auto& b : p) b = snap_field(b);
  return p;
}

inline bool uses_monte_carlo(Command cmd) {
  return cmd == Command::avg_concurrence || cmd == Command::concurrence_surface ||
         cmd == Command::negativity_vs_delta || cmd == Command::point;
}

inline McEstimate subspace_average(const GroundSubspace& g, const SweepConfig& c, std::uint64_t stream) {
  return average_concurrence(g.basis, c.samples, RandomStream(c.seed, stream), ConcurrenceForm::bilinear, c.workers);
}

}  // namespace detail

inline void validate(const SweepConfig& c) {
  if (!c.delta_point) c.delta.validate("delta grid");
  if (!c.b_point) c.b.validate("b grid");
  if (c.delta_point && !std::isfinite(*c.delta_point)) throw ValidationError("--delta must be finite");
  if (c.b_point && !std::isfinite(*c.b_point)) throw ValidationError("--b must be finite");
  if (c.precision < 1 || c.precision > 17) throw ValidationError("precision must be in [1, 17]");
  if (detail::uses_monte_carlo(c.command) && c.samples < kMinSamples)
    throw ValidationError("samples must be >= 100 for Monte Carlo commands");
  if (c.command == Command::energy_vs_b && !c.delta_point) throw ValidationError("energy-vs-b requires --delta");
  if (c.command == Command::point && (!c.delta_point || !c.b_point))
    throw ValidationError("point requires --delta and --b");
}

// delta,b,e0..e5 at a fixed field (default 0).
inline void run_spectrum(const SweepConfig& c, std::ostream& out) {
  CsvWriter w(out, c.precision);
  w.header({"delta", "b", "e0", "e1", "e2", "e3", "e4", "e5"});
  const double b = snap_field(c.b_point.value_or(0.0));
  for (double d : detail::delta_points(c)) {
    w.num(d).num(b);
    for (double e : spectrum({1.0, d, b}).eigenvalues) w.num(e);
    w.end_row();
  }
}

inline void run_ground(const SweepConfig& c, std::ostream& out) {
  CsvWriter w(out, c.precision);
  w.header({"delta", "b", "energy", "degeneracy"});
  const double b = snap_field(c.b_point.value_or(0.0));
  for (double d : detail::delta_points(c)) {
    const auto g = ground_subspace({1.0, d, b});
    w.num(d).num(b).num(g.energy).integer(g.degeneracy()).end_row();
  }
}

// Haar-averaged concurrence of the B = 0 ground space; row i uses stream i.
inline void run_avg_concurrence(const SweepConfig& c, std::ostream& out) {
  CsvWriter w(out, c.precision);
  w.header({"delta", "c_avg", "stderr", "degeneracy"});
  const auto deltas = detail::delta_points(c);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const auto g = ground_subspace({1.0, deltas[i], 0.0});
    const auto est = detail::subspace_average(g, c, i);
    w.num(deltas[i]).num(est.mean).num(est.std_error).integer(g.degeneracy()).end_row();
  }
}

// Six ascending levels per field; is_critical flags points closer than one
// grid step to a level crossing.
inline void run_energy_vs_b(const SweepConfig& c, std::ostream& out) {
  CsvWriter w(out, c.precision);
  w.header({"b", "e0", "e1", "e2", "e3", "e4", "e5", "is_critical"});
  const double d = snap_delta(*c.delta_point);
  const double h = c.b_point ? 0.0 : c.b.step();
  const auto crit = critical_fields(d);
  for (double b : detail::b_points(c)) {
    w.num(b);
    for (double e : spectrum({1.0, d, b}).eigenvalues) w.num(e);
    bool near = false;
    // slack keeps rounding from flagging the neighbours of an on-grid crossing
    for (double bc : crit) near = near || (h > 0.0 ? std::abs(b - bc) < h * (1.0 - 1e-9) : std::abs(b - bc) <= kSnapTol);
    w.integer(near ? 1 : 0).end_row();
  }
}

/// Ground-state concurrence over (delta, b). Rows at a level crossing
/// (including B = 0) carry the Haar average over the degenerate ground space
/// and averaged = 1.
inline void run_concurrence_surface(const SweepConfig& c, std::ostream& out) {
  CsvWriter w(out, c.precision);
  w.header({"delta", "b", "c_norm", "averaged"});
  const auto deltas = detail::delta_points(c);
  const auto fields = detail::b_points(c);
  std::uint64_t row = 0;
  for (double d : deltas) {
    for (double b : fields) {
      std::optional<double> value;
      if (d > -1.0) {
        value = ground_concurrence_field(d, b);
      } else if (b != 0.0) {
        // Delta <= -1 away from B = 0: fully polarized product ground state.
        const auto g = ground_subspace({1.0, d, b});
        if (g.degeneracy() == 1) value = concurrence_norm(g.basis.front());
      }
      if (value) {
        w.num(d).num(b).num(*value).integer(0).end_row();
      } else {
        const auto g = ground_subspace({1.0, d, b});
        const auto est = detail::subspace_average(g, c, row);
        w.num(d).num(b).num(est.mean).integer(1).end_row();
      }
      ++row;
    }
  }
}

inline void run_negativity_vs_delta(const SweepConfig& c, std::ostream& out) {
  CsvWriter w(out, c.precision);
  w.header({"delta", "n_equilibrium", "n_average", "stderr"});
  const auto deltas = detail::delta_points(c);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double d = deltas[i];
    const auto est = average_mixture_negativity(d, c.samples, RandomStream(c.seed, i), c.workers);
    w.num(d).num(equilibrium_negativity(d)).num(est.mean).num(est.std_error).end_row();
  }
}

/// Two-column report for one (delta, b). A unique ground state reports its
/// concurrence and entropy; a degenerate one the Haar average.
inline void run_point(const SweepConfig& c, std::ostream& out) {
  CsvWriter w(out, c.precision);
  w.header({"quantity", "value"});
  const double d = snap_delta(*c.delta_point);
  const double b = snap_field(*c.b_point);
  const auto g = ground_subspace({1.0, d, b});
  w.text("delta").num(d).end_row();
  w.text("b").num(b).end_row();
  w.text("energy").num(g.energy).end_row();
  w.text("degeneracy").integer(g.degeneracy()).end_row();
  if (g.degeneracy() == 1) {
    w.text("concurrence").num(concurrence_norm(g.basis.front())).end_row();
    w.text("entropy_bits").num(von_neumann_entropy(g.basis.front())).end_row();
  } else {
    const auto est = detail::subspace_average(g, c, 0);
    w.text("c_avg").num(est.mean).end_row();
    w.text("c_avg_stderr").num(est.std_error).end_row();
    w.text("samples").integer(est.n).end_row();
    w.text("seed").integer(est.seed).end_row();
  }
  const std::vector<double> weights(g.degeneracy(), 1.0 / static_cast<double>(g.degeneracy()));
  w.text("negativity_equilibrium").num(negativity(density_of_mixture(weights, g.basis))).end_row();
}

inline void run(const SweepConfig& c, std::ostream& out) {
  validate(c);
  switch (c.command) {
    case Command::spectrum: return run_spectrum(c, out);
    case Command::ground: return run_ground(c, out);
    case Command::avg_concurrence: return run_avg_concurrence(c, out);
    case Command::energy_vs_b: return run_energy_vs_b(c, out);
    case Command::concurrence_surface: return run_concurrence_surface(c, out);
    case Command::negativity_vs_delta: return run_negativity_vs_delta(c, out);
    case Command::point: return run_point(c, out);
  }
}

}  // namespace qqent::sweep
