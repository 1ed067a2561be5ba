#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rpca/eb_solver.hpp"
#include "rpca/map_solver.hpp"
#include "rpca/metrics.hpp"
#include "rpca/pcp_solver.hpp"
#include "rpca/rng.hpp"
#include "rpca/simgen.hpp"

namespace rpca {

enum class Method { eb, map, pcp };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::eb: return "eb";
    case Method::map: return "map";
    case Method::pcp: return "pcp";
  }
  return "?";
}

inline std::optional<Method> parse_method(const std::string& s) {
  if (s == "eb") return Method::eb;
  if (s == "map") return Method::map;
  if (s == "pcp") return Method::pcp;
  return std::nullopt;
}

// One benchmark measurement. `note` carries diagnostics for failed runs; it
// is not part of the CSV schema.
struct TrialRecord {
  std::string method;
  int m = 0;
  int n = 0;
  int r = 0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  int iterations_used = 0;
  double mse_norm = 0.0;
  double angle_deg = 0.0;
  long long runtime_ms = 0;
  bool converged = false;
  std::string note;
};

struct SweepSpec {
  enum class Variable { rank_fraction, rho };

  Variable variable = Variable::rho;
  std::vector<double> values;
  ExperimentSpec fixed;  // the non-swept fields; fixed.seed is the base seed
  int trials = 10;
  std::vector<Method> methods;

  void validate() const {
    require(!values.empty(), "SweepSpec: values nonempty");
    require(trials >= 1, "SweepSpec: trials >= 1");
    require(!methods.empty(), "SweepSpec: at least one method");
    for (double v : values) {
      if (variable == Variable::rho)
        require(v >= 0.0 && v <= 1.0, "SweepSpec: rho values in [0,1]");
      else
        require(v > 0.0 && v <= 1.0,
                "SweepSpec: rank fractions in (0,1]");
    }
  }
};

// Generate the planted instance for `spec`, run one solver, and score the
// estimate against the planted truth. Numerical failures inside a solver are
// recorded (converged = false, zero-estimate scores, reason in `note`)
// rather than thrown; a rank-collapsed estimate that defeats the angle
// metric scores the maximal 90 degrees.
inline TrialRecord run_trial(const ExperimentSpec& spec, Method method,
                             const SolverConfig& solver_config = {},
                             const PcpConfig& pcp_config = {}) {
  const PlantedInstance inst = gen_rpca(spec);

  TrialRecord rec;
  rec.method = method_name(method);
  rec.m = spec.m;
  rec.n = spec.n;
  rec.r = spec.r;
  rec.rho = spec.rho;
  rec.seed = spec.seed;

  Decomposition dec;
  try {
    switch (method) {
      case Method::eb: dec = solve_eb(inst.y, solver_config); break;
      case Method::map: dec = solve_map(inst.y, solver_config); break;
      case Method::pcp: dec = solve_pcp(inst.y, pcp_config); break;
    }
  } catch (const std::runtime_error& e) {
    rec.converged = false;
    rec.mse_norm = 1.0;  // score of the zero estimate
    rec.angle_deg = 90.0;
    rec.note = e.what();
    return rec;
  }

  rec.iterations_used = dec.iterations_used;
  rec.runtime_ms = std::llround(dec.wall_time_ms);
  rec.converged = dec.converged;
  rec.mse_norm = normalized_mse(inst.x_true, dec.x_hat);
  try {
    rec.angle_deg = mean_subspace_angle(inst.x_true, dec.x_hat, spec.r);
  } catch (const std::invalid_argument& e) {
    rec.angle_deg = 90.0;
    rec.note = e.what();
  }
  return rec;
}

// Cartesian product of swept values x trials x methods; each cell gets an
// independent seed derived from (base seed, value index, trial index), so
// every method sees the same planted instance for a given cell.
inline std::vector<TrialRecord> run_sweep(
    const SweepSpec& sweep, const SolverConfig& solver_config = {},
    const PcpConfig& pcp_config = {}) {
  sweep.validate();
  std::vector<TrialRecord> records;
  records.reserve(sweep.methods.size() * sweep.values.size() *
                  static_cast<std::size_t>(sweep.trials));

  for (Method method : sweep.methods) {
    for (std::size_t vi = 0; vi < sweep.values.size(); ++vi) {
      ExperimentSpec spec = sweep.fixed;
      if (sweep.variable == SweepSpec::Variable::rank_fraction) {
        spec.r = static_cast<int>(
            std::lround(sweep.values[vi] * sweep.fixed.m));
        spec.r = std::max(1, std::min(spec.r, sweep.fixed.m));
      } else {
        spec.rho = sweep.values[vi];
      }
      for (int ti = 0; ti < sweep.trials; ++ti) {
        spec.seed = derive_seed(sweep.fixed.seed, vi, static_cast<std::uint64_t>(ti));
        records.push_back(run_trial(spec, method, solver_config, pcp_config));
      }
    }
  }
  return records;
}

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string record_field(const TrialRecord& rec,
                                const std::string& field) {
  if (field == "method") return rec.method;
  if (field == "m") return std::to_string(rec.m);
  if (field == "n") return std::to_string(rec.n);
  if (field == "rank") return std::to_string(rec.r);
  if (field == "rho") return format_double(rec.rho);
  if (field == "seed") return std::to_string(rec.seed);
  throw std::invalid_argument("emit_report: unknown group field '" + field +
                              "'");
}

struct Aggregate {
  std::vector<std::string> key;
  int count = 0;
  double mse_mean = 0, mse_std = 0, angle_mean = 0, angle_std = 0;
};

inline std::vector<Aggregate> aggregate_records(
    const std::vector<TrialRecord>& records,
    const std::vector<std::string>& group_by) {
  std::vector<std::vector<std::string>> keys;
  std::vector<std::vector<const TrialRecord*>> groups;
  for (const TrialRecord& rec : records) {
    std::vector<std::string> key;
    key.reserve(group_by.size());
    for (const std::string& f : group_by) key.push_back(record_field(rec, f));
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      groups.emplace_back();
      it = std::prev(keys.end());
    }
    groups[static_cast<std::size_t>(it - keys.begin())].push_back(&rec);
  }

  std::vector<Aggregate> out;
  for (std::size_t g = 0; g < keys.size(); ++g) {
    Aggregate agg;
    agg.key = keys[g];
    agg.count = static_cast<int>(groups[g].size());
    double sm = 0, sa = 0;
    for (const TrialRecord* rec : groups[g]) {
      sm += rec->mse_norm;
      sa += rec->angle_deg;
    }
    agg.mse_mean = sm / agg.count;
    agg.angle_mean = sa / agg.count;
    double vm = 0, va = 0;
    for (const TrialRecord* rec : groups[g]) {
      vm += (rec->mse_norm - agg.mse_mean) * (rec->mse_norm - agg.mse_mean);
      va += (rec->angle_deg - agg.angle_mean) *
            (rec->angle_deg - agg.angle_mean);
    }
    agg.mse_std = std::sqrt(vm / agg.count);  // population convention
    agg.angle_std = std::sqrt(va / agg.count);
    out.push_back(std::move(agg));
  }
  return out;
}

// Minimal self-contained line chart: one polyline per method, x = the
// numeric group field, y = the metric mean.
inline std::string render_chart(const std::vector<Aggregate>& aggs,
                                const std::string& x_field,
                                const std::string& metric) {
  struct Point {
    double x, y;
  };
  std::map<std::string, std::vector<Point>> series;  // method -> points
  for (const Aggregate& a : aggs) {
    const double x = std::stod(a.key.at(1));
    const double y = metric == "mse_norm" ? a.mse_mean : a.angle_mean;
    series[a.key.at(0)].push_back({x, y});
  }
  double xmin = 1e300, xmax = -1e300, ymin = 0.0, ymax = -1e300;
  for (auto& [name, pts] : series) {
    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return a.x < b.x; });
    for (const Point& p : pts) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymax = std::max(ymax, p.y);
    }
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;

  const double w = 640, h = 420, ml = 70, mr = 20, mt = 30, mb = 50;
  auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr);
  };
  auto py = [&](double y) {
    return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb);
  };
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << (w / 2) << "\" y=\"" << (h - 12)
      << "\" text-anchor=\"middle\" font-size=\"14\">" << x_field
      << "</text>\n";
  svg << "<text x=\"18\" y=\"" << (h / 2)
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 "
         "18 "
      << (h / 2) << ")\">" << metric << " (mean)</text>\n";
  // x/y extreme tick labels
  svg << "<text x=\"" << px(xmin) << "\" y=\"" << (h - mb + 18)
      << "\" text-anchor=\"middle\" font-size=\"12\">" << format_double(xmin)
      << "</text>\n";
  svg << "<text x=\"" << px(xmax) << "\" y=\"" << (h - mb + 18)
      << "\" text-anchor=\"middle\" font-size=\"12\">" << format_double(xmax)
      << "</text>\n";
  svg << "<text x=\"" << (ml - 6) << "\" y=\"" << py(ymax)
      << "\" text-anchor=\"end\" font-size=\"12\">" << format_double(ymax)
      << "</text>\n";
  svg << "<text x=\"" << (ml - 6) << "\" y=\"" << (h - mb)
      << "\" text-anchor=\"end\" font-size=\"12\">" << format_double(ymin)
      << "</text>\n";

  int ci = 0;
  for (const auto& [name, pts] : series) {
    const char* color = colors[ci % 4];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (const Point& p : pts) svg << px(p.x) << ',' << py(p.y) << ' ';
    svg << "\"/>\n";
    for (const Point& p : pts)
      svg << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y)
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << (w - mr - 8) << "\" y=\"" << (mt + 16 * ci + 12)
        << "\" text-anchor=\"end\" font-size=\"13\" fill=\"" << color << "\">"
        << name << "</text>\n";
    ++ci;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace detail

struct Report {
  std::string raw_csv;
  std::string aggregate_csv;
  // metric name -> SVG document (present when the grouping is
  // {method, <numeric field>}, the shape the sweep protocols produce)
  std::map<std::string, std::string> charts;
};

// Raw per-trial CSV plus mean/std aggregates per group. Standard deviations
// use the population convention (/N), as the column names record.
inline Report emit_report(const std::vector<TrialRecord>& records,
                          const std::vector<std::string>& group_by) {
  require(!records.empty(), "emit_report: no records");
  require(!group_by.empty(), "emit_report: group_by nonempty");

  Report report;
  std::ostringstream raw;
  raw << "method,m,n,rank,rho,seed,iterations,mse_norm,angle_deg,runtime_ms,"
         "converged\n";
  for (const TrialRecord& rec : records) {
    raw << rec.method << ',' << rec.m << ',' << rec.n << ',' << rec.r << ','
        << detail::format_double(rec.rho) << ',' << rec.seed << ','
        << rec.iterations_used << ',' << detail::format_double(rec.mse_norm)
        << ',' << detail::format_double(rec.angle_deg) << ','
        << rec.runtime_ms << ',' << (rec.converged ? "true" : "false")
        << '\n';
  }
  report.raw_csv = raw.str();

  const std::vector<detail::Aggregate> aggs =
      detail::aggregate_records(records, group_by);
  std::ostringstream agg_csv;
  for (const std::string& f : group_by) agg_csv << f << ',';
  agg_csv << "count,mse_norm_mean,mse_norm_std_pop,angle_deg_mean,"
             "angle_deg_std_pop\n";
  for (const detail::Aggregate& a : aggs) {
    for (const std::string& k : a.key) agg_csv << k << ',';
    agg_csv << a.count << ',' << detail::format_double(a.mse_mean) << ','
            << detail::format_double(a.mse_std) << ','
            << detail::format_double(a.angle_mean) << ','
            << detail::format_double(a.angle_std) << '\n';
  }
  report.aggregate_csv = agg_csv.str();

  if (group_by.size() == 2 && group_by[0] == "method" &&
      group_by[1] != "method") {
    bool numeric = true;
    for (const detail::Aggregate& a : aggs) {
      try {
        std::size_t used = 0;
        std::stod(a.key.at(1), &used);
        numeric = numeric && used == a.key.at(1).size();
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (numeric) {
      for (const char* metric : {"mse_norm", "angle_deg"})
        report.charts[metric] =
            detail::render_chart(aggs, group_by[1], metric);
    }
  }
  return report;
}

struct ScalingRow {
  int n = 0;
  double ms_per_iteration = 0.0;
  double ratio_to_prev = 1.0;
};

// Median per-iteration wall time of the EB sweep at fixed m across n values,
// with consecutive-row time ratios.
inline std::vector<ScalingRow> scaling_probe(int m,
                                             const std::vector<int>& n_values,
                                             int reps = 5) {
  require(n_values.size() >= 2, "scaling_probe: need at least two n values");
  require(reps >= 1, "scaling_probe: reps >= 1");
  for (int n : n_values)
    require(n >= m, "scaling_probe: every n must be >= m");

  std::vector<ScalingRow> rows;
  for (std::size_t idx = 0; idx < n_values.size(); ++idx) {
    ExperimentSpec spec;
    spec.m = m;
    spec.n = n_values[idx];
    spec.r = std::max(1, m / 5);
    spec.rho = 0.2;
    spec.seed = derive_seed(0x5ca11u, static_cast<std::uint64_t>(m),
                            static_cast<std::uint64_t>(n_values[idx]));
    const PlantedInstance inst = gen_rpca(spec);

    SolverConfig config;
    EbState state = init_state(inst.y, config);
    state = eb_iterate(state, inst.y);  // warm-up, untimed

    std::vector<double> times;
    for (int rep = 0; rep < reps; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      state = eb_iterate(state, inst.y);
      const auto t1 = std::chrono::steady_clock::now();
      times.push_back(
          std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    ScalingRow row;
    row.n = n_values[idx];
    row.ms_per_iteration = times[times.size() / 2];
    row.ratio_to_prev =
        idx == 0 ? 1.0 : row.ms_per_iteration / rows.back().ms_per_iteration;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rpca
