#include "cli/run.hpp"

#include <charconv>
#include <cstdint>
#include <type_traits>

#include "discframe/discframe.hpp"

namespace discframe::cli {
namespace {

using Real = double;
using Cplx = Complex<Real>;

std::string shortest_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

SequenceSpec<Real> to_spec(const FactorSpec& f) {
  if (f.family == "geometric")
    return geometric_spec(f.param, static_cast<Index>(f.count));
  if (f.family == "polynomial")
    return polynomial_spec(f.param, static_cast<Index>(f.count));
  if (f.family == "geometric_with_phases")
    return phased_spec(f.param, f.phase_step, static_cast<Index>(f.count));
  return explicit_spec(f.points);
}

DiscSequence<Real> prefix(const DiscSequence<Real>& full, Index K) {
  return {{full.points.begin(), full.points.begin() + K}, full.label};
}

Cell num(double v) { return Cell(v); }
template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
Cell num(T v) { return Cell(static_cast<std::int64_t>(v)); }

std::string klist_text(const std::vector<long long>& ks) {
  std::string text;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i) text += ',';
    text += std::to_string(ks[i]);
  }
  return text;
}

// Config echo + library version. Deliberately omits the output path (the
// same experiment written to two places must produce identical bytes) and
// carries no timestamps: identical config+seed ⇒ identical output.
void stamp_provenance(ReportTable& table, const ExperimentConfig& cfg) {
  table.provenance.emplace_back("command", cfg.command);
  if (cfg.command == "tensor") {
    table.provenance.emplace_back("factor_a", describe(cfg.factor_a));
    table.provenance.emplace_back("factor_b", describe(cfg.factor_b));
  } else {
    table.provenance.emplace_back("factor", describe(cfg.factor_a));
  }
  if (cfg.command == "tensor" || cfg.command == "bounds" ||
      cfg.command == "report")
    table.provenance.emplace_back("klist", klist_text(cfg.k_list));
  table.provenance.emplace_back("tol", shortest_double(cfg.tol));
  if (cfg.has_seed)
    table.provenance.emplace_back("seed", std::to_string(cfg.seed));
  if (cfg.command == "interp" || cfg.command == "reconstruct")
    table.provenance.emplace_back("trials", std::to_string(cfg.trials));
  table.provenance.emplace_back("version", kVersion);
}

ReportTable run_gen(const ExperimentConfig& cfg) {
  const DiscSequence<Real> seq = generate(to_spec(cfg.factor_a));
  ReportTable table;
  table.columns = {"k", "re", "im", "weight"};
  for (Index k = 0; k < seq.size(); ++k) {
    const Cplx lam = seq.points[static_cast<std::size_t>(k)];
    table.rows.push_back({num(k + 1), num(lam.real()), num(lam.imag()),
                          num(std::sqrt(Real(1) - std::norm(lam)))});
  }
  return table;
}

ReportTable run_carleson(const ExperimentConfig& cfg) {
  const DiscSequence<Real> seq = generate(to_spec(cfg.factor_a));
  const CarlesonInfimum<Real> inf = carleson_infimum(seq);
  ReportTable table;
  table.columns = {"K", "value", "argmin_index"};
  table.rows.push_back({num(seq.size()), num(inf.value), num(inf.argmin_index)});
  return table;
}

ReportTable run_bounds(const ExperimentConfig& cfg) {
  const DiscSequence<Real> full = generate(to_spec(cfg.factor_a));
  ReportTable table;
  table.columns = {"K", "lower_A", "upper_B", "method", "residual"};
  for (long long K : cfg.k_list) {
    const DiscSequence<Real> sub = prefix(full, static_cast<Index>(K));
    const FrameBoundEstimate<Real> est =
        frame_bounds(frame_operator_closed_form(sub), cfg.tol);
    table.rows.push_back({num(K), num(est.lower_A), num(est.upper_B),
                          Cell(std::string(method_name<Real>(est.method))),
                          num(est.residual)});
  }
  return table;
}

ReportTable run_tensor(const ExperimentConfig& cfg) {
  std::vector<Index> ks(cfg.k_list.begin(), cfg.k_list.end());
  const auto rows = tensor_trend_experiment(
      to_spec(cfg.factor_a), to_spec(cfg.factor_b), ks, cfg.tol);
  ReportTable table;
  table.columns = {"K", "carleson_trunc", "lower_A", "upper_B", "ratio_c_hat"};
  for (const auto& row : rows) {
    table.rows.push_back(
        {num(row.K),
         row.carleson_trunc ? num(*row.carleson_trunc) : Cell{},
         num(row.lower_A), num(row.upper_B),
         row.ratio_c_hat ? num(*row.ratio_c_hat) : Cell{}});
  }
  return table;
}

ReportTable run_interp(const ExperimentConfig& cfg) {
  const DiscSequence<Real> seq = generate(to_spec(cfg.factor_a));
  const NormRatioExtremes<Real> probe = surjectivity_probe(
      seq, static_cast<int>(cfg.trials), static_cast<std::uint64_t>(cfg.seed));
  const FrameBoundEstimate<Real> est =
      frame_bounds(frame_operator_closed_form(seq), Real(1e-12));
  ReportTable table;
  table.columns = {"K", "trials", "max_norm_ratio", "min_norm_ratio",
                   "gram_condition"};
  table.rows.push_back({num(seq.size()), num(cfg.trials),
                        num(probe.max_norm_ratio), num(probe.min_norm_ratio),
                        num(est.upper_B / est.lower_A)});
  return table;
}

ReportTable run_reconstruct(const ExperimentConfig& cfg) {
  const DiscSequence<Real> seq = generate(to_spec(cfg.factor_a));
  const Index K = seq.size();
  const Index N = select_iteration_order(seq, cfg.tol);
  const IteratedSystem<Real> sys = make_iterated_system(seq, N);
  CounterRng rng(static_cast<std::uint64_t>(cfg.seed));
  ReportTable table;
  table.columns = {"K", "N", "iterations", "rel_error"};
  for (long long t = 0; t < cfg.trials; ++t) {
    VectorX<Real> x(K);
    for (Index k = 0; k < K; ++k) {
      const auto z = rng.complex_unit_square();
      x(k) = Cplx(z.real() - 0.5, z.imag() - 0.5);
    }
    if (x.norm() == Real(0)) x(0) = Cplx(1);
    const VectorX<Real> coeffs = analyze(sys, x);
    const ReconstructResult<Real> rec = reconstruct(sys, coeffs, cfg.tol);
    table.rows.push_back({num(K), num(N), num(rec.iterations),
                          num((rec.x_hat - x).norm() / x.norm())});
  }
  return table;
}

ReportTable run_report(const ExperimentConfig& cfg) {
  const DiscSequence<Real> full = generate(to_spec(cfg.factor_a));
  ReportTable table;
  table.columns = {"K", "carleson", "lower_A", "upper_B", "gram_condition"};
  for (long long K : cfg.k_list) {
    const DiscSequence<Real> sub = prefix(full, static_cast<Index>(K));
    const CarlesonInfimum<Real> inf = carleson_infimum(sub);
    const FrameBoundEstimate<Real> est =
        frame_bounds(frame_operator_closed_form(sub), cfg.tol);
    table.rows.push_back({num(K), num(inf.value), num(est.lower_A),
                          num(est.upper_B), num(est.upper_B / est.lower_A)});
  }
  return table;
}

}  // namespace

ReportTable run(const ExperimentConfig& cfg) {
  ReportTable table;
  try {
    if (cfg.command == "gen") table = run_gen(cfg);
    else if (cfg.command == "carleson") table = run_carleson(cfg);
    else if (cfg.command == "bounds") table = run_bounds(cfg);
    else if (cfg.command == "tensor") table = run_tensor(cfg);
    else if (cfg.command == "interp") table = run_interp(cfg);
    else if (cfg.command == "reconstruct") table = run_reconstruct(cfg);
    else table = run_report(cfg);
  } catch (const Error& e) {
    throw ComputationError(e.what());
  }
  stamp_provenance(table, cfg);
  return table;
}

}  // namespace discframe::cli
