#include "fsph/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "fsph/eig.hpp"
#include "fsph/errors.hpp"
#include "fsph/lipschitz.hpp"
#include "fsph/projcalc.hpp"
#include "fsph/rng.hpp"
#include "fsph/serial_ref.hpp"

namespace fsph {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<int> parse_int_list(const std::string& value) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw config_error("k_list: cannot parse integer '" + item + "'");
    }
  }
  return out;
}

int first_n(int k) { return std::max(1, -k); }

std::uint64_t row_salt(int k, int n) {
  return static_cast<std::uint64_t>(k + 512) * 1000003ULL + static_cast<std::uint64_t>(n);
}

}  // namespace

double SweepConfig::tol(const std::string& name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

void SweepConfig::validate() const {
  if (k_list.empty()) throw config_error("k_list must not be empty");
  const int kmin = *std::min_element(k_list.begin(), k_list.end());
  if (n_max < std::max(1, 1 - kmin))
    throw config_error("n_max must be at least max(1, 1 - min(k_list))");
  if (bridge_mode != "placeholder" && bridge_mode != "config")
    throw config_error("bridge_mode must be 'placeholder' or 'config'");
  if (!(bridge_r > 0.0) || bridge_h < 0.0)
    throw config_error("bridge bounds need r > 0 and h >= 0");
  if (lip_starts == 0 || lip_iterations == 0 || lip_witnesses == 0 || sphere_pairs == 0)
    throw config_error("search effort knobs must be positive");
  if (verify_n_cap < 1) throw config_error("verify_n_cap must be positive");
  if (s3_grid_size < 16) throw config_error("s3_grid_size too small");
  for (const auto& [name, value] : tolerances)
    if (!(value > 0.0)) throw config_error("tolerance '" + name + "' must be positive");
  if (out_csv.empty() || out_json.empty()) throw config_error("output paths must not be empty");
}

void apply_override(SweepConfig& cfg, const std::string& key, const std::string& value) {
  try {
    if (key == "k_list") {
      cfg.k_list = parse_int_list(value);
    } else if (key == "n_max") {
      cfg.n_max = std::stoi(value);
    } else if (key == "seed") {
      cfg.seed = std::stoull(value);
    } else if (key == "s3_grid_size") {
      cfg.s3_grid_size = std::stoull(value);
    } else if (key == "haar_samples") {
      cfg.haar_samples = std::stoull(value);
    } else if (key == "lip_starts") {
      cfg.lip_starts = std::stoull(value);
    } else if (key == "lip_iterations") {
      cfg.lip_iterations = std::stoull(value);
    } else if (key == "lip_witnesses") {
      cfg.lip_witnesses = std::stoull(value);
    } else if (key == "sphere_pairs") {
      cfg.sphere_pairs = std::stoull(value);
    } else if (key == "verify_n_cap") {
      cfg.verify_n_cap = std::stoi(value);
    } else if (key == "bridge_mode") {
      cfg.bridge_mode = value;
    } else if (key == "bridge_h") {
      cfg.bridge_h = std::stod(value);
    } else if (key == "bridge_r") {
      cfg.bridge_r = std::stod(value);
    } else if (key == "timing") {
      cfg.timing = (value == "1" || value == "true" || value == "on");
    } else if (key == "out_csv") {
      cfg.out_csv = value;
    } else if (key == "out_json") {
      cfg.out_json = value;
    } else if (key.rfind("tol_", 0) == 0) {
      cfg.tolerances[key.substr(4)] = std::stod(value);
    } else {
      throw config_error("unknown config key '" + key + "'");
    }
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    throw config_error("cannot parse value '" + value + "' for key '" + key + "'");
  }
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  SweepConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw config_error(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    apply_override(cfg, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
  return cfg;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  cfg.validate();

  struct Task {
    int k, n;
  };
  std::vector<Task> tasks;
  for (int k : cfg.k_list)
    for (int n = first_n(k); n <= cfg.n_max; ++n) tasks.push_back({k, n});

  // Sphere-side estimates depend only on k; computed once per charge.
  std::map<int, double> lip_a;
  for (int k : cfg.k_list) {
    if (lip_a.count(k)) continue;
    const SphereProjectionField field = make_sphere_field(k);
    const MatrixField f = [&field](const GroupElement& x) { return sphere_projection(field, x); };
    lip_a[k] = lip_sphere_estimate(f, cfg.sphere_pairs,
                                   RandomStream(cfg.seed).fork(row_salt(k, 0)).next_u64())
                   .value;
  }

  const bool placeholder = cfg.bridge_mode == "placeholder";
  const BridgeBounds bounds{cfg.bridge_h, cfg.bridge_r,
                            placeholder ? BridgeBounds::Source::placeholder
                                        : BridgeBounds::Source::config};

  std::vector<SweepRow> rows(tasks.size());
#pragma omp parallel for schedule(dynamic) if (tasks.size() > 1)
  for (long long ti = 0; ti < static_cast<long long>(tasks.size()); ++ti) {
    const auto t0 = std::chrono::steady_clock::now();
    const int k = tasks[ti].k;
    const int n = tasks[ti].n;
    SweepRow row;
    row.k = k;
    row.n = n;

    const BridgeInstance inst = make_bridge(k, n);
    row.defect_numeric = defect_norm_closed(inst);
    row.defect_analytic = (k >= 0)
                              ? analytic_defect(k, n)
                              : std::sqrt(analytic_defect_ratio(k, n).convert_to<double>());
    row.abs_err = std::abs(row.defect_numeric - row.defect_analytic);

    SearchOptions opts;
    opts.starts = cfg.lip_starts;
    opts.iterations = cfg.lip_iterations;
    opts.seed = RandomStream(cfg.seed).fork(row_salt(k, n)).next_u64();
    row.lipB_estimate =
        lip_action_estimate(inst.module.matrix, right_factor_action(inst.d, inst.rep_right), opts)
            .value;
    row.lipA_estimate = lip_a.at(k);

    const double la = placeholder ? 0.0 : row.lipA_estimate;
    const double lb = placeholder ? 0.0 : row.lipB_estimate;
    row.decision_quantity = (bounds.h + bounds.r) *
                            combined_seminorm(la, lb, row.defect_numeric, bounds.r);

    if (cfg.timing) {
      row.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    rows[ti] = row;
  }

  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.k != b.k ? a.k < b.k : a.n < b.n;
  });
  return rows;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "k,n,defect_numeric,defect_analytic,abs_err,lipB_estimate,lipA_estimate,"
         "decision_quantity,wall_seconds\n";
  for (const SweepRow& r : rows) {
    out << r.k << ',' << r.n << ',' << format_double(r.defect_numeric) << ','
        << format_double(r.defect_analytic) << ',' << format_double(r.abs_err) << ','
        << format_double(r.lipB_estimate) << ',' << format_double(r.lipA_estimate) << ','
        << format_double(r.decision_quantity) << ',' << format_double(r.wall_seconds) << '\n';
  }
}

void write_json(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    out << "  {\"k\": " << r.k << ", \"n\": " << r.n
        << ", \"defect_numeric\": " << format_double(r.defect_numeric)
        << ", \"defect_analytic\": " << format_double(r.defect_analytic)
        << ", \"abs_err\": " << format_double(r.abs_err)
        << ", \"lipB_estimate\": " << format_double(r.lipB_estimate)
        << ", \"lipA_estimate\": " << format_double(r.lipA_estimate)
        << ", \"decision_quantity\": " << format_double(r.decision_quantity)
        << ", \"wall_seconds\": " << format_double(r.wall_seconds) << "}"
        << (i + 1 < rows.size() ? ",\n" : "\n");
  }
  out << "]\n";
}

int cmd_sweep(const SweepConfig& cfg) {
  const std::vector<SweepRow> rows = run_sweep(cfg);
  std::ofstream csv(cfg.out_csv, std::ios::binary);
  if (!csv) throw config_error("cannot open '" + cfg.out_csv + "' for writing");
  write_csv(rows, csv);
  std::ofstream js(cfg.out_json, std::ios::binary);
  if (!js) throw config_error("cannot open '" + cfg.out_json + "' for writing");
  write_json(rows, js);
  return 0;
}

// ---------------------------------------------------------------------------
// verify

namespace {

struct Check {
  std::string name;
  std::function<std::pair<bool, std::string>()> run;
};

ComplexMatrix random_matrix(std::size_t r, std::size_t c, RandomStream& rng) {
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx(rng.next_gaussian(), rng.next_gaussian());
  return m;
}

ComplexMatrix random_hermitian(std::size_t n, RandomStream& rng) {
  const ComplexMatrix m = random_matrix(n, n, rng);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

int run_verify(const SweepConfig& cfg, std::ostream& out, const std::string& inject_fault) {
  cfg.validate();
  if (!inject_fault.empty() && inject_fault != "projection-idempotence")
    throw config_error("unknown fault '" + inject_fault + "'");

  const int ncap = std::min(cfg.verify_n_cap, cfg.n_max);
  std::vector<std::pair<int, int>> kn_grid;
  for (int k : cfg.k_list)
    for (int n = first_n(k); n <= ncap; n += std::max(1, ncap / 4)) kn_grid.push_back({k, n});

  std::vector<Check> checks;

  checks.push_back({"operator-core/submultiplicative-norm", [&] {
    RandomStream rng(cfg.seed ^ 0x11);
    double worst = -1e300;
    for (int i = 0; i < 20; ++i) {
      const ComplexMatrix a = random_matrix(6, 6, rng);
      const ComplexMatrix b = random_matrix(6, 6, rng);
      worst = std::max(worst, spectral_norm(a * b) - spectral_norm(a) * spectral_norm(b));
    }
    return std::make_pair(worst <= cfg.tol("submultiplicative", 1e-9),
                          "max excess " + fmt(worst));
  }});

  checks.push_back({"operator-core/projection-spectrum", [&] {
    RandomStream rng(cfg.seed ^ 0x12);
    const ComplexMatrix h = random_hermitian(14, rng);
    const HermitianSpectrum s = herm_eig(h);
    ComplexMatrix p(14, 14);
    for (std::size_t j = 0; j < 7; ++j) {
      cvec col(14);
      for (std::size_t r = 0; r < 14; ++r) col[r] = s.eigenvectors(r, j);
      p += ComplexMatrix::outer(col, col);
    }
    double worst = 0.0;
    for (double lam : herm_eigvalues(p))
      worst = std::max(worst, std::min(std::abs(lam), std::abs(lam - 1.0)));
    return std::make_pair(worst < cfg.tol("projection_spectrum", 1e-10), "max offset " + fmt(worst));
  }});

  checks.push_back({"operator-core/kron-norm-multiplicative", [&] {
    RandomStream rng(cfg.seed ^ 0x13);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const ComplexMatrix a = random_matrix(4, 4, rng);
      const ComplexMatrix b = random_matrix(5, 5, rng);
      worst = std::max(worst,
                       std::abs(spectral_norm(kron(a, b)) - spectral_norm(a) * spectral_norm(b)));
    }
    return std::make_pair(worst < cfg.tol("kron_norm", 1e-9), "max deviation " + fmt(worst));
  }});

  checks.push_back({"operator-core/contour-full-spectrum-identity", [&] {
    RandomStream rng(cfg.seed ^ 0x14);
    const ComplexMatrix h = random_hermitian(8, rng);
    const auto vals = herm_eigvalues(h);
    const Contour g{cplx(0.5 * (vals.front() + vals.back())),
                    0.5 * (vals.back() - vals.front()) + 1.0, 256};
    const ComplexMatrix eye =
        resolvent_contour_sum(h, [](cplx) { return cplx(1.0); }, g);
    const double res = (eye - ComplexMatrix::identity(8)).max_abs();
    return std::make_pair(res < cfg.tol("contour_identity", 1e-8), "residual " + fmt(res));
  }});

  checks.push_back({"su2/casimir-scalar", [&] {
    double worst = 0.0;
    for (int n = 1; n <= ncap; ++n) {
      const Irrep rep = make_irrep(n);
      const ComplexMatrix cas = rep.E * rep.F + rep.F * rep.E + 0.5 * cplx(1.0) * (rep.H * rep.H);
      ComplexMatrix scal = ComplexMatrix::identity(rep.dim);
      scal *= cas(0, 0);
      worst = std::max(worst, (cas - scal).max_abs());
    }
    return std::make_pair(worst < cfg.tol("casimir", 1e-10), "max off-scalar " + fmt(worst));
  }});

  checks.push_back({"su2/lift-unitarity", [&] {
    RandomStream rng(cfg.seed ^ 0x15);
    double worst = 0.0;
    for (int n = 1; n <= ncap; n += std::max(1, ncap / 6)) {
      const Irrep rep = make_irrep(n);
      for (std::size_t i = 0; i < 10; ++i) {
        const ComplexMatrix u = lift(haar_sample(rng), rep);
        worst = std::max(worst,
                         (u.adjoint() * u - ComplexMatrix::identity(rep.dim)).frobenius_norm());
      }
    }
    return std::make_pair(worst < cfg.tol("lift_unitarity", 1e-10), "max residual " + fmt(worst));
  }});

  checks.push_back({"su2/length-conjugation-invariance", [&] {
    RandomStream rng(cfg.seed ^ 0x16);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const GroupElement x = haar_sample(rng);
      const GroupElement y = haar_sample(rng);
      worst = std::max(worst,
                       std::abs(length(group_mul(group_mul(x, y), x.inverse())) - length(y)));
    }
    return std::make_pair(worst < cfg.tol("length_conjugation", 1e-12), "max deviation " + fmt(worst));
  }});

  checks.push_back({"su2/weight-covariance", [&] {
    const Irrep rep = make_irrep(std::max(2, ncap / 2));
    double worst = 0.0;
    for (double t : {0.13, 0.47, 0.81}) {
      const ComplexMatrix u = lift(torus_element(t), rep);
      worst = std::max(worst, (u * rep.H - rep.H * u).max_abs());
    }
    return std::make_pair(worst < cfg.tol("weight_covariance", 1e-12), "max commutator " + fmt(worst));
  }});

  checks.push_back({"modules/ladder-norms-exact", [&] {
    for (int m = 0; m <= std::max(ncap, cfg.n_max); ++m) {
      const std::vector<bigint> v = ladder_norms_sq(m);
      bigint fact_a = 1;  // a!
      bigint falling = 1;  // m! / (m-a)!
      for (int a = 0; a <= m; ++a) {
        if (a > 0) {
          fact_a *= a;
          falling *= (m - a + 1);
        }
        if (v[a] != fact_a * falling)
          return std::make_pair(false, "mismatch at m=" + std::to_string(m) +
                                           ", a=" + std::to_string(a));
      }
    }
    return std::make_pair(true, std::string("exact through m=") +
                                    std::to_string(std::max(ncap, cfg.n_max)));
  }});

  checks.push_back({"modules/projection-idempotence", [&] {
    double worst = 0.0;
    for (const auto& [k, n] : kn_grid) {
      ModuleProjection p = module_projection(k, n);
      if (inject_fault == "projection-idempotence") p.matrix(0, 0) += 1e-3;
      worst = std::max(worst, (p.matrix * p.matrix - p.matrix).max_abs());
      worst = std::max(worst, (p.matrix.adjoint() - p.matrix).max_abs());
    }
    return std::make_pair(worst < cfg.tol("idempotence", 1e-10), "max residual " + fmt(worst));
  }});

  checks.push_back({"modules/projection-equivariance", [&] {
    RandomStream rng(cfg.seed ^ 0x17);
    double worst = 0.0;
    for (const auto& [k, n] : kn_grid) {
      const ModuleProjection p = module_projection(k, n);
      const Irrep left = make_irrep(std::abs(k));
      const Irrep right = make_irrep(n);
      for (int i = 0; i < 5; ++i) {
        const GroupElement x = haar_sample(rng);
        const ComplexMatrix u = kron(lift(x, left), lift(x, right));
        worst = std::max(worst, (u * p.matrix - p.matrix * u).frobenius_norm());
      }
    }
    return std::make_pair(worst < cfg.tol("equivariance", 1e-8), "max residual " + fmt(worst));
  }});

  checks.push_back({"modules/highest-weight-residual", [&] {
    double worst = 0.0;
    for (const auto& [k, n] : kn_grid) {
      const HighestWeightData hw = highest_weight_vector(k, n);
      const Irrep left = make_irrep(std::abs(k));
      const Irrep right = make_irrep(n);
      const ComplexMatrix raise = kron(left.E, ComplexMatrix::identity(right.dim)) +
                                  kron(ComplexMatrix::identity(left.dim), right.E);
      worst = std::max(worst, vec_norm(matvec(raise, hw.normalized_vector(0))));
    }
    return std::make_pair(worst < cfg.tol("highest_weight", 1e-10), "max residual " + fmt(worst));
  }});

  checks.push_back({"modules/clutching-invertible", [&] {
    double min_det = 1e300;
    const auto grid = s3_grid(cfg.s3_grid_size, cfg.seed);
    for (int j : {0, 1, 2, 3})
      for (int k : {0, 1, 2, 3})
        for (const GroupElement& x : grid)
          min_det = std::min(min_det,
                             std::pow(std::norm(x.a), k) + std::pow(std::norm(x.b), j));
    return std::make_pair(min_det > 0.0, "min |det| " + fmt(min_det));
  }});

  checks.push_back({"bridge/defect-law-nonnegative-charge", [&] {
    double worst = 0.0;
    for (int k = 0; k <= 3; ++k)
      for (int n = 1; n <= ncap; ++n)
        worst = std::max(worst, std::abs(defect_norm_closed(k, n) - analytic_defect(k, n)));
    return std::make_pair(worst < cfg.tol("defect_law", 1e-9), "max |num - analytic| " + fmt(worst));
  }});

  checks.push_back({"bridge/defect-ratio-negative-charge", [&] {
    double worst = 0.0;
    for (int k = -3; k <= -1; ++k)
      for (int n = first_n(k); n <= ncap; ++n) {
        const double numeric = defect_norm_closed(k, n);
        worst = std::max(worst, std::abs(numeric * numeric -
                                         analytic_defect_ratio(k, n).convert_to<double>()));
      }
    return std::make_pair(worst < cfg.tol("defect_ratio", 1e-9), "max |num^2 - ratio| " + fmt(worst));
  }});

  checks.push_back({"bridge/defect-point-independence", [&] {
    RandomStream rng(cfg.seed ^ 0x18);
    double worst_sdev = 0.0;
    for (const auto& [k, n] : kn_grid) {
      const BridgeInstance inst = make_bridge(k, n);
      std::vector<double> vals;
      for (std::size_t i = 0; i < cfg.haar_samples; ++i)
        vals.push_back(defect_norm_at(inst, haar_sample(rng)));
      double mean = 0.0;
      for (double v : vals) mean += v;
      mean /= vals.size();
      double var = 0.0;
      for (double v : vals) var += (v - mean) * (v - mean);
      worst_sdev = std::max(worst_sdev, std::sqrt(var / std::max<std::size_t>(1, vals.size() - 1)));
    }
    return std::make_pair(worst_sdev < cfg.tol("defect_spread", 1e-8), "max sdev " + fmt(worst_sdev));
  }});

  checks.push_back({"bridge/defect-monotone-in-n", [&] {
    for (int k : cfg.k_list) {
      if (k == 0) continue;
      double prev = 2.0;
      for (int n = first_n(k); n <= ncap; ++n) {
        const double v = defect_norm_closed(k, n);
        if (v >= prev)
          return std::make_pair(false, "not decreasing at k=" + std::to_string(k) +
                                           ", n=" + std::to_string(n));
        prev = v;
      }
    }
    return std::make_pair(true, std::string("strictly decreasing"));
  }});

  checks.push_back({"bridge/decay-bound", [&] {
    for (int k = -5; k <= -1; ++k)
      for (int n = first_n(k); n <= std::max(ncap, cfg.n_max); ++n) {
        const double lhs = n * analytic_defect_ratio(k, n).convert_to<double>();
        if (lhs > static_cast<double>(-k) * (-k) * (-k))
          return std::make_pair(false, "bound fails at k=" + std::to_string(k) +
                                           ", n=" + std::to_string(n));
      }
    return std::make_pair(true, std::string("n * ratio <= |k|^3"));
  }});

  checks.push_back({"bridge/direct-sum-max-law", [&] {
    RandomStream rng(cfg.seed ^ 0x19);
    const BridgeInstance inst = make_bridge(0, 3);
    double worst = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
      const std::size_t d1 = 1 + rng.next_u64() % 3, d2 = 1 + rng.next_u64() % 3;
      const ComplexMatrix a1 = random_hermitian(d1, rng), a2 = random_hermitian(d2, rng);
      const ComplexMatrix b1 = random_hermitian(d1 * 4, rng), b2 = random_hermitian(d2 * 4, rng);
      const ComplexMatrix omega = pivot_at(inst, haar_sample(rng));
      const double lhs = pair_defect(block_diag(a1, a2), block_diag(b1, b2), omega);
      const double rhs = std::max(pair_defect(a1, b1, omega), pair_defect(a2, b2, omega));
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + rhs));
    }
    return std::make_pair(worst < cfg.tol("direct_sum", 1e-12), "max deviation " + fmt(worst));
  }});

  checks.push_back({"lipschitz/conjugation-route-residual", [&] {
    RandomStream rng(cfg.seed ^ 0x1a);
    double worst = 0.0;
    for (const auto& [k, n] : kn_grid) {
      const ModuleProjection module = module_projection(k, n);
      const Irrep left = make_irrep(std::abs(k));
      const Irrep right = make_irrep(n);
      for (int i = 0; i < 5; ++i)
        worst = std::max(worst,
                         beta_gamma_identity_check(module, left, right, haar_sample(rng)));
    }
    return std::make_pair(worst < cfg.tol("beta_gamma", 1e-8), "max residual " + fmt(worst));
  }});

  checks.push_back({"lipschitz/conjugation-route-estimates-agree", [&] {
    const auto witnesses = haar_witnesses(cfg.lip_witnesses, cfg.seed ^ 0x1b);
    std::vector<GroupElement> inverses;
    for (const GroupElement& x : witnesses) inverses.push_back(x.inverse());
    double worst = 0.0;
    for (const auto& [k, n] : kn_grid) {
      if (k == 0) continue;
      const ModuleProjection module = module_projection(k, n);
      const Irrep left = make_irrep(std::abs(k));
      const Irrep right = make_irrep(n);
      const double beta =
          estimate_on_witnesses(module.matrix, right_factor_action(left.dim, right), witnesses)
              .value;
      const double gamma = estimate_on_witnesses(module.matrix, left_factor_action(left, right.dim),
                                                 std::span<const GroupElement>(inverses))
                               .value;
      worst = std::max(worst, std::abs(beta - gamma));
    }
    return std::make_pair(worst < cfg.tol("beta_gamma_estimate", 1e-6), "max gap " + fmt(worst));
  }});

  checks.push_back({"lipschitz/uniform-boundedness-report", [&] {
    // Logged, not gated: the estimates are lower bounds.
    const auto witnesses = haar_witnesses(cfg.lip_witnesses, cfg.seed ^ 0x1c);
    double worst_ratio = 0.0;
    for (int k : cfg.k_list) {
      if (k == 0) continue;
      const Irrep left = make_irrep(std::abs(k));
      const int base_n = std::min(2 * std::abs(k) + 2, ncap);
      double base = 0.0, peak = 0.0;
      for (int n = first_n(k); n <= ncap; ++n) {
        const ModuleProjection module = module_projection(k, n);
        const double v =
            estimate_on_witnesses(module.matrix, right_factor_action(left.dim, make_irrep(n)),
                                  witnesses)
                .value;
        peak = std::max(peak, v);
        if (n == base_n) base = v;
      }
      if (base > 0.0) worst_ratio = std::max(worst_ratio, peak / base);
    }
    return std::make_pair(true, "peak/base ratio " + fmt(worst_ratio) + " (report only)");
  }});

  checks.push_back({"lipschitz/seed-determinism", [&] {
    const Irrep rep = make_irrep(2);
    SearchOptions opts;
    opts.starts = 8;
    opts.iterations = 40;
    opts.seed = cfg.seed ^ 0x1d;
    const SeminormEstimate a = lip_action_estimate(rep.H, conj_action(rep), opts);
    const SeminormEstimate b = lip_action_estimate(rep.H, conj_action(rep), opts);
    return std::make_pair(a.value == b.value && a.witness.a == b.witness.a,
                          "value " + fmt(a.value));
  }});

  checks.push_back({"lipschitz/matrix-seminorm-axioms", [&] {
    const auto witnesses = haar_witnesses(cfg.lip_witnesses, cfg.seed ^ 0x1e);
    const SlipAxiomReport report =
        slip_axiom_check(make_irrep(std::min(6, ncap)), witnesses, 20, 3, cfg.seed ^ 0x1f);
    return std::make_pair(report.pass, "compression excess " + fmt(report.max_compression_violation) +
                                           ", block deviation " + fmt(report.max_block_deviation));
  }});

  checks.push_back({"projcalc/spectral-cut-retraction", [&] {
    RandomStream rng(cfg.seed ^ 0x20);
    const ProjectionPair pair = rotated_projection_pair(8, 3, 0.4, cfg.seed ^ 0x21);
    ComplexMatrix h = random_hermitian(8, rng);
    h *= cplx(0.2 / spectral_norm(h), 0.0);
    const ComplexMatrix p = nearest_projection(pair.p0 + h);
    const double res = (nearest_projection(p) - p).max_abs();
    return std::make_pair(res < 1e-12, "double-cut residual " + fmt(res));
  }});

  checks.push_back({"projcalc/path-validity", [&] {
    const ProjectionPair pair = rotated_projection_pair(6, 2, std::asin(0.7), cfg.seed ^ 0x22);
    const ProjectionPath path = projection_path(pair.p0, pair.p1, uniform_grid(41));
    const PathValidation v = validate_path(path);
    return std::make_pair(v.valid, v.valid ? "grid 41, delta " + fmt(path.delta) : v.detail);
  }});

  checks.push_back({"projcalc/path-seminorm-bound", [&] {
    const auto witnesses = haar_witnesses(cfg.lip_witnesses, cfg.seed ^ 0x23);
    const ConjugationAction act = conj_action(make_irrep(3));
    const SeminormEvaluator seminorm = [&](const ComplexMatrix& p) {
      return estimate_on_witnesses(p, act, witnesses).value;
    };
    const ProjectionPair pair = rotated_projection_pair(4, 2, std::asin(0.8), cfg.seed ^ 0x24);
    const ProjectionPath path = projection_path(pair.p0, pair.p1, uniform_grid(31));
    const PathProfile profile = path_seminorm_profile(path, seminorm);
    return std::make_pair(profile.within_bound,
                          "max " + fmt(profile.max_value) + " vs bound " + fmt(profile.bound));
  }});

  checks.push_back({"projcalc/concatenation", [&] {
    const ProjectionPair pair = rotated_projection_pair(5, 2, std::asin(0.5), cfg.seed ^ 0x25);
    RandomStream rng(cfg.seed ^ 0x26);
    ComplexMatrix h = random_hermitian(5, rng);
    h *= cplx(0.2 / spectral_norm(h), 0.0);
    const ComplexMatrix target = nearest_projection(pair.p1 + h, 1e-4);
    const ProjectionPath a = projection_path(pair.p0, pair.p1, uniform_grid(21));
    const ProjectionPath b = projection_path(pair.p1, target, uniform_grid(21));
    const PathValidation v = validate_path(concatenate_paths(a, b));
    return std::make_pair(v.valid, v.valid ? std::string("merged grid valid") : v.detail);
  }});

  int failures = 0;
  for (const Check& c : checks) {
    std::pair<bool, std::string> result;
    try {
      result = c.run();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    out << (result.first ? "ok   " : "FAIL ") << c.name << ": " << result.second << "\n";
    if (!result.first) ++failures;
  }
  out << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed")
      << " (" << checks.size() << " total)\n";
  return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// homotopy demo

int run_homotopy_demo(const SweepConfig& cfg, std::ostream& out) {
  cfg.validate();
  const auto witnesses = haar_witnesses(cfg.lip_witnesses, cfg.seed ^ 0x31);
  const ConjugationAction act = conj_action(make_irrep(3));
  const SeminormEvaluator seminorm = [&](const ComplexMatrix& p) {
    return estimate_on_witnesses(p, act, witnesses).value;
  };

  out << "{\n  \"cases\": [\n";
  const double deltas[] = {0.0, 0.5, 0.9, 1.0};
  for (std::size_t i = 0; i < 4; ++i) {
    const double delta = deltas[i];
    out << "    {\"delta_target\": " << format_double(delta);
    if (delta < 1.0) {
      const ProjectionPair pair =
          rotated_projection_pair(4, 2, std::asin(delta), cfg.seed + i);
      const ProjectionPath path = projection_path(pair.p0, pair.p1, uniform_grid(41));
      const PathProfile profile = path_seminorm_profile(path, seminorm);
      const HomotopyDecision decision =
          homotopy_decision(path.delta, 0.0, seminorm(pair.p0), seminorm(pair.p1));
      out << ", \"delta_measured\": " << format_double(path.delta)
          << ", \"path_points\": " << path.path.size()
          << ", \"verdict\": \"" << (decision.guaranteed ? "PATH-GUARANTEED" : "NOT-GUARANTEED")
          << "\", \"seminorm_max\": " << format_double(profile.max_value)
          << ", \"seminorm_bound\": " << format_double(profile.bound)
          << ", \"bound_holds\": " << (profile.within_bound ? "true" : "false") << "}";
    } else {
      // Orthogonal endpoints: no continuous path; reported, not an error.
      ComplexMatrix p0(2, 2), p1(2, 2);
      p0(0, 0) = 1.0;
      p1(1, 1) = 1.0;
      std::string message = "unreachable";
      try {
        projection_path(p0, p1);
      } catch (const no_path_error& e) {
        message = e.what();
      }
      out << ", \"verdict\": \"NO-PATH\", \"detail\": \"" << message << "\"}";
    }
    out << (i + 1 < 4 ? ",\n" : "\n");
  }
  out << "  ]\n}\n";
  return 0;
}

}  // namespace fsph
