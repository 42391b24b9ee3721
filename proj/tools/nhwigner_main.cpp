// Command-line front end: closed-form spectra and basis renderings, direct
// PDE evolution with trace tracking, resonance tables and Breit-Wigner
// lineshapes, all exported as diff-friendly CSV (and optional PGM heatmaps).
//
// Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "nhwigner/nhwigner.hpp"

namespace fs = std::filesystem;
using namespace nhwigner;

namespace {

struct RealMode {
  ModeIndex m;
  Parity parity = Parity::Plus;
};

std::string mode_tag(const RealMode& rm) {
  return "n" + std::to_string(rm.m.n) + "_nu" + std::to_string(rm.m.nu) +
         (rm.parity == Parity::Plus ? "_p" : "_m");
}

Parity parse_parity(const std::string& s) {
  if (s == "+" || s == "plus") return Parity::Plus;
  if (s == "-" || s == "minus") return Parity::Minus;
  throw std::invalid_argument("parity must be '+' or '-': " + s);
}

// "n,nu,parity;n,nu,parity;..."  (parity optional, defaults to +)
std::vector<RealMode> parse_mode_list(const std::string& list) {
  std::vector<RealMode> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    std::stringstream fields(item);
    std::string f;
    std::vector<std::string> parts;
    while (std::getline(fields, f, ',')) parts.push_back(f);
    if (parts.size() < 2 || parts.size() > 3)
      throw std::invalid_argument("bad mode triple (want n,nu[,parity]): " + item);
    RealMode rm;
    rm.m.n = std::stoi(parts[0]);
    rm.m.nu = std::stoi(parts[1]);
    if (parts.size() == 3) rm.parity = parse_parity(parts[2]);
    out.push_back(rm);
  }
  if (out.empty()) throw std::invalid_argument("empty mode list");
  return out;
}

std::vector<RealMode> modes_from(const RunConfig& cfg, const std::vector<int>& ns,
                                 const std::vector<int>& nus, const std::string& parity) {
  if (ns.empty() && nus.empty()) return parse_mode_list(cfg.modes);
  const std::vector<int> n_list = ns.empty() ? std::vector<int>{0} : ns;
  const std::vector<int> nu_list = nus.empty() ? std::vector<int>{0} : nus;
  std::vector<Parity> ps;
  if (parity == "both")
    ps = {Parity::Plus, Parity::Minus};
  else
    ps = {parse_parity(parity)};
  std::vector<RealMode> out;
  for (int n : n_list)
    for (int nu : nu_list)
      for (Parity p : ps) {
        if (nu == 0 && p == Parity::Minus && parity == "both") continue;
        out.push_back({{n, nu}, p});
      }
  return out;
}

NhParamsd make_params(const RunConfig& cfg, bool beta_given) {
  if (cfg.model == "elliptic") {
    if (beta_given && cfg.beta != cfg.alpha)
      throw std::invalid_argument("elliptic model fixes beta = alpha; drop --beta or use --model general");
    return NhParamsd::elliptic(cfg.alpha, cfg.gamma);
  }
  if (cfg.model == "hyperbolic") {
    if (beta_given && cfg.beta != -cfg.alpha)
      throw std::invalid_argument("hyperbolic model fixes beta = -alpha; drop --beta or use --model general");
    return NhParamsd::hyperbolic(cfg.alpha, cfg.gamma);
  }
  if (cfg.model == "general") return NhParamsd(cfg.alpha, cfg.beta, cfg.gamma);
  throw std::invalid_argument("unknown model: " + cfg.model);
}

std::set<std::string> parse_formats(const RunConfig& cfg) {
  std::set<std::string> out;
  std::stringstream ss(cfg.format);
  std::string f;
  while (std::getline(ss, f, ',')) {
    if (f.empty()) continue;
    if (f != "csv-matrix" && f != "csv-series" && f != "pgm")
      throw std::invalid_argument("unknown output format: " + f);
    out.insert(f);
  }
  return out;
}

SpatialOrder parse_order(int order) {
  if (order == 2) return SpatialOrder::Second;
  if (order == 4) return SpatialOrder::Fourth;
  throw std::invalid_argument("--order must be 2 or 4");
}

unsigned sweep_threads(std::size_t jobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("NHWIGNER_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(jobs, 1)));
}

// Static round-robin fan-out; each job writes only its own files, so the
// outputs are byte-identical for any thread count.
template <typename F>
void run_parallel(std::size_t jobs, F&& work) {
  const unsigned nt = sweep_threads(jobs);
  if (nt <= 1) {
    for (std::size_t k = 0; k < jobs; ++k) work(k);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex err_mutex;
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t k = t; k < jobs; k += nt) {
        try {
          work(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

fs::path ensure_out_dir(const RunConfig& cfg, const char* fallback) {
  fs::path dir = cfg.out.empty() ? fs::path(fallback) : fs::path(cfg.out);
  fs::create_directories(dir);
  return dir;
}

std::string running_rate_nan() { return fmt_g17(std::numeric_limits<double>::quiet_NaN()); }

// ---------------------------------------------------------------------------

int cmd_spectrum(const RunConfig& cfg, bool beta_given) {
  const auto params = make_params(cfg, beta_given);
  std::vector<std::string> lines;
  if (cfg.model == "elliptic") {
    lines.push_back("n,nu,lambda_re,lambda_im,tau");
    for (int n = 0; n <= cfg.n_max; ++n)
      for (int nu = 0; nu <= cfg.nu_max; ++nu) {
        const auto lam = eigenvalue(ModeIndex{n, nu}, params);
        const double tau = (lam.re == 0.0) ? std::numeric_limits<double>::infinity() : 1.0 / lam.re;
        lines.push_back(std::to_string(n) + ',' + std::to_string(nu) + ',' + fmt_g17(lam.re) +
                        ',' + fmt_g17(lam.im) + ',' + fmt_g17(tau));
      }
  } else if (cfg.model == "hyperbolic") {
    lines.push_back("nu,lambda_re,lambda_im");
    for (int nu = 0; nu <= cfg.nu_max; ++nu) {
      const auto lam = hyperbolic_eigenvalue(nu, params);
      lines.push_back(std::to_string(nu) + ',' + fmt_g17(lam.re) + ',' + fmt_g17(lam.im));
    }
  } else {
    throw std::invalid_argument("spectrum: no closed-form spectrum for --model general");
  }
  for (const auto& l : lines) std::cout << l << '\n';
  if (!cfg.out.empty()) {
    const fs::path dir = ensure_out_dir(cfg, "nhwigner_out");
    std::ofstream os(dir / "spectrum.csv");
    if (!os) throw std::runtime_error("cannot write spectrum.csv");
    for (const auto& l : lines) os << l << '\n';
  }
  return 0;
}

int cmd_basis(const RunConfig& cfg, bool beta_given, const std::vector<int>& ns,
              const std::vector<int>& nus, const std::string& parity) {
  const auto modes = modes_from(cfg, ns, nus, parity);
  const auto formats = parse_formats(cfg);
  const fs::path dir = ensure_out_dir(cfg, "nhwigner_out");
  // the t = 0 profile needs no oscillator parameters; later times decay at
  // the elliptic rates
  NhParamsd params = NhParamsd::elliptic(1.0, 0.0);
  if (cfg.t != 0.0) params = make_params(cfg, beta_given);
  if (cfg.t != 0.0 && params.classification() != ModelClass::Elliptic)
    throw std::invalid_argument("basis: time-evolved members need --model elliptic");

  std::vector<std::string> summaries(modes.size());
  run_parallel(modes.size(), [&](std::size_t k) {
    const RealMode rm = modes[k];
    const auto g = (cfg.t == 0.0)
                       ? sample_basis<double>(cfg.grid_l, cfg.grid_n, rm.m, rm.parity)
                       : sample_basis(cfg.grid_l, cfg.grid_n, rm.m, rm.parity, params, cfg.t);
    const std::string stem = "basis_" + mode_tag(rm);
    std::string files;
    if (formats.count("csv-matrix")) {
      write_csv_matrix((dir / (stem + ".csv")).string(), g);
      files += (dir / (stem + ".csv")).string();
    }
    if (formats.count("pgm")) {
      write_pgm((dir / (stem + ".pgm")).string(), g);
      if (!files.empty()) files += ' ';
      files += (dir / (stem + ".pgm")).string();
    }
    std::ostringstream os;
    os << "basis n=" << rm.m.n << " nu=" << rm.m.nu
       << " parity=" << (rm.parity == Parity::Plus ? '+' : '-') << " t=" << fmt_g17(cfg.t)
       << " extrema=" << count_extrema(g) << " peak=" << fmt_g17(g.values.abs().maxCoeff());
    if (!files.empty()) os << " files: " << files;
    summaries[k] = os.str();
  });
  for (const auto& s : summaries) std::cout << s << '\n';
  return 0;
}

void write_coeffs_csv(const fs::path& path, const SpectralCoeffsd& coeffs) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "n,nu,parity,coeff\n";
  for (const auto& [k, v] : coeffs.c)
    os << k.n << ',' << k.nu << ',' << (k.parity == Parity::Plus ? '+' : '-') << ','
       << fmt_g17(v) << '\n';
}

SpectralCoeffsd read_coeffs_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open coefficient file: " + path);
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument(path + ": empty file");
  SpectralCoeffsd coeffs;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::stringstream ss(line);
    std::string f;
    std::vector<std::string> parts;
    while (std::getline(ss, f, ',')) parts.push_back(f);
    if (parts.size() != 4) throw std::invalid_argument(path + ": bad row: " + line);
    const ModeKey key{std::stoi(parts[0]), std::stoi(parts[1]), parse_parity(parts[2])};
    coeffs.set(key, std::strtod(parts[3].c_str(), nullptr));
    coeffs.n_max = std::max(coeffs.n_max, key.n);
    coeffs.nu_max = std::max(coeffs.nu_max, key.nu);
  }
  return coeffs;
}

int cmd_project(const RunConfig& cfg) {
  if (cfg.input.empty()) throw std::invalid_argument("project: --input csv-matrix required");
  const auto w0 = read_csv_matrix(cfg.input);
  const double tr = integrate(w0);
  if (std::abs(tr - 1.0) > 1e-6)
    std::cerr << "warning: input trace is " << fmt_g17(tr)
              << "; projection is linear, but a density should integrate to 1\n";
  const auto res = project(w0, cfg.n_max, cfg.nu_max);
  if (!res.coeffs.has_trace_content(1e-12))
    std::cerr << "warning: expansion has no nu = 0 content, so it carries no trace weight\n";
  if (res.norm_check > 1e-6)
    std::cerr << "warning: quadrature norms deviate from closed forms by "
              << fmt_g17(res.norm_check) << "; enlarge L or N for this truncation\n";
  const fs::path dir = ensure_out_dir(cfg, "nhwigner_out");
  write_coeffs_csv(dir / "coeffs.csv", res.coeffs);
  std::cout << "project: input_trace=" << fmt_g17(tr) << " residual=" << fmt_g17(res.residual)
            << " norm_check=" << fmt_g17(res.norm_check) << " file: "
            << (dir / "coeffs.csv").string() << '\n';
  return 0;
}

int cmd_evolve(const RunConfig& cfg, bool beta_given, const std::vector<int>& ns,
               const std::vector<int>& nus, const std::string& parity) {
  const auto params = make_params(cfg, beta_given);
  const auto formats = parse_formats(cfg);
  const fs::path base_dir = ensure_out_dir(cfg, "nhwigner_out");

  struct Job {
    std::string tag;
    WignerGridd w0;
  };
  std::vector<Job> jobs;
  if (cfg.init == "mode") {
    for (const auto& rm : modes_from(cfg, ns, nus, parity)) {
      if (params.classification() != ModelClass::Elliptic)
        throw std::invalid_argument("evolve: --init mode samples the elliptic eigenbasis; "
                                    "use --model elliptic or a gaussian/coeffs initial state");
      jobs.push_back({mode_tag(rm), sample_basis<double>(cfg.grid_l, cfg.grid_n, rm.m, rm.parity)});
    }
  } else if (cfg.init == "gaussian") {
    if (!(cfg.width > 0)) throw std::invalid_argument("evolve: --width must be positive");
    auto g = make_grid(cfg.grid_l, cfg.grid_n);
    const double cq = cfg.center_q, cp = cfg.center_p, w2 = cfg.width * cfg.width;
    sample_cartesian(g, [&](double q, double p) {
      const double dq = q - cq, dp = p - cp;
      return std::exp(-(dq * dq + dp * dp) / w2) / (M_PI * w2);
    });
    jobs.push_back({"gaussian", std::move(g)});
  } else if (cfg.init == "coeffs") {
    if (cfg.coeffs.empty()) throw std::invalid_argument("evolve: --coeffs file required");
    const auto coeffs = read_coeffs_csv(cfg.coeffs);
    jobs.push_back({"coeffs", reconstruct_initial(coeffs, cfg.grid_l, cfg.grid_n)});
  } else {
    throw std::invalid_argument("evolve: --init must be mode, gaussian or coeffs");
  }

  EvolverConfigd ecfg;
  ecfg.t_end = cfg.t_end;
  ecfg.record_every = cfg.record_every;
  ecfg.normalized = cfg.normalized;
  ecfg.spatial_order = parse_order(cfg.order);
  ecfg.allow_long_antidiffusive = cfg.force_long;

  std::vector<std::string> summaries(jobs.size());
  run_parallel(jobs.size(), [&](std::size_t k) {
    const auto& job = jobs[k];
    const fs::path dir = (jobs.size() == 1) ? base_dir : base_dir / job.tag;
    fs::create_directories(dir);

    EvolverConfigd run_cfg = ecfg;
    run_cfg.dt = (cfg.dt > 0) ? cfg.dt : 0.5 * stability_bound(params, job.w0);
    const auto res = evolve(job.w0, params, run_cfg);

    if (formats.count("csv-matrix") || formats.count("pgm")) {
      std::vector<std::vector<double>> index;
      for (std::size_t s = 0; s < res.snapshots.size(); ++s) {
        char name[64];
        std::snprintf(name, sizeof(name), "snapshot_%06zu", s);
        if (formats.count("csv-matrix"))
          write_csv_matrix((dir / (std::string(name) + ".csv")).string(), res.snapshots[s]);
        if (formats.count("pgm"))
          write_pgm((dir / (std::string(name) + ".pgm")).string(), res.snapshots[s]);
        index.push_back({static_cast<double>(s), static_cast<double>(res.snapshot_steps[s]),
                         res.snapshots[s].time});
      }
      if (formats.count("csv-series"))
        write_csv_series((dir / "snapshots.csv").string(), {"index", "step", "t"}, index);
    }

    // trace history with the running fit of -ln(trace) against t
    std::string trace_rate = running_rate_nan(), l2_rate = running_rate_nan();
    if (formats.count("csv-series")) {
      std::ofstream os(dir / "trace.csv");
      os << "t,trace,rate_so_far\n";
      double st = 0, sy = 0, stt = 0, sty = 0;
      std::size_t m = 0;
      bool fit_ok = true;
      for (std::size_t i = 0; i < res.trace.times.size(); ++i) {
        const double t = res.trace.times[i], tr = res.trace.traces[i];
        double rate = std::numeric_limits<double>::quiet_NaN();
        if (tr <= 0) fit_ok = false;
        if (fit_ok) {
          const double y = -std::log(tr);
          ++m, st += t, sy += y, stt += t * t, sty += t * y;
          const double den = stt - st * st / m;
          if (m >= 2 && den > 0) rate = (sty - st * sy / m) / den;
        }
        os << fmt_g17(t) << ',' << fmt_g17(tr) << ',' << fmt_g17(rate) << '\n';
      }
    }
    try {
      trace_rate = fmt_g17(decay_rate_fit(res.trace));
    } catch (const std::invalid_argument&) {
      // traces not positive (for example a pure nu >= 1 mode); keep nan
    }
    double l2_rate_value = std::numeric_limits<double>::quiet_NaN();
    try {
      l2_rate_value = decay_rate_fit(TraceSeriesd{res.trace.times, res.l2_norms});
      l2_rate = fmt_g17(l2_rate_value);
    } catch (const std::invalid_argument&) {
    }

    std::ostringstream os;
    os << "evolve " << job.tag << ": t_end=" << fmt_g17(cfg.t_end)
       << " dt=" << fmt_g17(run_cfg.dt) << " steps=" << res.trace.times.size() - 1
       << " snapshots=" << res.snapshots.size() << " final_trace="
       << fmt_g17(res.trace.traces.back()) << " trace_rate=" << trace_rate
       << " l2_rate=" << l2_rate;
    if (std::isfinite(l2_rate_value) && std::abs(l2_rate_value) < 1e-3) os << " LONG-LIVED";
    summaries[k] = os.str();
  });
  for (const auto& s : summaries) std::cout << s << '\n';
  return 0;
}

int cmd_resonance(const RunConfig& cfg, bool beta_given) {
  const auto params = make_params(cfg, beta_given);
  detail::require_class(params, ModelClass::Elliptic, "resonance");
  std::vector<std::string> lines;
  lines.push_back("nu,E_c,gamma_over_alpha_c,n_c,realizable");
  for (int nu = 0; nu <= cfg.nu_max; ++nu) {
    const auto cs = critical_state(nu, params);
    const double ec = resonance_energy(nu, params);
    // nearest critical ratio (gamma/alpha)_c = -2k - 1 - |nu|, natural k
    long k = std::lround((-params.gamma_over_alpha() - 1.0 - std::abs(nu)) / 2.0);
    if (k < 0) k = 0;
    const double gac = -2.0 * static_cast<double>(k) - 1.0 - std::abs(nu);
    lines.push_back(std::to_string(nu) + ',' + fmt_g17(ec) + ',' + fmt_g17(gac) + ',' +
                    fmt_g17(cs.n_c) + ',' + (cs.realizable ? "true" : "false"));
  }
  for (const auto& l : lines) std::cout << l << '\n';
  if (!cfg.out.empty()) {
    const fs::path dir = ensure_out_dir(cfg, "nhwigner_out");
    std::ofstream os(dir / "resonance.csv");
    for (const auto& l : lines) os << l << '\n';
  }
  return 0;
}

int cmd_bw(const RunConfig& cfg, bool beta_given, const std::vector<int>& ns,
           const std::vector<int>& nus, const std::string& parity) {
  const auto params = make_params(cfg, beta_given);
  if (cfg.samples < 2) throw std::invalid_argument("bw: --samples must be at least 2");
  const fs::path dir = ensure_out_dir(cfg, "nhwigner_out");

  struct Line {
    std::string tag;
    Lorentziand shape;
    ModeIndex mode;  // for the numerical column (elliptic only)
    bool elliptic;
  };
  std::vector<Line> requested;
  if (cfg.model == "elliptic") {
    for (const auto& rm : modes_from(cfg, ns, nus, parity))
      requested.push_back({"bw_n" + std::to_string(rm.m.n) + "_nu" + std::to_string(rm.m.nu),
                           energy_distribution(rm.m, params), rm.m, true});
  } else if (cfg.model == "hyperbolic") {
    const std::vector<int> nu_list = nus.empty() ? std::vector<int>{0} : nus;
    for (int nu : nu_list)
      requested.push_back({"bw_nu" + std::to_string(nu),
                           hyperbolic_energy_distribution(nu, params), ModeIndex{0, nu}, false});
    if (cfg.compare_numerical)
      throw std::invalid_argument("bw: the numerical-transform column exists for the elliptic model only");
  } else {
    throw std::invalid_argument("bw: --model must be elliptic or hyperbolic");
  }

  for (const auto& line : requested) {
    const double ups = line.shape.hwhm, loc = line.shape.location;
    double e0 = cfg.e_min, e1 = cfg.e_max;
    if (e0 == 0.0 && e1 == 0.0) {
      e0 = loc - 5.0 * ups;
      e1 = loc + 5.0 * ups;
    }
    if (!(e1 > e0)) throw std::invalid_argument("bw: empty energy window");
    std::ofstream os(dir / (line.tag + ".csv"));
    if (!os) throw std::runtime_error("cannot write " + line.tag + ".csv");
    os << "# hwhm: " << fmt_g17(ups) << " location: " << fmt_g17(loc) << '\n';
    os << (cfg.compare_numerical ? "E,f,f_numeric\n" : "E,f\n");
    for (long s = 0; s < cfg.samples; ++s) {
      const double e = e0 + (e1 - e0) * static_cast<double>(s) / static_cast<double>(cfg.samples - 1);
      os << fmt_g17(e) << ',' << fmt_g17(line.shape(e));
      if (cfg.compare_numerical) {
        const auto F = half_line_fourier_numeric(line.mode, params, e);
        os << ',' << fmt_g17(ups / M_PI * std::norm(F));
      }
      os << '\n';
    }
    std::cout << line.tag << ": hwhm=" << fmt_g17(ups) << " location=" << fmt_g17(loc)
              << " peak=" << fmt_g17(line.shape.peak_value()) << " file: "
              << (dir / (line.tag + ".csv")).string() << '\n';
  }
  return 0;
}

std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  try {
    const std::string config_path = find_config_path(argc, argv);
    if (!config_path.empty()) cfg = RunConfig::load(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{"phase-space simulator for dissipative quadratic oscillators"};
  app.require_subcommand(1);
  std::vector<int> ns, nus;
  std::string parity = "+";
  std::string config_dummy;

  auto add_common = [&](CLI::App* sub, bool with_grid) {
    sub->add_option("--config", config_dummy, "flat key=value config file; flags override it");
    sub->add_option("--model", cfg.model, "elliptic | hyperbolic | general");
    sub->add_option("--alpha", cfg.alpha, "momentum decay coefficient (> 0)");
    auto* beta = sub->add_option("--beta", cfg.beta, "position decay coefficient (general model)");
    sub->add_option("--gamma", cfg.gamma, "constant decay offset");
    sub->add_option("--out", cfg.out, "output directory");
    if (with_grid) {
      sub->add_option("--L", cfg.grid_l, "phase-space half-width");
      sub->add_option("--N", cfg.grid_n, "points per axis (>= 16)");
      sub->add_option("--format", cfg.format, "subset of csv-matrix,csv-series,pgm");
    }
    return beta;
  };
  auto add_modes = [&](CLI::App* sub) {
    sub->add_option("--n", ns, "radial numbers (repeat or comma list)")->delimiter(',');
    sub->add_option("--nu", nus, "angular numbers (repeat or comma list)")->delimiter(',');
    sub->add_option("--parity", parity, "+ | - | both");
    sub->add_option("--modes", cfg.modes, "explicit list n,nu,parity;... (used when --n/--nu absent)");
  };

  auto* sp = app.add_subcommand("spectrum", "decay-constant spectrum table");
  auto* sp_beta = add_common(sp, false);
  sp->add_option("--n-max", cfg.n_max, "largest radial number");
  sp->add_option("--nu-max", cfg.nu_max, "largest angular number");

  auto* ba = app.add_subcommand("basis", "render eigenbasis members");
  auto* ba_beta = add_common(ba, true);
  add_modes(ba);
  ba->add_option("--t", cfg.t, "sampling time");

  auto* pr = app.add_subcommand("project", "expand a sampled Wigner function over the basis");
  auto* pr_beta = add_common(pr, true);
  pr->add_option("--input", cfg.input, "csv-matrix file with the t = 0 function");
  pr->add_option("--n-max", cfg.n_max, "radial truncation");
  pr->add_option("--nu-max", cfg.nu_max, "angular truncation");

  auto* ev = app.add_subcommand("evolve", "integrate the phase-space evolution law");
  auto* ev_beta = add_common(ev, true);
  add_modes(ev);
  ev->add_option("--init", cfg.init, "mode | gaussian | coeffs");
  ev->add_option("--center-q", cfg.center_q, "gaussian center, position");
  ev->add_option("--center-p", cfg.center_p, "gaussian center, momentum");
  ev->add_option("--width", cfg.width, "gaussian width");
  ev->add_option("--coeffs", cfg.coeffs, "coefficient csv for --init coeffs");
  ev->add_option("--dt", cfg.dt, "time step (default: half the stability bound)");
  ev->add_option("--t-end", cfg.t_end, "final time");
  ev->add_option("--record-every", cfg.record_every, "steps between snapshots");
  ev->add_flag("--normalized", cfg.normalized, "evolve the unit-trace density");
  ev->add_option("--order", cfg.order, "spatial difference order, 2 or 4");
  ev->add_flag("--force-long", cfg.force_long, "lift the anti-diffusive horizon cap");

  auto* re = app.add_subcommand("resonance", "long-lived state conditions per nu");
  auto* re_beta = add_common(re, false);
  re->add_option("--nu-max", cfg.nu_max, "largest angular number");

  auto* bw = app.add_subcommand("bw", "Breit-Wigner energy distributions");
  auto* bw_beta = add_common(bw, false);
  add_modes(bw);
  bw->add_option("--e-min", cfg.e_min, "window start (default: location - 5 hwhm)");
  bw->add_option("--e-max", cfg.e_max, "window end (default: location + 5 hwhm)");
  bw->add_option("--samples", cfg.samples, "sample count");
  bw->add_flag("--compare-numerical", cfg.compare_numerical,
               "add a quadrature-transform column (elliptic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sp->parsed()) return cmd_spectrum(cfg, sp_beta->count() > 0);
    if (ba->parsed()) return cmd_basis(cfg, ba_beta->count() > 0, ns, nus, parity);
    if (pr->parsed()) { (void)pr_beta; return cmd_project(cfg); }
    if (ev->parsed()) return cmd_evolve(cfg, ev_beta->count() > 0, ns, nus, parity);
    if (re->parsed()) return cmd_resonance(cfg, re_beta->count() > 0);
    if (bw->parsed()) return cmd_bw(cfg, bw_beta->count() > 0, ns, nus, parity);
    std::cerr << "error: no command\n";
    return 2;
  } catch (const InstabilityError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
