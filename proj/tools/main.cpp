// Command-line front end: validate circuit files, run them exactly or with
// Poisson-sampled counts, scan delay lines, and measure the Bell parameter.
//
// Exit codes: 0 success, 1 domain/validation error, 2 usage or I/O error.
// CSV goes to --out (default stdout); diagnostics go to stderr.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "biphoton/biphoton.hpp"

namespace {

using namespace biphoton;

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct CommonOpts {
  std::string file;
  std::string out;
  std::string mode = "exact";
  std::optional<uint64_t> seed;
  double rate = 12000.0;
  double duration = 3.0;

  bool sampled() const { return mode == "sampled"; }
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("file", o.file, "circuit file (.qopt)")->required();
  sub->add_option("--out", o.out, "output path (default stdout)");
  sub->add_option("--mode", o.mode, "exact|sampled")
      ->check(CLI::IsMember({"exact", "sampled"}));
  sub->add_option("--seed", o.seed, "RNG seed (required for sampled mode)");
  sub->add_option("--rate", o.rate, "photon-pair rate in 1/s");
  sub->add_option("--duration", o.duration, "integration time per run in s");
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_diagnostics(const std::vector<Diagnostic>& ds) {
  for (const Diagnostic& d : ds) {
    std::cerr << d.line << ":"
              << (d.severity == Diagnostic::Severity::kError ? "error" : "warning") << ":"
              << d.message;
    if (!d.token.empty()) std::cerr << " [" << d.token << "]";
    std::cerr << "\n";
  }
}

/// Load + parse + validate; nullopt means the caller should exit with `rc`.
std::optional<ElementProgram> load_program(const std::string& path, int& rc) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "0:error:cannot read file '" << path << "'\n";
    rc = kUsageError;
    return std::nullopt;
  }
  ParseResult pr = parse_circuit(*text);
  std::vector<Diagnostic> diags = pr.diagnostics;
  if (pr.ok()) {
    auto vd = validate(pr.circuit);
    diags.insert(diags.end(), vd.begin(), vd.end());
  }
  print_diagnostics(diags);
  if (has_errors(diags)) {
    rc = kDomainError;
    return std::nullopt;
  }
  return compile(pr.circuit);
}

int write_output(const CommonOpts& o, const std::string& payload) {
  if (o.out.empty()) {
    std::cout << payload;
    return kOk;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) {
    std::cerr << "0:error:cannot write file '" << o.out << "'\n";
    return kUsageError;
  }
  out << payload;
  return kOk;
}

int cmd_validate(const std::string& path) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "0:error:cannot read file '" << path << "'\n";
    return kUsageError;
  }
  ParseResult pr = parse_circuit(*text);
  std::vector<Diagnostic> diags = pr.diagnostics;
  if (pr.ok()) {
    auto vd = validate(pr.circuit);
    diags.insert(diags.end(), vd.begin(), vd.end());
  }
  print_diagnostics(diags);
  return has_errors(diags) ? kDomainError : kOk;
}

int cmd_run(const CommonOpts& o) {
  if (o.sampled() && !o.seed) {
    std::cerr << "0:error:sampled mode requires --seed\n";
    return kUsageError;
  }
  int rc = kOk;
  auto program = load_program(o.file, rc);
  if (!program) return rc;
  CoincidenceTable t = run_exact(*program);
  if (o.sampled()) t = sample_counts(t, o.rate, o.duration, *o.seed);
  std::ostringstream csv;
  write_table_csv(csv, t);
  return write_output(o, csv.str());
}

struct ScanOpts {
  std::string element;
  double from = 0.0, to = 0.0, step = 0.0;
  std::string kind = "hom";
};

int cmd_scan(const CommonOpts& o, const ScanOpts& so) {
  if (!(so.step > 0.0) || !(so.to >= so.from)) {
    std::cerr << "0:error:scan needs --step > 0 and --to >= --from\n";
    return kUsageError;
  }
  if (o.sampled() && !o.seed) {
    std::cerr << "0:error:sampled mode requires --seed\n";
    return kUsageError;
  }
  int rc = kOk;
  auto program = load_program(o.file, rc);
  if (!program) return rc;

  ScanOptions opts;
  opts.mode = o.sampled() ? RunMode::kSampled : RunMode::kExact;
  opts.pair_rate_hz = o.rate;
  opts.duration_s = o.duration;
  opts.seed = o.seed;

  ScanCurve curve;
  try {
    curve = so.kind == "hom" ? hom_scan(*program, so.element, uniform_grid(so.from, so.to, so.step), opts)
                             : fringe_scan(*program, so.element, uniform_grid(so.from, so.to, so.step), opts);
  } catch (const std::exception& e) {
    std::cerr << "0:error:" << e.what() << "\n";
    return kDomainError;
  }

  // visibility: dip form on a same-site analyzer pair, fringe form on a
  // cross-site pair
  auto same_site = [&](const std::pair<std::string, std::string>& pr) {
    auto m1 = program->detector_mode(pr.first);
    auto m2 = program->detector_mode(pr.second);
    return m1 && m2 && *m1 == *m2;
  };
  std::optional<double> visibility;
  try {
    for (const auto& pr : program->coincidence_pairs) {
      if (so.kind == "hom" && same_site(pr)) {
        visibility = dip_visibility(curve, pr.first, pr.second);
        break;
      }
      if (so.kind == "fringe" && !same_site(pr)) {
        const double period = program->photons.front().packet.center_wavelength_nm /
                              kSpeedOfLightNmPerFs;
        visibility = fringe_visibility(curve, pr.first, pr.second, period);
        break;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "0:error:" << e.what() << "\n";
    return kDomainError;
  }

  std::ostringstream csv;
  write_scan_csv(csv, curve);
  if (visibility) csv << "# visibility=" << format_double(*visibility) << "\n";
  return write_output(o, csv.str());
}

int cmd_chsh(const CommonOpts& o, const std::string& angles_arg) {
  if (o.sampled() && !o.seed) {
    std::cerr << "0:error:sampled mode requires --seed\n";
    return kUsageError;
  }
  std::array<double, 4> angles{};
  {
    std::istringstream ss(angles_arg);
    std::string tok;
    size_t i = 0;
    while (std::getline(ss, tok, ',') && i < 4) {
      try {
        angles[i++] = std::stod(tok);
      } catch (...) {
        i = 99;
        break;
      }
    }
    if (i != 4) {
      std::cerr << "0:error:--angles needs four comma-separated values\n";
      return kUsageError;
    }
  }
  int rc = kOk;
  auto program = load_program(o.file, rc);
  if (!program) return rc;

  ChshOptions opts;
  opts.mode = o.sampled() ? RunMode::kSampled : RunMode::kExact;
  opts.pair_rate_hz = o.rate;
  opts.duration_s = o.duration;
  opts.seed = o.seed;
  CHSHResult r;
  try {
    r = chsh(*program, angles[0], angles[1], angles[2], angles[3], opts);
  } catch (const std::exception& e) {
    std::cerr << "0:error:" << e.what() << "\n";
    return kDomainError;
  }
  std::ostringstream csv;
  write_chsh_csv(csv, r);
  return write_output(o, csv.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-photon linear-optics interferometry simulator"};
  app.require_subcommand(1);

  std::string validate_file;
  CLI::App* v = app.add_subcommand("validate", "parse and check a circuit file");
  v->add_option("file", validate_file, "circuit file (.qopt)")->required();

  CommonOpts run_opts;
  CLI::App* r = app.add_subcommand("run", "exact distribution or sampled counts of one run");
  add_common(r, run_opts);

  CommonOpts scan_common;
  ScanOpts scan_opts;
  CLI::App* s = app.add_subcommand("scan", "sweep a delay line and record the channels");
  add_common(s, scan_common);
  s->add_option("--element", scan_opts.element, "delay element to sweep")->required();
  s->add_option("--from", scan_opts.from, "first delay (fs)")->required();
  s->add_option("--to", scan_opts.to, "last delay (fs)")->required();
  s->add_option("--step", scan_opts.step, "grid step (fs)")->required();
  s->add_option("--kind", scan_opts.kind, "hom|fringe")
      ->check(CLI::IsMember({"hom", "fringe"}));

  CommonOpts chsh_opts;
  std::string angles = "0,45,22.5,67.5";
  CLI::App* c = app.add_subcommand("chsh", "Bell test at four analyzer settings");
  add_common(c, chsh_opts);
  c->add_option("--angles", angles, "thetaA,thetaA',thetaB,thetaB' in degrees");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (v->parsed()) return cmd_validate(validate_file);
    if (r->parsed()) return cmd_run(run_opts);
    if (s->parsed()) return cmd_scan(scan_common, scan_opts);
    if (c->parsed()) return cmd_chsh(chsh_opts, angles);
  } catch (const std::exception& e) {
    std::cerr << "0:error:" << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}
