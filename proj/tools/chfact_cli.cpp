// chfact command line: enumerate candidate solutions, classify them against
// the published verdict tables, sample wavefunctions and superpotentials to
// CSV/JSONL, and run the numerical verification suite.
//
// Exit codes: 0 success, 1 verification mismatch, 2 bad configuration,
// 3 request for a rejected case.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "chfact/classify.hpp"
#include "chfact/grid.hpp"
#include "chfact/selftest.hpp"
#include "chfact/suite.hpp"

namespace {

using namespace chfact;

struct Options {
  std::string system;
  double k = 1.0;
  int l = 0;
  int m = 0;
  double C = 1.0;
  double Z = 1.0;
  double a0 = 1.0;
  double D = 1.0;
  double k0 = 1.0;
  double hbar = 1.0;
  double mass = 1.0;
  int case_id = -1;
  std::string grid = "";
  std::string output = "";
  std::string format = "csv";
  double tolerance = -1.0;
  bool all = false;
  bool chain = false;
  int jmax = 6;
  unsigned seed = 20240817;
};

SystemSpec build_spec(const Options& o) {
  SystemSpec s;
  if (o.system == "free1d") {
    s = SystemSpec::free1d();
  } else if (o.system == "free2d") {
    s = SystemSpec::free2d(o.m);
  } else if (o.system == "free3d") {
    s = SystemSpec::free3d(o.l);
  } else if (o.system == "linear") {
    s = SystemSpec::linear1d(o.C);
  } else if (o.system == "hydrogen") {
    s = SystemSpec::hydrogen(o.Z, o.a0, o.l);
  } else if (o.system == "morse") {
    s = SystemSpec::morse(o.D, o.k0);
  } else {
    std::ostringstream msg;
    msg << "unknown system '" << o.system << "'; valid names:";
    for (const auto& n : system_cli_names()) msg << ' ' << n;
    throw DomainError(msg.str());
  }
  s.hbar = o.hbar;
  s.mass = o.mass;
  return s;
}

std::optional<SystemName> parse_system_name(const std::string& s) {
  for (SystemName n : {SystemName::Free1D, SystemName::Free2D, SystemName::Free3D,
                       SystemName::Linear1D, SystemName::HydrogenContinuum,
                       SystemName::Morse1D}) {
    if (system_cli_name(n) == s) return n;
  }
  return std::nullopt;
}

std::string fmt_complex(cplx z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

const char* kind_name(CHFKind k) {
  switch (k) {
    case CHFKind::M: return "M";
    case CHFKind::U: return "U";
    case CHFKind::Mtilde: return "Mtilde";
  }
  return "?";
}

int cmd_enumerate(const Options& o) {
  const SystemSpec spec = build_spec(o);
  const auto cands = solve_parameters(spec, o.k);
  if (spec.name == SystemName::Morse1D) {
    std::cout << "# xi = " << spec.morse_xi() << ", eta = " << spec.morse_eta(o.k) << "\n";
  }
  std::printf("%-5s %-22s %-22s %-14s %-6s %-7s\n", "case", "a", "b", "c", "d", "F");
  for (const auto& c : cands) {
    std::printf("%-5d %-22s %-22s %-14s %-6g %-7s\n", c.case_id,
                fmt_complex(c.a).c_str(), fmt_complex(c.b).c_str(),
                fmt_complex(c.zm.c).c_str(), c.zm.d,
                c.series == SeriesKind::LogSecondB1 ? "log2nd" : kind_name(c.kind));
  }
  std::cout << cands.size() << " candidates\n";
  return 0;
}

int cmd_classify(const Options& o) {
  const SystemSpec spec = build_spec(o);
  const VerdictTable computed = classify_system(spec, o.k);
  const VerdictTable golden = expected_verdicts(spec);
  std::printf("%-5s %-28s %-28s\n", "case", "computed", "expected");
  for (size_t i = 0; i < computed.rows.size(); ++i) {
    const char* exp = i < golden.rows.size() ? to_string(golden.rows[i].status) : "-";
    std::printf("%-5d %-28s %-28s\n", computed.rows[i].case_id,
                to_string(computed.rows[i].status), exp);
  }
  const auto rep = compare_to_expected(computed, golden);
  if (!rep.ok()) {
    std::cout << rep.mismatches.size() << " mismatch(es) against the published table\n";
    return 1;
  }
  std::cout << "all " << computed.rows.size() << " verdicts match the published table\n";
  return 0;
}

int cmd_sample(const Options& o) {
  const SystemSpec spec = build_spec(o);
  if (o.case_id < 1) throw DomainError("sample: --case is required (1-based row id)");
  double qmin = 0.0, qmax = 0.0;
  int n = 0;
  {
    std::istringstream gs(o.grid);
    char c1 = 0, c2 = 0;
    if (!(gs >> qmin >> c1 >> qmax >> c2 >> n) || c1 != ':' || c2 != ':') {
      throw DomainError("sample: --grid must be qmin:qmax:n");
    }
    if (n < 64) throw DomainError("sample: grid n >= 64 required");
  }
  const auto cands = solve_parameters(spec, o.k);
  const Candidate* sel = nullptr;
  for (const auto& c : cands) {
    if (c.case_id == o.case_id) sel = &c;
  }
  if (!sel) throw DomainError("sample: no such case id for this system");

  const Verdict v = classify(*sel);
  if (v.status != VerdictStatus::Accepted) {
    std::cerr << "case " << o.case_id << " is rejected: " << to_string(v.status)
              << " (max |Im W| = " << v.max_im_W << ")\n";
    return 3;
  }

  const WavefunctionGrid g = sample_candidate(*sel, qmin, qmax, n);
  std::vector<SampleRow> rows;
  rows.reserve(g.n);
  const double kz = sel->scale_wavenumber();
  for (const auto& smp : g.samples) {
    SampleRow r;
    r.q = smp.q;
    r.u = smp.u;
    try {
      r.W = superpotential(*sel, kz * smp.q + sel->alpha);
    } catch (const PoleAtNode&) {
      r.W = {std::nan(""), std::nan("")};
    }
    r.v_eff = effective_potential(spec, smp.q);
    rows.push_back(r);
  }

  std::ofstream out(o.output);
  if (!out) throw DomainError("sample: cannot open output file " + o.output);
  if (o.format == "csv") {
    write_samples_csv(out, g, rows, o.case_id);
  } else if (o.format == "jsonl") {
    write_samples_jsonl(out, g, rows, o.case_id);
  } else {
    throw DomainError("sample: format must be csv or jsonl");
  }
  std::cout << "wrote " << rows.size() << " rows to " << o.output << "\n";
  return 0;
}

int cmd_verify(const Options& o) {
  SuiteOptions sopt;
  sopt.seed = o.seed;
  sopt.jmax = o.jmax;
  sopt.chain = o.chain || o.all || o.system.empty();
  sopt.tolerance_override = o.tolerance;
  if (!o.all && !o.system.empty()) {
    const auto name = parse_system_name(o.system);
    if (!name) {
      std::ostringstream msg;
      msg << "unknown system '" << o.system << "'; valid names:";
      for (const auto& n : system_cli_names()) msg << ' ' << n;
      throw DomainError(msg.str());
    }
    sopt.systems = {*name};
    sopt.chain = o.chain;
  }
  const SuiteResult res = run_suite(sopt);
  write_records_table(std::cout, res.records);
  if (!o.output.empty()) {
    std::ofstream out(o.output);
    if (!out) throw DomainError("verify: cannot open report file " + o.output);
    write_records_jsonl(out, res.records);
    std::cout << "report: " << o.output << " (" << res.records.size() << " records)\n";
  }
  int failures = 0;
  for (const auto& r : res.records) failures += r.passed ? 0 : 1;
  std::cout << (res.all_passed ? "PASS" : "FAIL") << ": " << res.records.size()
            << " checks, " << failures << " failures\n";
  return res.all_passed ? 0 : 1;
}

int cmd_kernel_selftest() {
  int failures = 0;
  for (const auto& rep : run_identity_battery()) {
    std::printf("%s %-28s worst %.3e tol %.0e (%d samples)\n",
                rep.passed ? "PASS" : "FAIL", rep.name.c_str(), rep.worst,
                rep.tolerance, rep.samples);
    failures += rep.passed ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuum factorization with confluent hypergeometric functions"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* cmd) {
    cmd->add_option("system", o.system, "system name (free1d free2d free3d linear hydrogen morse)");
    cmd->add_option("--k", o.k, "wavenumber labelling the energy E = (hbar k)^2 / 2M");
    cmd->add_option("--l", o.l, "angular momentum (free3d, hydrogen)");
    cmd->add_option("--m", o.m, "magnetic quantum number (free2d)");
    cmd->add_option("--C", o.C, "linear potential slope");
    cmd->add_option("--Z", o.Z, "hydrogen charge");
    cmd->add_option("--a0", o.a0, "hydrogen reduced Bohr radius");
    cmd->add_option("--D", o.D, "Morse well depth");
    cmd->add_option("--k0", o.k0, "Morse decay wavenumber");
    cmd->add_option("--hbar", o.hbar, "hbar (default 1)");
    cmd->add_option("--mass", o.mass, "mass (default 1)");
  };

  auto* enumerate = app.add_subcommand("enumerate", "print the candidate table for a system");
  add_common(enumerate);

  auto* classify_cmd = app.add_subcommand("classify", "classify candidates and diff against the published table");
  add_common(classify_cmd);

  auto* sample = app.add_subcommand("sample", "sample an accepted wavefunction and superpotential to a file");
  add_common(sample);
  sample->add_option("--case", o.case_id, "candidate case id (1-based)")->required();
  sample->add_option("--grid", o.grid, "qmin:qmax:n")->required();
  sample->add_option("-o,--output", o.output, "output path")->required();
  sample->add_option("--format", o.format, "csv (default) or jsonl");

  auto* verify = app.add_subcommand("verify", "run the numerical verification suite");
  add_common(verify);
  verify->add_flag("--all", o.all, "run every system (default when no system is given)");
  verify->add_flag("--chain", o.chain, "include the 1D factorization-chain block");
  verify->add_option("--jmax", o.jmax, "highest chain excitation (<= 6)");
  verify->add_option("--tolerance", o.tolerance, "override every check tolerance");
  verify->add_option("--seed", o.seed, "seed for the randomized k draws");
  verify->add_option("-o,--output", o.output, "JSONL report path");

  auto* selftest = app.add_subcommand("kernel-selftest", "run the kernel identity battery");
  selftest->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (enumerate->parsed()) return cmd_enumerate(o);
    if (classify_cmd->parsed()) return cmd_classify(o);
    if (sample->parsed()) return cmd_sample(o);
    if (verify->parsed()) return cmd_verify(o);
    if (selftest->parsed()) return cmd_kernel_selftest();
  } catch (const chfact::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
