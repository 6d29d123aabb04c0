#pragma once

// Uniform sampling of reduced wavefunctions plus the finite-difference
// stencils and the CSV / JSON-lines round trip the verifier and the CLI
// share.  All numeric output uses 17 significant digits so files reload
// bit-exactly.

#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chfact/candidates.hpp"
#include "chfact/classify.hpp"
#include "chfact/errors.hpp"

namespace chfact {

struct GridSample {
  double q;
  cplx u;
};

struct WavefunctionGrid {
  double q_min = 0.0, q_max = 0.0;
  int n = 0;
  std::vector<GridSample> samples;
  double k = 1.0;
  SystemSpec system;
  // normalization convention: overall constant 1, global phase removed

  double spacing() const { return (q_max - q_min) / (n - 1); }
};

// sample u(q) on a uniform grid and strip the global phase at the point of
// largest |u|
inline WavefunctionGrid sample_candidate(const Candidate& c, double q_min,
                                         double q_max, int n) {
  if (n < 64) throw DomainError("sample_candidate: n >= 64 required");
  if (c.system.radial() && q_min <= 0.0) {
    throw DomainError("sample_candidate: radial grid must start at q > 0");
  }
  WavefunctionGrid g;
  g.q_min = q_min;
  g.q_max = q_max;
  g.n = n;
  g.k = c.k;
  g.system = c.system;
  g.samples.reserve(n);
  const double kz = c.scale_wavenumber();
  const double h = (q_max - q_min) / (n - 1);
  cplx peak = 0.0;
  for (int i = 0; i < n; ++i) {
    const double q = q_min + i * h;
    const double z = kz * q + c.alpha;
    const cplx u = wavefunction_reduced(c, z);
    if (std::abs(u) > std::abs(peak)) peak = u;
    g.samples.push_back({q, u});
  }
  if (std::abs(peak) > 0.0) {
    const cplx phase = std::exp(cplx(0.0, -std::arg(peak)));
    for (auto& s : g.samples) s.u *= phase;
  }
  return g;
}

// ---------------------------------------------------------------------------
// five-point central stencils; callers drop two points at each boundary

inline cplx stencil_d1(const std::vector<GridSample>& s, int i, double h) {
  return (s[i - 2].u - 8.0 * s[i - 1].u + 8.0 * s[i + 1].u - s[i + 2].u) / (12.0 * h);
}

inline cplx stencil_d2(const std::vector<GridSample>& s, int i, double h) {
  return (-s[i - 2].u + 16.0 * s[i - 1].u - 30.0 * s[i].u + 16.0 * s[i + 1].u -
          s[i + 2].u) /
         (12.0 * h * h);
}

// rough |u^(6)| bound from the 7-point sixth difference, for the stencil
// error model h^4 |u^(6)|/90
inline double estimate_sixth_derivative(const WavefunctionGrid& g) {
  const double h = g.spacing();
  const double h6 = std::pow(h, 6);
  double worst = 0.0;
  for (int i = 3; i + 3 < g.n; ++i) {
    const cplx d6 = (g.samples[i - 3].u - 6.0 * g.samples[i - 2].u +
                     15.0 * g.samples[i - 1].u - 20.0 * g.samples[i].u +
                     15.0 * g.samples[i + 1].u - 6.0 * g.samples[i + 2].u +
                     g.samples[i + 3].u) /
                    h6;
    worst = std::max(worst, std::abs(d6));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// serialization

inline std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct SampleRow {
  double q;
  cplx u;
  cplx W;
  double v_eff;
};

inline void write_samples_csv(std::ostream& os, const WavefunctionGrid& g,
                              const std::vector<SampleRow>& rows, int case_id) {
  os << "# chfact wavefunction samples\n";
  os << "# system=" << system_cli_name(g.system.name) << " case=" << case_id
     << " k=" << format_full(g.k) << " l=" << g.system.l << " m=" << g.system.m
     << " q_min=" << format_full(g.q_min) << " q_max=" << format_full(g.q_max)
     << " n=" << g.n << "\n";
  os << "# columns: q, Re u, Im u, Re W, Im W, V_eff\n";
  for (const auto& r : rows) {
    os << format_full(r.q) << ',' << format_full(r.u.real()) << ','
       << format_full(r.u.imag()) << ',' << format_full(r.W.real()) << ','
       << format_full(r.W.imag()) << ',' << format_full(r.v_eff) << '\n';
  }
}

inline void write_samples_jsonl(std::ostream& os, const WavefunctionGrid& g,
                                const std::vector<SampleRow>& rows, int case_id) {
  nlohmann::json head;
  head["type"] = "chfact.grid";
  head["system"] = system_cli_name(g.system.name);
  head["case"] = case_id;
  head["k"] = g.k;
  head["l"] = g.system.l;
  head["m"] = g.system.m;
  head["q_min"] = g.q_min;
  head["q_max"] = g.q_max;
  head["n"] = g.n;
  os << head.dump() << '\n';
  for (const auto& r : rows) {
    nlohmann::json j;
    j["q"] = r.q;
    j["re_u"] = r.u.real();
    j["im_u"] = r.u.imag();
    j["re_W"] = r.W.real();
    j["im_W"] = r.W.imag();
    j["v_eff"] = r.v_eff;
    os << j.dump() << '\n';
  }
}

// reload a JSONL sample file into a bare grid (u only); metadata beyond the
// grid geometry is left to the caller
inline WavefunctionGrid load_grid_jsonl(std::istream& is) {
  WavefunctionGrid g;
  std::string line;
  bool have_head = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    if (!have_head) {
      if (j.value("type", "") != "chfact.grid") {
        throw DomainError("load_grid_jsonl: missing chfact.grid header record");
      }
      g.k = j.at("k").get<double>();
      g.q_min = j.at("q_min").get<double>();
      g.q_max = j.at("q_max").get<double>();
      g.n = j.at("n").get<int>();
      have_head = true;
      continue;
    }
    g.samples.push_back({j.at("q").get<double>(),
                         cplx(j.at("re_u").get<double>(), j.at("im_u").get<double>())});
  }
  if (!have_head) throw DomainError("load_grid_jsonl: empty file");
  return g;
}

}  // namespace chfact
