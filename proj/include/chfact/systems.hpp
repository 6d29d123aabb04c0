#pragma once

// The six solvable systems: potentials, coordinate bookkeeping, effective
// potentials, the energy relation, and the expected verdict tables the
// classifier must reproduce.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "chfact/errors.hpp"
#include "chfact/gamma.hpp"

namespace chfact {

enum class SystemName { Free1D, Free2D, Free3D, Linear1D, HydrogenContinuum, Morse1D };
enum class Coordinate { Cartesian, PlanePolar, Spherical };

inline constexpr int kMaxAngularMomentum = 20;  // keeps gamma magnitudes in the kernel's box

struct SystemSpec {
  SystemName name = SystemName::Free1D;
  Coordinate coordinate = Coordinate::Cartesian;
  int l = 0;  // spherical
  int m = 0;  // plane polar
  double C = 0.0;                     // linear slope, energy/length
  double Z = 0.0, a0_tilde = 0.0;     // hydrogen charge and reduced Bohr radius
  double D = 0.0, k0 = 0.0;           // Morse depth and decay wavenumber
  double mass = 1.0;
  double hbar = 1.0;

  static SystemSpec free1d() { return {}; }

  static SystemSpec free2d(int m) {
    if (std::abs(m) > kMaxAngularMomentum) throw DomainError("free2d: |m| out of catalog range");
    SystemSpec s;
    s.name = SystemName::Free2D;
    s.coordinate = Coordinate::PlanePolar;
    s.m = m;
    return s;
  }

  static SystemSpec free3d(int l) {
    if (l < 0 || l > kMaxAngularMomentum) throw DomainError("free3d: l out of catalog range");
    SystemSpec s;
    s.name = SystemName::Free3D;
    s.coordinate = Coordinate::Spherical;
    s.l = l;
    return s;
  }

  static SystemSpec linear1d(double C) {
    if (C <= 0.0) throw DomainError("linear1d: slope C must be positive");
    SystemSpec s;
    s.name = SystemName::Linear1D;
    s.C = C;
    return s;
  }

  static SystemSpec hydrogen(double Z, double a0_tilde, int l) {
    if (Z <= 0.0 || a0_tilde <= 0.0) throw DomainError("hydrogen: Z and a0 must be positive");
    if (l < 0 || l > kMaxAngularMomentum) throw DomainError("hydrogen: l out of catalog range");
    SystemSpec s;
    s.name = SystemName::HydrogenContinuum;
    s.coordinate = Coordinate::Spherical;
    s.Z = Z;
    s.a0_tilde = a0_tilde;
    s.l = l;
    return s;
  }

  static SystemSpec morse(double D, double k0) {
    if (D <= 0.0 || k0 <= 0.0) throw DomainError("morse: D and k0 must be positive");
    SystemSpec s;
    s.name = SystemName::Morse1D;
    s.coordinate = Coordinate::Cartesian;
    s.D = D;
    s.k0 = k0;
    return s;
  }

  bool radial() const { return coordinate != Coordinate::Cartesian; }

  // dz/dq: the energy wavenumber k for the free and Coulomb problems, the
  // potential-derived k0 for the linear and Morse ones
  double scale_wavenumber(double k) const {
    switch (name) {
      case SystemName::Linear1D:
        return std::cbrt(2.0 * mass * C / (hbar * hbar));
      case SystemName::Morse1D:
        return k0;
      default:
        return k;
    }
  }

  // z = kz*q + alpha
  double frame_alpha(double k) const {
    if (name == SystemName::Linear1D) {
      const double kz = scale_wavenumber(k);
      const double Ek = hbar * hbar * k * k / (2.0 * mass);
      return -kz * Ek / C;
    }
    return 0.0;
  }

  // dimensionless Morse groups
  double morse_xi() const { return std::sqrt(2.0 * mass * D) / (hbar * k0); }
  double morse_eta(double k) const { return k / k0; }
  // dimensionless Coulomb coupling Z/(k a0) in the kernel parameters
  double coulomb_coupling(double k) const { return Z / (k * a0_tilde); }
};

inline double effective_potential(const SystemSpec& s, double q) {
  const double h2m = s.hbar * s.hbar / (2.0 * s.mass);
  switch (s.name) {
    case SystemName::Free1D:
      return 0.0;
    case SystemName::Free2D: {
      if (q <= 0.0) throw DomainError("effective_potential: rho <= 0");
      const double m2 = static_cast<double>(s.m) * s.m;
      return h2m * (m2 - 0.25) / (q * q);
    }
    case SystemName::Free3D: {
      if (q <= 0.0) throw DomainError("effective_potential: r <= 0");
      const double ll1 = static_cast<double>(s.l) * (s.l + 1);
      return h2m * ll1 / (q * q);
    }
    case SystemName::Linear1D:
      return s.C * q;
    case SystemName::HydrogenContinuum: {
      if (q <= 0.0) throw DomainError("effective_potential: r <= 0");
      const double ll1 = static_cast<double>(s.l) * (s.l + 1);
      // e^2 = hbar^2/(M a0) so V = -Z hbar^2/(M a0 r)
      return h2m * ll1 / (q * q) - 2.0 * h2m * s.Z / (s.a0_tilde * q);
    }
    case SystemName::Morse1D:
      return s.D * (std::exp(-2.0 * s.k0 * q) - 2.0 * std::exp(-s.k0 * q));
  }
  throw Error("unreachable");
}

inline double energy(const SystemSpec& s, double k) {
  if (k < 0.0 || (k == 0.0 && s.name != SystemName::Morse1D)) {
    throw DomainError("energy: k must be positive (k = 0 only for Morse)");
  }
  return s.hbar * s.hbar * k * k / (2.0 * s.mass);
}

// E = 0 is the special zero-energy Morse case with its own solution set
inline bool zero_energy_special_case(const SystemSpec& s, double k) {
  return s.name == SystemName::Morse1D && k == 0.0;
}

enum class VerdictStatus {
  Accepted,
  RejectedImaginaryW,
  RejectedDivergesAtOrigin,
  RejectedDivergesAtInfinity,
};

inline const char* to_string(VerdictStatus v) {
  switch (v) {
    case VerdictStatus::Accepted: return "Accepted";
    case VerdictStatus::RejectedImaginaryW: return "RejectedImaginaryW";
    case VerdictStatus::RejectedDivergesAtOrigin: return "RejectedDivergesAtOrigin";
    case VerdictStatus::RejectedDivergesAtInfinity: return "RejectedDivergesAtInfinity";
  }
  return "?";
}

struct VerdictRow {
  int case_id = 0;
  VerdictStatus status = VerdictStatus::Accepted;
};

struct VerdictTable {
  SystemName system;
  std::vector<VerdictRow> rows;
};

// the published verdict per table row, golden data
inline VerdictTable expected_verdicts(const SystemSpec& s) {
  using V = VerdictStatus;
  switch (s.name) {
    case SystemName::Free1D:
      return {s.name,
              {{1, V::Accepted}, {2, V::RejectedImaginaryW}, {3, V::Accepted},
               {4, V::RejectedImaginaryW}}};
    case SystemName::Free2D:
      return {s.name,
              {{1, V::Accepted}, {2, V::RejectedImaginaryW}, {3, V::Accepted},
               {4, V::RejectedImaginaryW}}};
    case SystemName::Free3D:
      return {s.name,
              {{1, V::Accepted}, {2, V::RejectedDivergesAtOrigin}, {3, V::Accepted},
               {4, V::RejectedDivergesAtOrigin}}};
    case SystemName::Linear1D:
      return {s.name,
              {{1, V::RejectedDivergesAtInfinity}, {2, V::RejectedDivergesAtInfinity},
               {3, V::Accepted}, {4, V::RejectedDivergesAtInfinity},
               {5, V::RejectedDivergesAtInfinity}, {6, V::RejectedDivergesAtInfinity},
               {7, V::Accepted}, {8, V::RejectedDivergesAtInfinity}}};
    case SystemName::HydrogenContinuum:
      return {s.name,
              {{1, V::Accepted}, {2, V::RejectedDivergesAtOrigin},
               {3, V::Accepted}, {4, V::RejectedDivergesAtOrigin},
               {5, V::RejectedDivergesAtOrigin}, {6, V::RejectedDivergesAtOrigin},
               {7, V::RejectedDivergesAtOrigin}, {8, V::RejectedDivergesAtOrigin}}};
    case SystemName::Morse1D:
      return {s.name,
              {{1, V::RejectedDivergesAtInfinity}, {2, V::Accepted},
               {3, V::RejectedDivergesAtInfinity}, {4, V::RejectedDivergesAtInfinity},
               {5, V::RejectedDivergesAtInfinity}, {6, V::Accepted},
               {7, V::RejectedDivergesAtInfinity}, {8, V::RejectedDivergesAtInfinity}}};
  }
  throw UnsupportedSystem("expected_verdicts: unknown system");
}

// Which defect a table cites when several are present at once.  The free
// 1D/2D rows are quoted against the superpotential, the radial 3D/Coulomb
// rows against the origin behavior, the Cartesian potentials against the
// boundary growth.  Presentation data, kept next to the tables themselves.
inline std::array<VerdictStatus, 3> rejection_citation_order(SystemName n) {
  using V = VerdictStatus;
  switch (n) {
    case SystemName::Free1D:
    case SystemName::Free2D:
      return {V::RejectedImaginaryW, V::RejectedDivergesAtOrigin,
              V::RejectedDivergesAtInfinity};
    case SystemName::Free3D:
    case SystemName::HydrogenContinuum:
      return {V::RejectedDivergesAtOrigin, V::RejectedImaginaryW,
              V::RejectedDivergesAtInfinity};
    case SystemName::Linear1D:
    case SystemName::Morse1D:
      return {V::RejectedDivergesAtInfinity, V::RejectedImaginaryW,
              V::RejectedDivergesAtOrigin};
  }
  throw UnsupportedSystem("rejection_citation_order");
}

inline std::string system_cli_name(SystemName n) {
  switch (n) {
    case SystemName::Free1D: return "free1d";
    case SystemName::Free2D: return "free2d";
    case SystemName::Free3D: return "free3d";
    case SystemName::Linear1D: return "linear";
    case SystemName::HydrogenContinuum: return "hydrogen";
    case SystemName::Morse1D: return "morse";
  }
  return "?";
}

inline const std::vector<std::string>& system_cli_names() {
  static const std::vector<std::string> names = {"free1d", "free2d", "free3d",
                                                 "linear", "hydrogen", "morse"};
  return names;
}

}  // namespace chfact
