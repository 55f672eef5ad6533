#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "catamaj/majorization.hpp"
#include "catamaj/thermo.hpp"

namespace catamaj {

enum ExitCode : int {
  kExitSufficient = 0,
  kExitRefuted = 2,
  kExitInconclusive = 3,
  kExitInputError = 4,
  kExitResourceCap = 5,
};

int exit_code_for(Status s);

/// Runs one subcommand. `args` excludes the program name. The problem file is
/// read from `in` when no path (or "-") is given. Reports go to `out` unless
/// --out is set; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

// CSV "p,norm_x,norm_y,renyi_x,renyi_y", ascending p, 12 significant digits.
void emit_scan(const ProbVector& x, const ProbVector& y, std::span<const Rational> grid, std::ostream& out);
// CSV "p,d_rho,d_sigma" of D_p(q || g) in bits.
void emit_divergence_scan(std::span<const Scalar> q_rho, std::span<const Scalar> q_sigma, std::span<const Scalar> g,
                          std::span<const Rational> grid, std::ostream& out);

}  // namespace catamaj
