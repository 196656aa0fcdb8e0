#pragma once

// Command-line front end. run_cli is the whole program minus argv handling,
// so tests can drive it with string vectors and captured streams.

#include <iosfwd>
#include <string>
#include <vector>

#include "trimcx/chain.hpp"

namespace trimcx {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitGuard = 3, kExitVerify = 4 };

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BettiDocument {
  BettiTable table;
  std::string field;
  std::size_t vars = 0;
};

/// {"betti":[{"i":..,"j":..,"v":..},...],"ring":{"field":..,"vars":..}}, keys
/// sorted, entries sorted by (i,j), counts written as exact integers.
std::string betti_to_json(const BettiDocument& doc);
/// Inverse of betti_to_json; big counts are read without rounding.
BettiDocument betti_from_json(const std::string& text);
std::string betti_to_csv(const BettiTable& t);

}  // namespace trimcx
