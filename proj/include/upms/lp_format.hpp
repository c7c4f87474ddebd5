#pragma once

// CPLEX-style LP text files and `name value` solution files.

#include <stdexcept>
#include <string>

#include "upms/model.hpp"

namespace upms {

class LpParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every variable is listed in the Bounds section in declaration order, so
/// parse_lp(export_lp(m)) reproduces m term for term.
std::string export_lp(const ModelIR& model);

/// Reads the LP subset written by export_lp plus common variations
/// (implicit bounds, `free`, one-sided bounds, comments, wrapped lines).
/// Variables are ordered by first mention in Bounds, then by first mention
/// elsewhere.
ModelIR parse_lp(const std::string& text);

struct ImportedSolution {
  Assignment values;
  /// Binaries whose value was more than 1e-6 away from 0 or 1 before
  /// rounding.
  int fractional_binaries = 0;
  double max_binary_deviation = 0.0;
};

/// Parses `name value` lines; blank lines and lines starting with '#' are
/// skipped. Binaries are rounded at 0.5. Throws LpParseError on unknown
/// names or malformed lines, naming the 1-based line number.
ImportedSolution import_solution(const std::string& text,
                                 const ModelIR& model);

/// `name value` lines for the nonzero entries, in model variable order.
std::string write_solution(const ModelIR& model, const Assignment& values);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

}  // namespace upms
