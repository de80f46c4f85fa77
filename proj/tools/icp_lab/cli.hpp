#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "icp/gpt.hpp"

namespace icp::lab {

/// Runs icp_lab with `args` (without the program name). Returns the process
/// exit code: 0 success, 2 input error, 3 I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Resolves a measurement label for `theory`. Qubits additionally accept
/// "Z(phi)" and "Z(theta=phi)" for the X-Z plane observable at angle phi from Z.
Measurement resolve_measurement(const Theory& theory, const std::string& label);

/// Splits "X,Z(0.3)" at top-level commas.
std::vector<std::string> split_labels(const std::string& list);

}  // namespace icp::lab
