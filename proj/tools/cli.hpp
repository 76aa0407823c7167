#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dgl/report.hpp"

namespace dgl::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

/// Entry point behind the dgl binary. argv[0] is the program name.
/// 0: success (and every certificate passed), 1: a certificate failed or a
/// numerical routine gave up, 2: usage error (one line on `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "lo:hi:step" with inclusive hi, "a,b,c", or a single value. Decimal
/// literals are handled as scaled integers so membership is exact.
/// Throws std::invalid_argument.
std::vector<double> parse_grid(std::string_view text);

void write_reports_json(std::ostream& os, const std::vector<CertificateReport>& reports);
void write_reports_csv(std::ostream& os, const std::vector<CertificateReport>& reports);

/// Writes `content` next to `path` and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace dgl::cli
