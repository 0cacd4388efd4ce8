#include "sitcalc/diagnostics.hpp"

#include <sstream>

namespace sitcalc {

std::string format_diagnostic(const Diagnostic& d, bool color) {
  const char* label = d.severity == Diagnostic::Severity::Error     ? "error"
                      : d.severity == Diagnostic::Severity::Warning ? "warning"
                                                                    : "info";
  const char* tint = d.severity == Diagnostic::Severity::Error     ? "\033[31m"
                     : d.severity == Diagnostic::Severity::Warning ? "\033[33m"
                                                                   : "\033[36m";
  std::ostringstream os;
  if (d.loc.line > 0) os << d.loc.line << ":" << d.loc.col << ": ";
  if (color)
    os << tint << label << "\033[0m";
  else
    os << label;
  os << ": " << d.message;
  return os.str();
}

}  // namespace sitcalc
