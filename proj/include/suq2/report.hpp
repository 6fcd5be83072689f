#pragma once

// Verification reports and their JSON / CSV serialization. Output is
// byte-deterministic: fixed field order, 17 significant digits, no locale.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace suq2 {

using ParamValue = std::variant<long long, double, std::string>;

struct ReportItem {
  std::string name;
  double value = 0.0;
  std::optional<double> bound;
  bool pass = false;
  std::optional<std::string> witness;
};

struct VerificationReport {
  std::string command;
  std::vector<std::pair<std::string, ParamValue>> params;
  std::vector<ReportItem> items;
  std::optional<double> max_residual;
  std::optional<double> elapsed_ms;

  bool pass() const noexcept {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
};

/// printf-style %.17g without locale; "null" for NaN and infinities.
std::string format_number(double v);

std::string to_json(const VerificationReport& report);

/// Header "index,value,bound,pass", one row per item; missing bounds are empty fields.
std::string to_csv(const VerificationReport& report);

}  // namespace suq2
