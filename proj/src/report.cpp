#include "suq2/report.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <system_error>

namespace suq2 {

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

std::string param_json(const ParamValue& v) {
  if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
  return quoted(std::get<std::string>(v));
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : "null"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_json(const VerificationReport& report) {
  std::string out = "{\"command\":" + quoted(report.command) + ",\"params\":{";
  for (std::size_t k = 0; k < report.params.size(); ++k) {
    if (k) out += ',';
    out += quoted(report.params[k].first) + ':' + param_json(report.params[k].second);
  }
  out += "},\"items\":[";
  for (std::size_t k = 0; k < report.items.size(); ++k) {
    const auto& it = report.items[k];
    if (k) out += ',';
    out += "{\"name\":" + quoted(it.name) + ",\"value\":" + format_number(it.value) +
           ",\"bound\":" + optional_number(it.bound) + ",\"pass\":" + (it.pass ? "true" : "false") +
           ",\"witness\":" + (it.witness ? quoted(*it.witness) : "null") + '}';
  }
  out += "],\"pass\":";
  out += report.pass() ? "true" : "false";
  out += ",\"max_residual\":" + optional_number(report.max_residual);
  out += ",\"elapsed_ms\":" + optional_number(report.elapsed_ms) + "}\n";
  return out;
}

std::string to_csv(const VerificationReport& report) {
  std::string out = "index,value,bound,pass\n";
  for (const auto& it : report.items) {
    const std::string value = std::isfinite(it.value) ? format_number(it.value) : "";
    const std::string bound = it.bound && std::isfinite(*it.bound) ? format_number(*it.bound) : "";
    out += csv_field(it.name) + ',' + value + ',' + bound + ',' + (it.pass ? "true" : "false") + '\n';
  }
  return out;
}

}  // namespace suq2
