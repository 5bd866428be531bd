#include "rdc/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rdc {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void CurveSweep::add(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw std::invalid_argument("sweep samples must be finite");
  }
  if (!samples.empty() && x <= samples.back().x) {
    throw std::invalid_argument("sweep abscissae must be strictly increasing");
  }
  samples.push_back({x, y});
}

void CurveSweep::add_param(const std::string& key, double value) {
  params.push_back({key, format_number(value), true});
}

void CurveSweep::add_param(const std::string& key, const std::string& value) {
  params.push_back({key, value, false});
}

void write_csv(const CurveSweep& sweep, std::ostream& out) {
  out << "x,y\n";
  for (const auto& s : sweep.samples) {
    out << format_number(s.x) << ',' << format_number(s.y) << '\n';
  }
}

namespace {

// Keys and values here are flag names, numbers, file paths, and kind tags;
// escape the JSON specials and keep everything else verbatim.
std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace

void write_json(const CurveSweep& sweep, std::ostream& out) {
  out << "{\n  \"params\": {";
  for (std::size_t i = 0; i < sweep.params.size(); ++i) {
    const auto& p = sweep.params[i];
    out << (i == 0 ? "" : ",") << "\n    \"" << json_escape(p.key) << "\": ";
    if (p.numeric) {
      out << p.value;
    } else {
      out << '"' << json_escape(p.value) << '"';
    }
  }
  out << (sweep.params.empty() ? "" : "\n  ") << "},\n";
  out << "  \"meta\": {\n    \"kind\": \"" << json_escape(sweep.kind)
      << "\",\n    \"infeasible_samples\": " << sweep.infeasible_samples
      << "\n  },\n";
  out << "  \"samples\": [";
  for (std::size_t i = 0; i < sweep.samples.size(); ++i) {
    const auto& s = sweep.samples[i];
    out << (i == 0 ? "" : ",") << "\n    {\"x\": " << format_number(s.x)
        << ", \"y\": " << format_number(s.y) << "}";
  }
  out << (sweep.samples.empty() ? "" : "\n  ") << "]\n}\n";
}

}  // namespace rdc
