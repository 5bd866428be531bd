// CurveSweep: an ordered list of (x, y) samples plus the generating
// parameters, with CSV and JSON emitters. Both emitters print numbers with
// %.15g so the two formats carry identical digits and reruns are
// byte-identical.
#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace rdc {

struct CurveSweep {
  struct Sample {
    double x = 0.0;
    double y = 0.0;
  };
  struct Param {
    std::string key;
    std::string value;
    bool numeric = false;  // emitted unquoted in JSON when true
  };

  std::string kind;  // rdc | drc | dc | universal-lb | universal-ub
  std::vector<Param> params;
  std::vector<Sample> samples;
  std::size_t infeasible_samples = 0;

  // Appends a sample; x must be finite and strictly greater than the last
  // sample's x, y must be finite.
  void add(double x, double y);
  void add_param(const std::string& key, double value);
  void add_param(const std::string& key, const std::string& value);
};

// %.15g rendering used for every number in both output formats.
std::string format_number(double v);

// Header line "x,y", one sample per row.
void write_csv(const CurveSweep& sweep, std::ostream& out);

// {"params": {...}, "meta": {"kind": ..., "infeasible_samples": n},
//  "samples": [{"x": ..., "y": ...}, ...]}
void write_json(const CurveSweep& sweep, std::ostream& out);

}  // namespace rdc
