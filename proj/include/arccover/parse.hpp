#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "arccover/circle.hpp"
#include "arccover/dimension.hpp"
#include "arccover/gauge.hpp"
#include "arccover/sequence.hpp"

namespace arccover {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sequence grammar: "<family> key=value ...".
///   powerlaw a=<real> alpha=<real>
///   harmonic c=<real>
///   powerlog a=<real> alpha=<real> beta=<real>
///   geometric q=<real>
///   explicit <v1,v2,...> | explicit @<file>      (file: whitespace-separated)
/// Throws ParseError with a message naming the violated constraint.
LengthSequence parse_sequence(const std::string& spec);

/// Gauge grammar:
///   monomial s=<real>
///   monomiallog s=<real> beta=<real>
///   identity
///   table <r:g,r:g,...> | table @<file>          (file: "r g" per line)
GaugeFunction parse_gauge(const std::string& spec);

/// Window grammar: "<center>,<length>".
Arc parse_window(const std::string& spec);

/// Level-range grammar: "<jmin>:<jmax>".
LevelRange parse_levels(const std::string& spec);

/// Canonical textual forms (17 significant digits); parse(render(x)) == x.
std::string render_sequence(const LengthSequence& seq);
std::string render_gauge(const GaugeFunction& g);
std::string render_window(const Arc& window);
std::string render_levels(const LevelRange& levels);

/// Replaces (or appends) key=value in a family spec string; used by sweeps.
std::string override_spec_key(const std::string& spec, const std::string& key,
                              double value);

}  // namespace arccover
