#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "hardy/instance.hpp"

namespace hardy {

/// Malformed or invalid instance document. what() names the offending
/// field, or the line and column for JSON syntax errors.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance document:
///   {"window": {"start": 0, "length": 3}, "p": 1, "q": "inf",
///    "v": [...], "w": [...],
///    "kernel": {"type": "constant", "c": 1}}
/// Kernel types: constant {c}, tabulated {rows, row i holding U(i,n) for
/// n >= i}, sup {u}, row {u}, power {base, r}.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

/// Canonical document for I; parse_instance(serialize(I)) reproduces I.
std::string serialize(const Instance& I);

}  // namespace hardy
