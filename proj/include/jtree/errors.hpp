#pragma once

#include <stdexcept>
#include <string>

namespace jtree {

enum class Errc {
  cycle,
  parent_ge_child,
  duplicate_node,
  unknown_node,
  not_comparable,
  window_too_short,
  p_out_of_range,
  too_large,
  invalid_certificate,
  params_invalid,
  branch_too_short,
  segments_comparable,
  too_many_branches,
  unsupported_combination,
  not_normalized,
  schema,
};

const char* errc_name(Errc c);

/// Library-wide error type; `code()` identifies the contract violation.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace jtree
