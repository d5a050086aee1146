#pragma once

#include <stdexcept>
#include <string>

namespace fringescan {

// Process exit codes double as error identities: every documented failure
// path maps to a distinct nonzero code.
enum class errc : int {
  ok = 0,
  bad_config = 10,
  read_failure = 11,
  write_failure = 12,
  format_error = 13,
  dimension_mismatch = 14,
  insufficient_samples = 15,
  degenerate_schedule = 16,
  geometry_error = 17,
  internal = 19,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace fringescan
