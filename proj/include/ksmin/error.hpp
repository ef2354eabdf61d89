#pragma once

#include <stdexcept>
#include <string>

namespace ksmin {

enum class errc {
  syntax,
  unknown_state,
  unknown_proposition,
  duplicate_state,
  non_total,
  empty_init,
  ap_mismatch,
  dangling_reference,
  label_constraint,
  restriction,
  distinctness,
  arity_mismatch,
  size_cap,
  partition_not_stable,
  name_collision,
  internal,
};

/// All library errors carry a machine-checkable code plus a human message.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace ksmin
