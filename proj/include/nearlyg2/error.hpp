#pragma once

#include <stdexcept>
#include <string>

namespace nearlyg2 {

enum class ErrorKind {
  InvalidArgument,    // malformed call: bad degree, non-positive step, ...
  NotG2Structure,     // 3-form is not positive
  Degenerate,         // degenerate immersion / frame / field pair
  OutOfDomain,        // point or grid outside the regular region of a chart
  RequiresMinimal,    // formula only valid on minimal hypersurfaces
  Parse,              // malformed input document or selector
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nearlyg2
