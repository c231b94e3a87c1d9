#pragma once

#include <stdexcept>
#include <string>

namespace janssen {

enum class Errc {
  precision_exhausted,
  order_too_large,
  order_too_small,
  domain_error,
  negative_argument,
  hypothesis_violated,
  subdivision_limit_exceeded,
  invalid_argument,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace janssen
