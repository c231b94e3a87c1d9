#include "janssen/errors.hpp"
#include "janssen/precision.hpp"

namespace janssen {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::precision_exhausted: return "precision-exhausted";
    case Errc::order_too_large: return "order-too-large";
    case Errc::order_too_small: return "order-too-small";
    case Errc::domain_error: return "domain-error";
    case Errc::negative_argument: return "negative-argument";
    case Errc::hypothesis_violated: return "hypothesis-violated";
    case Errc::subdivision_limit_exceeded: return "subdivision-limit-exceeded";
    case Errc::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

void PrecisionConfig::validate() const {
  if (bits < 53) throw Error(Errc::invalid_argument, "precision bits must be at least 53");
  if (!(target_width > 0)) throw Error(Errc::invalid_argument, "target width must be positive");
}

}  // namespace janssen
