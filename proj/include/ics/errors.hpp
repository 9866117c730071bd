#pragma once

#include <stdexcept>
#include <string>

namespace ics {

#define ICS_ERROR(Name)                                              \
  struct Name : std::runtime_error {                                 \
    explicit Name(const std::string& what) : std::runtime_error(what) {} \
  }

ICS_ERROR(AppendBeyondComplete);
ICS_ERROR(DepthExceeded);
ICS_ERROR(LengthMismatch);
ICS_ERROR(BudgetExceeded);
ICS_ERROR(ConstructionFailed);
ICS_ERROR(BudgetViolation);
ICS_ERROR(MixedConfigs);
ICS_ERROR(BudgetTooSmall);
ICS_ERROR(InvariantViolation);
ICS_ERROR(ConfigError);

#undef ICS_ERROR

}  // namespace ics
