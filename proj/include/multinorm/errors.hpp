#ifndef MULTINORM_ERRORS_HPP
#define MULTINORM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace multinorm {

struct InvalidEntry : std::runtime_error {
  explicit InvalidEntry(std::string const& m) : std::runtime_error(m) {}
};
struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(std::string const& m) : std::runtime_error(m) {}
};
struct OrderingViolation : std::runtime_error {
  explicit OrderingViolation(std::string const& m) : std::runtime_error(m) {}
};
struct DomainError : std::runtime_error {
  explicit DomainError(std::string const& m) : std::runtime_error(m) {}
};
struct InactivePartition : std::runtime_error {
  explicit InactivePartition(std::string const& m) : std::runtime_error(m) {}
};
struct ResolutionError : std::runtime_error {
  explicit ResolutionError(std::string const& m) : std::runtime_error(m) {}
};
struct SupportOverflow : std::runtime_error {
  explicit SupportOverflow(std::string const& m) : std::runtime_error(m) {}
};
struct DivergentParameters : std::runtime_error {
  explicit DivergentParameters(std::string const& m) : std::runtime_error(m) {}
};

}  // namespace multinorm

#endif
