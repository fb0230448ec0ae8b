#ifndef OLT_ERRORS_HPP_
#define OLT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace olt {

struct DimensionTooLargeError : std::runtime_error {
  explicit DimensionTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

struct SpanTooLargeError : std::runtime_error {
  explicit SpanTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

struct BatchTooLargeError : std::runtime_error {
  explicit BatchTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

struct WrongKindError : std::runtime_error {
  explicit WrongKindError(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfDomainError : std::runtime_error {
  explicit OutOfDomainError(const std::string& what) : std::runtime_error(what) {}
};

struct MalformedTranscriptError : std::runtime_error {
  explicit MalformedTranscriptError(const std::string& what) : std::runtime_error(what) {}
};

struct CertificationFailedError : std::runtime_error {
  explicit CertificationFailedError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct InstanceTooSmallError : std::runtime_error {
  explicit InstanceTooSmallError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace olt

#endif  // OLT_ERRORS_HPP_
