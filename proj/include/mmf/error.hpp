#ifndef MMF_ERROR_HPP
#define MMF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mmf {

// Error categories map 1:1 onto CLI exit codes and C API status values.
enum class ErrorKind {
  Config = 2,    // invalid parameters, specs, dimension mismatches, empty domains
  Resource = 3,  // memory/enumeration/materialization budgets exceeded, sampler strategy failures
  Numeric = 4,   // domain errors, summability failures, overflow, contract violations
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  int code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_config(const std::string& msg) { throw Error(ErrorKind::Config, msg); }
[[noreturn]] inline void throw_resource(const std::string& msg) { throw Error(ErrorKind::Resource, msg); }
[[noreturn]] inline void throw_numeric(const std::string& msg) { throw Error(ErrorKind::Numeric, msg); }

}  // namespace mmf

#endif
