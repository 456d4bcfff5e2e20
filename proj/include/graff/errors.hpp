#pragma once

#include <stdexcept>
#include <string>

namespace graff {

// Base of every error raised by the library. name() is the stable identifier
// printed by the command-line tool.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

  // Input/usage errors vs. domain failures (no separator, singular pair, ...).
  virtual bool is_domain_error() const noexcept { return false; }

 private:
  std::string name_;
};

#define GRAFF_DEFINE_ERROR(Type, domain)                                  \
  class Type : public Error {                                            \
   public:                                                               \
    explicit Type(const std::string& what) : Error(#Type, what) {}       \
    bool is_domain_error() const noexcept override { return domain; }    \
  };

GRAFF_DEFINE_ERROR(DimensionError, false)
GRAFF_DEFINE_ERROR(RankDeficient, false)
GRAFF_DEFINE_ERROR(InvalidFlag, false)
GRAFF_DEFINE_ERROR(UnsupportedKind, false)
GRAFF_DEFINE_ERROR(InvalidArgument, false)
GRAFF_DEFINE_ERROR(ParseError, false)
GRAFF_DEFINE_ERROR(NotAFlat, true)
GRAFF_DEFINE_ERROR(SingularPair, true)
GRAFF_DEFINE_ERROR(NotSeparable, true)
GRAFF_DEFINE_ERROR(InternalError, false)

#undef GRAFF_DEFINE_ERROR

}  // namespace graff
