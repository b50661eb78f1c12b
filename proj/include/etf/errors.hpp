#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace etf {

// Categories map onto CLI exit codes: config -> 2, validation -> 3, guard -> 4.
enum class ErrorCategory { config, validation, guard };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string name, const std::string& message)
      : std::runtime_error(message.empty() ? name : name + ": " + message),
        category_(category),
        name_(std::move(name)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorCategory category_;
  std::string name_;
};

#define ETF_DEFINE_ERROR(NAME, CATEGORY)                 \
  struct NAME : Error {                                  \
    explicit NAME(const std::string& message = "")       \
        : Error(ErrorCategory::CATEGORY, #NAME, message) {} \
  };

ETF_DEFINE_ERROR(NonFinite, validation)
ETF_DEFINE_ERROR(NotHermitian, validation)
ETF_DEFINE_ERROR(IndexOutOfRange, validation)
ETF_DEFINE_ERROR(DuplicateIndex, validation)
ETF_DEFINE_ERROR(NonzeroDiagonal, validation)
ETF_DEFINE_ERROR(NonUnimodular, validation)
ETF_DEFINE_ERROR(NotReal, validation)
ETF_DEFINE_ERROR(NotProjection, validation)
ETF_DEFINE_ERROR(RankMismatch, validation)
ETF_DEFINE_ERROR(NotEtf, validation)
ETF_DEFINE_ERROR(NotUnimodular, validation)
ETF_DEFINE_ERROR(NotParseval, validation)
ETF_DEFINE_ERROR(NonUniformRows, validation)

ETF_DEFINE_ERROR(BadK, config)
ETF_DEFINE_ERROR(BadPrime, config)
ETF_DEFINE_ERROR(NotThreeModFour, config)
ETF_DEFINE_ERROR(UnknownFixture, config)
ETF_DEFINE_ERROR(NonIntegralK, config)
ETF_DEFINE_ERROR(BadConfig, config)
ETF_DEFINE_ERROR(MixedSizes, config)
ETF_DEFINE_ERROR(ParseError, config)

ETF_DEFINE_ERROR(TooLarge, guard)
ETF_DEFINE_ERROR(TooManySubsets, guard)

#undef ETF_DEFINE_ERROR

}  // namespace etf
