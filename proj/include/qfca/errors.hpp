#pragma once

#include <stdexcept>
#include <string>

namespace qfca {

// Base of the error taxonomy. Every failure carries a witness in what().
class error : public std::runtime_error {
public:
  error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define QFCA_DEFINE_ERROR(Name)                                            \
  class Name : public error {                                              \
  public:                                                                  \
    explicit Name(const std::string& what) : error(#Name, what) {}         \
  };

// quantale
QFCA_DEFINE_ERROR(LatticeIncomplete)
QFCA_DEFINE_ERROR(NotMonoid)
QFCA_DEFINE_ERROR(NotDistributive)
QFCA_DEFINE_ERROR(UnknownFamily)
QFCA_DEFINE_ERROR(BadSize)

// vcat
QFCA_DEFINE_ERROR(ReflexivityFail)
QFCA_DEFINE_ERROR(TransitivityFail)
QFCA_DEFINE_ERROR(QuantaleMismatch)
QFCA_DEFINE_ERROR(BudgetExceeded)

// completeness / adjunction calculus
QFCA_DEFINE_ERROR(NotComplete)
QFCA_DEFINE_ERROR(NotCocontinuous)
QFCA_DEFINE_ERROR(TypeMismatch)
QFCA_DEFINE_ERROR(NotClosure)

// io
QFCA_DEFINE_ERROR(ParseError)
QFCA_DEFINE_ERROR(SchemaError)
QFCA_DEFINE_ERROR(ValidationError)
QFCA_DEFINE_ERROR(UnknownFixture)

#undef QFCA_DEFINE_ERROR

}  // namespace qfca
