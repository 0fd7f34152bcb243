#ifndef QUADHAM_ERRORS_HPP
#define QUADHAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace quadham {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define QUADHAM_DEFINE_ERROR(Name)                                            \
  class Name : public Error {                                                 \
  public:                                                                     \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {}      \
  }

// opcore
QUADHAM_DEFINE_ERROR(DegreeOverflow);
// adjrep
QUADHAM_DEFINE_ERROR(InhomogeneousHamiltonian);
QUADHAM_DEFINE_ERROR(NonClosure);
QUADHAM_DEFINE_ERROR(DimensionMismatch);
// spectra
QUADHAM_DEFINE_ERROR(ConvergenceFailure);
QUADHAM_DEFINE_ERROR(NotDefective);
QUADHAM_DEFINE_ERROR(IllConditioned);
QUADHAM_DEFINE_ERROR(DegenerateSigma);
QUADHAM_DEFINE_ERROR(NotApplicable);
// symmetry
QUADHAM_DEFINE_ERROR(UnsupportedDimension);
// models
QUADHAM_DEFINE_ERROR(InvalidParam);
QUADHAM_DEFINE_ERROR(NotAvailable);
// cli
QUADHAM_DEFINE_ERROR(BracketInvalid);
QUADHAM_DEFINE_ERROR(ParseError);

#undef QUADHAM_DEFINE_ERROR

} // namespace quadham

#endif // QUADHAM_ERRORS_HPP
