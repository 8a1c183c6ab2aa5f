#pragma once

#include <stdexcept>
#include <string>

namespace sumscope {

// Root of every error raised by the library. Each subclass names one failure
// category; callers that only care about "bad data" can catch Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SUMSCOPE_ERROR(Name)              \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

SUMSCOPE_ERROR(ParseError);       // malformed JSON / CSV text
SUMSCOPE_ERROR(SchemaError);      // well-formed input with the wrong shape
SUMSCOPE_ERROR(DegenerateInput);  // empty or constant input where a value is undefined
SUMSCOPE_ERROR(InvalidRank);
SUMSCOPE_ERROR(InvalidPosition);
SUMSCOPE_ERROR(IoError);
SUMSCOPE_ERROR(FormatError);
SUMSCOPE_ERROR(AlignmentError);   // counts disagree between two inputs
SUMSCOPE_ERROR(DimensionError);
SUMSCOPE_ERROR(EmptySelection);

#undef SUMSCOPE_ERROR

}  // namespace sumscope
