#pragma once

#include <stdexcept>
#include <string>

namespace lindyn {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define LINDYN_DEFINE_ERROR(Name)                  \
    struct Name : Error {                          \
        using Error::Error;                        \
    }

LINDYN_DEFINE_ERROR(InvalidSystem);
LINDYN_DEFINE_ERROR(OutOfDomain);
LINDYN_DEFINE_ERROR(UnboundedRatio);
LINDYN_DEFINE_ERROR(NotDissipative);
LINDYN_DEFINE_ERROR(NotWandering);
LINDYN_DEFINE_ERROR(NotGenerating);
LINDYN_DEFINE_ERROR(ForwardOnly);
LINDYN_DEFINE_ERROR(SCRequired);
LINDYN_DEFINE_ERROR(TailNotCertified);
LINDYN_DEFINE_ERROR(CannotApproximate);
LINDYN_DEFINE_ERROR(InvalidDigit);
LINDYN_DEFINE_ERROR(NotFoundWithinBound);
LINDYN_DEFINE_ERROR(RatioHypothesisViolated);
LINDYN_DEFINE_ERROR(NotInvertibleSystem);
LINDYN_DEFINE_ERROR(InvolutionUnsupported);
LINDYN_DEFINE_ERROR(UnsupportedCombination);

#undef LINDYN_DEFINE_ERROR

}  // namespace lindyn
