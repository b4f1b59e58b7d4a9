#pragma once

#include <stdexcept>
#include <string>

namespace dccse {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define DCCSE_DEFINE_ERROR(Name, default_msg)                      \
    struct Name : Error {                                          \
        Name() : Error(default_msg) {}                             \
        explicit Name(const std::string& msg) : Error(msg) {}      \
    }

// group
DCCSE_DEFINE_ERROR(DivisionByZero, "scalar inverse of zero");
DCCSE_DEFINE_ERROR(OverrideUnsupported, "hash overrides are only available on the toy backend");
DCCSE_DEFINE_ERROR(DecodeError, "malformed or non-canonical encoding");

// dccse_core
DCCSE_DEFINE_ERROR(InvalidBlind, "blinding scalar must be nonzero");
DCCSE_DEFINE_ERROR(EmptyReceiverSet, "receiver set is empty");
DCCSE_DEFINE_ERROR(DuplicateReceiver, "duplicate receiver id in receiver set");
DCCSE_DEFINE_ERROR(ReceiverNotInSet, "target receiver is not in the receiver set");
DCCSE_DEFINE_ERROR(DegenerateReceiverKey, "receiver secret key must not be 0 or 1");
DCCSE_DEFINE_ERROR(ReceiverSetMismatch, "ciphertext and trapdoor receiver sets differ");
DCCSE_DEFINE_ERROR(InvalidArgument, "invalid argument");

// game
DCCSE_DEFINE_ERROR(InvalidChallenge, "challenge keywords must be distinct");
DCCSE_DEFINE_ERROR(OracleBudgetExceeded, "oracle query budget exceeded");
DCCSE_DEFINE_ERROR(PhaseViolation, "oracle call outside a query phase");
DCCSE_DEFINE_ERROR(CannotTest, "trapdoor is encrypted to the designated server; Test is unavailable");

// dtester
DCCSE_DEFINE_ERROR(AuthenticationFailure, "wrapped trapdoor failed authentication");

// cli
DCCSE_DEFINE_ERROR(UsageError, "invalid command usage");

#undef DCCSE_DEFINE_ERROR

}  // namespace dccse
